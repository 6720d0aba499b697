#pragma once

// Dense complex kernels used by the samplers and the cocycle simulator.
// Each data-parallel kernel has an OpenMP version and a serial reference
// that tests compare it against bit for bit.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace lyapzero {

using CMatrix = Eigen::MatrixXcd;

// exp(X) by scaling and squaring around a truncated Taylor series. The
// series is summed until the next term is below rel_tol relative to the
// partial sum. Throws NumericError on non-finite input or non-convergence.
CMatrix expm(const CMatrix& x, double rel_tol = 1e-13);

// Precomputed index sets for the k-th compound matrix of a d x d matrix.
// Rows and columns are the k-subsets of {0..d-1} in lexicographic order.
class CompoundPlan {
 public:
  CompoundPlan(std::size_t d, std::size_t k);

  std::size_t d() const { return d_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return subsets_.size() / (k_ == 0 ? 1 : k_); }
  const std::size_t* subset(std::size_t i) const { return subsets_.data() + i * k_; }

  // out = wedge^k(m); `out` is resized as needed.
  void apply_serial(const CMatrix& m, CMatrix& out) const;
  void apply_parallel(const CMatrix& m, CMatrix& out) const;

 private:
  std::complex<double> minor(const CMatrix& m, std::size_t row, std::size_t col) const;

  std::size_t d_;
  std::size_t k_;
  std::vector<std::size_t> subsets_;
};

// k-th exterior power (compound matrix) of a square matrix.
CMatrix exterior_power_matrix(const CMatrix& m, int k);
CMatrix exterior_power_matrix_serial(const CMatrix& m, int k);

// Real 2d x 2d matrix of the complex d x d matrix acting on C^d = R^2d,
// coordinates ordered (Re z_1..Re z_d, Im z_1..Im z_d).
CMatrix realify(const CMatrix& m);

}  // namespace lyapzero
