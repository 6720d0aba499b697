#include "lyapzero/matrix_kernels.hpp"

#include "lyapzero/errors.hpp"
#include "lyapzero/weights.hpp"

#include <cmath>
#include <sstream>

namespace lyapzero {

namespace {

constexpr int kMaxTaylorTerms = 60;
constexpr double kScaledNormTarget = 0.5;

double one_norm(const CMatrix& m) {
  return m.rows() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

// Determinant of the k x k matrix stored column-major in buf, destroyed.
std::complex<double> small_det(std::complex<double>* buf, std::size_t k) {
  std::complex<double> det = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    double best = std::abs(buf[c * k + c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      double v = std::abs(buf[c * k + r]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = c; j < k; ++j) std::swap(buf[j * k + c], buf[j * k + piv]);
      det = -det;
    }
    const std::complex<double> d = buf[c * k + c];
    det *= d;
    for (std::size_t r = c + 1; r < k; ++r) {
      const std::complex<double> f = buf[c * k + r] / d;
      if (f == 0.0) continue;
      for (std::size_t j = c + 1; j < k; ++j) buf[j * k + r] -= f * buf[j * k + c];
    }
  }
  return det;
}

}  // namespace

CMatrix expm(const CMatrix& x, double rel_tol) {
  if (x.rows() != x.cols()) throw ParameterError("expm: matrix must be square");
  if (!x.allFinite()) throw NumericError("expm: input has non-finite entries");
  const double norm = one_norm(x);
  int squarings = 0;
  if (norm > kScaledNormTarget) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNormTarget)));
  }
  if (squarings > 1000) {
    std::ostringstream os;
    os << "expm: 1-norm " << norm << " needs " << squarings << " squarings";
    throw NumericError(os.str());
  }
  const CMatrix a = x / std::ldexp(1.0, squarings);
  const Eigen::Index n = x.rows();
  CMatrix sum = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  CMatrix next(n, n);
  bool converged = false;
  double last = 0.0;
  for (int j = 1; j <= kMaxTaylorTerms; ++j) {
    next.noalias() = term * a;
    term = next / static_cast<double>(j);
    sum += term;
    last = term.norm();
    if (last <= rel_tol * sum.norm()) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "expm: Taylor series did not converge (1-norm " << norm << ", squarings " << squarings
       << ", last term " << last << ")";
    throw NumericError(os.str());
  }
  for (int s = 0; s < squarings; ++s) {
    next.noalias() = sum * sum;
    sum.swap(next);
  }
  if (!sum.allFinite()) {
    std::ostringstream os;
    os << "expm: overflow while squaring (1-norm " << norm << ", squarings " << squarings << ")";
    throw NumericError(os.str());
  }
  return sum;
}

CompoundPlan::CompoundPlan(std::size_t d, std::size_t k) : d_(d), k_(k) {
  if (k < 1 || k > d) {
    throw ParameterError("compound matrix: k=" + std::to_string(k) + " out of range 1.." +
                         std::to_string(d));
  }
  for_each_subset(d, k, [this](std::span<const std::size_t> idx) {
    subsets_.insert(subsets_.end(), idx.begin(), idx.end());
  });
}

std::complex<double> CompoundPlan::minor(const CMatrix& m, std::size_t row,
                                         std::size_t col) const {
  const std::size_t* r = subset(row);
  const std::size_t* c = subset(col);
  if (k_ == 1) return m(r[0], c[0]);
  if (k_ == 2) return m(r[0], c[0]) * m(r[1], c[1]) - m(r[0], c[1]) * m(r[1], c[0]);
  std::complex<double> stack[64];
  std::vector<std::complex<double>> heap;
  std::complex<double>* buf = stack;
  if (k_ * k_ > 64) {
    heap.resize(k_ * k_);
    buf = heap.data();
  }
  for (std::size_t j = 0; j < k_; ++j) {
    for (std::size_t i = 0; i < k_; ++i) buf[j * k_ + i] = m(r[i], c[j]);
  }
  return small_det(buf, k_);
}

void CompoundPlan::apply_serial(const CMatrix& m, CMatrix& out) const {
  if (static_cast<std::size_t>(m.rows()) != d_ || static_cast<std::size_t>(m.cols()) != d_) {
    throw ParameterError("compound matrix: input is not " + std::to_string(d_) + "x" +
                         std::to_string(d_));
  }
  const std::size_t n = size();
  out.resize(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = minor(m, i, j);
  }
}

void CompoundPlan::apply_parallel(const CMatrix& m, CMatrix& out) const {
  if (static_cast<std::size_t>(m.rows()) != d_ || static_cast<std::size_t>(m.cols()) != d_) {
    throw ParameterError("compound matrix: input is not " + std::to_string(d_) + "x" +
                         std::to_string(d_));
  }
  const long n = static_cast<long>(size());
  out.resize(n, n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) out(i, j) = minor(m, i, j);
  }
}

CMatrix exterior_power_matrix(const CMatrix& m, int k) {
  if (m.rows() != m.cols()) throw ParameterError("compound matrix: input must be square");
  if (k < 1) throw ParameterError("compound matrix: k must be positive");
  CompoundPlan plan(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(k));
  CMatrix out;
  plan.apply_parallel(m, out);
  return out;
}

CMatrix exterior_power_matrix_serial(const CMatrix& m, int k) {
  if (m.rows() != m.cols()) throw ParameterError("compound matrix: input must be square");
  if (k < 1) throw ParameterError("compound matrix: k must be positive");
  CompoundPlan plan(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(k));
  CMatrix out;
  plan.apply_serial(m, out);
  return out;
}

CMatrix realify(const CMatrix& m) {
  const Eigen::Index r = m.rows();
  const Eigen::Index c = m.cols();
  CMatrix out(2 * r, 2 * c);
  const Eigen::MatrixXd re = m.real();
  const Eigen::MatrixXd im = m.imag();
  out.topLeftCorner(r, c) = re.cast<std::complex<double>>();
  out.topRightCorner(r, c) = (-im).cast<std::complex<double>>();
  out.bottomLeftCorner(r, c) = im.cast<std::complex<double>>();
  out.bottomRightCorner(r, c) = re.cast<std::complex<double>>();
  return out;
}

}  // namespace lyapzero
