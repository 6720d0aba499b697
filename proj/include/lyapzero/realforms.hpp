#pragma once

// The real forms SU(p,q), SO(2n-1,2), SO(2n-2,2), SO*(2n) and Sp(2g,R):
// restriction of absolute weights to a maximal split torus, matrix
// realizations of their Lie algebras, and random group elements.

#include "lyapzero/matrix_kernels.hpp"
#include "lyapzero/random.hpp"
#include "lyapzero/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lyapzero {

enum class Family {
  SU,      // SU(p,q), p >= q >= 1
  SOOdd,   // SO(2n-1,2), type B_n, n >= 2
  SOEven,  // SO(2n-2,2), type D_n, n >= 3
  SOStar,  // SO*(2n), type D_n, n >= 2
  Sp,      // Sp(2g,R), type C_g, g >= 1
};

struct RealFormSpec {
  Family family = Family::SU;
  int p = 0;
  int q = 0;
  int n = 0;
  int g = 0;
  // SU inputs with q > p are stored as SU(q,p); this records that it happened.
  bool swapped = false;

  static RealFormSpec su(int p, int q);
  static RealFormSpec so_odd(int n);
  static RealFormSpec so_even(int n);
  // SO(m,2): odd m is SO(2n-1,2) with n = (m+1)/2, even m is SO(2n-2,2) with n = (m+2)/2.
  static RealFormSpec so_split(int m);
  static RealFormSpec so_star(int n);
  static RealFormSpec sp(int g);

  void validate() const;
  std::string name() const;  // "SU(3,1)", "SO(5,2)", "SO*(6)", "Sp(4,R)"
  RootSystemSpec root_system() const;
  // Size d of the defining matrices (complex for SU and SO*, real otherwise).
  int matrix_dim() const;
  // True when the standard representation carries a commuting complex
  // structure, so each complex weight accounts for two real exponents.
  bool has_complex_structure() const;
  int count_factor() const { return has_complex_structure() ? 2 : 1; }
  int real_rank() const;
  std::string relative_root_system() const;
  // Real dimension of the Lie algebra.
  long algebra_dim() const;

  bool operator==(const RealFormSpec& other) const = default;
};

// Linear map from absolute coordinates e_1..e_n to restricted coordinates
// f_1..f_r, given by the image of each e_i (each +-f_j or 0).
struct RestrictionMap {
  std::vector<Weight> images;
  int restricted_rank = 0;

  Weight apply(const Weight& w) const;
  WeightMultiset apply(const WeightMultiset& ms) const;
};

RestrictionMap restriction_map(const RealFormSpec& form);

// Throws ParameterError if `rep` is not a representation of `form` in scope.
void check_coherent(const RealFormSpec& form, const RepSpec& rep);

// Complex dimension of the representation.
BigInt rep_complex_dim(const RealFormSpec& form, const RepSpec& rep);

// Restricted weights with complex multiplicities (multiply by
// form.count_factor() for real counts).
WeightMultiset weights_restricted(const RealFormSpec& form, const RepSpec& rep);

// Generators of the maximal split abelian subalgebra, one per restricted
// coordinate, realized in the matrix basis of lie_algebra_basis. Available
// for SO*(2n).
std::vector<CMatrix> split_torus_generators(const RealFormSpec& form);

// Restricted weights (basis f) of the standard representation obtained by
// simultaneously diagonalizing commuting hermitian torus generators.
WeightMultiset weights_from_torus(const std::vector<CMatrix>& generators);

struct InvariantForms {
  std::optional<CMatrix> hermitian;   // g^* H g = H
  std::optional<CMatrix> symmetric;   // g^T S g = S
  std::optional<CMatrix> symplectic;  // g^T W g = W
};

InvariantForms invariant_forms(const RealFormSpec& form);

// Real basis of the Lie algebra as d x d complex matrices.
std::vector<CMatrix> lie_algebra_basis(const RealFormSpec& form);

// Largest relative residual of the defining relations (form preservation,
// tracelessness, reality) for an algebra element X.
double algebra_defect(const RealFormSpec& form, const InvariantForms& forms, const CMatrix& x);

// Largest relative residual ||g* F g - F|| / ||F|| over the declared forms.
double form_defect(const InvariantForms& forms, const CMatrix& g);

class GroupSampler {
 public:
  explicit GroupSampler(const RealFormSpec& form, double scale = 0.3);

  const RealFormSpec& form() const { return form_; }
  double scale() const { return scale_; }
  int dim() const { return form_.matrix_dim(); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  const InvariantForms& forms() const { return forms_; }

  // X = scale * sum_i c_i B_i with c_i independent standard normals.
  CMatrix sample_algebra(GaussianStream& rng) const;
  // exp(X).
  CMatrix sample(GaussianStream& rng) const;

 private:
  RealFormSpec form_;
  double scale_;
  std::vector<CMatrix> basis_;
  InvariantForms forms_;
};

}  // namespace lyapzero
