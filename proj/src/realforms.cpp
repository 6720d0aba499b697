#include "lyapzero/realforms.hpp"

#include "lyapzero/errors.hpp"

#include <cmath>

namespace lyapzero {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);
constexpr long kMaxEnumeratedWeights = 1L << 22;

CMatrix unit_matrix(int d, int r, int c) {
  CMatrix m = CMatrix::Zero(d, d);
  m(r, c) = 1.0;
  return m;
}

// Antidiagonal ones.
CMatrix exchange(int d) {
  CMatrix m = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, d - 1 - i) = 1.0;
  return m;
}

}  // namespace

RealFormSpec RealFormSpec::su(int p, int q) {
  RealFormSpec f;
  f.family = Family::SU;
  f.swapped = q > p;
  f.p = std::max(p, q);
  f.q = std::min(p, q);
  f.validate();
  return f;
}

RealFormSpec RealFormSpec::so_odd(int n) {
  RealFormSpec f;
  f.family = Family::SOOdd;
  f.n = n;
  f.validate();
  return f;
}

RealFormSpec RealFormSpec::so_even(int n) {
  RealFormSpec f;
  f.family = Family::SOEven;
  f.n = n;
  f.validate();
  return f;
}

RealFormSpec RealFormSpec::so_split(int m) {
  if (m < 3) throw ParameterError("SO(m,2) requires m >= 3, got m=" + std::to_string(m));
  return m % 2 == 1 ? so_odd((m + 1) / 2) : so_even((m + 2) / 2);
}

RealFormSpec RealFormSpec::so_star(int n) {
  RealFormSpec f;
  f.family = Family::SOStar;
  f.n = n;
  f.validate();
  return f;
}

RealFormSpec RealFormSpec::sp(int g) {
  RealFormSpec f;
  f.family = Family::Sp;
  f.g = g;
  f.validate();
  return f;
}

void RealFormSpec::validate() const {
  switch (family) {
    case Family::SU:
      if (q < 1 || p < q) {
        throw ParameterError("SU(p,q) requires p >= q >= 1, got p=" + std::to_string(p) +
                             ", q=" + std::to_string(q));
      }
      return;
    case Family::SOOdd:
      if (n < 2) throw ParameterError("SO(2n-1,2) requires n >= 2, got n=" + std::to_string(n));
      return;
    case Family::SOEven:
      if (n < 3) throw ParameterError("SO(2n-2,2) requires n >= 3, got n=" + std::to_string(n));
      return;
    case Family::SOStar:
      if (n < 2) throw ParameterError("SO*(2n) requires n >= 2, got n=" + std::to_string(n));
      return;
    case Family::Sp:
      if (g < 1) throw ParameterError("Sp(2g,R) requires g >= 1, got g=" + std::to_string(g));
      return;
  }
}

std::string RealFormSpec::name() const {
  switch (family) {
    case Family::SU: return "SU(" + std::to_string(p) + "," + std::to_string(q) + ")";
    case Family::SOOdd: return "SO(" + std::to_string(2 * n - 1) + ",2)";
    case Family::SOEven: return "SO(" + std::to_string(2 * n - 2) + ",2)";
    case Family::SOStar: return "SO*(" + std::to_string(2 * n) + ")";
    case Family::Sp: return "Sp(" + std::to_string(2 * g) + ",R)";
  }
  return "?";
}

RootSystemSpec RealFormSpec::root_system() const {
  switch (family) {
    case Family::SU: return {RootType::A, p + q - 1};
    case Family::SOOdd: return {RootType::B, n};
    case Family::SOEven:
    case Family::SOStar: return {RootType::D, n};
    case Family::Sp: return {RootType::C, g};
  }
  return {};
}

int RealFormSpec::matrix_dim() const {
  switch (family) {
    case Family::SU: return p + q;
    case Family::SOOdd: return 2 * n + 1;
    case Family::SOEven:
    case Family::SOStar: return 2 * n;
    case Family::Sp: return 2 * g;
  }
  return 0;
}

bool RealFormSpec::has_complex_structure() const {
  return family == Family::SU || family == Family::SOStar;
}

int RealFormSpec::real_rank() const {
  switch (family) {
    case Family::SU: return q;
    case Family::SOOdd:
    case Family::SOEven: return 2;
    case Family::SOStar: return n / 2;
    case Family::Sp: return g;
  }
  return 0;
}

std::string RealFormSpec::relative_root_system() const {
  switch (family) {
    case Family::SU: return (p > q ? "BC" : "C") + std::to_string(q);
    case Family::SOOdd:
    case Family::SOEven: return "B2";
    case Family::SOStar: return (n % 2 == 1 ? "BC" : "C") + std::to_string(n / 2);
    case Family::Sp: return "C" + std::to_string(g);
  }
  return "?";
}

long RealFormSpec::algebra_dim() const {
  const long d = matrix_dim();
  switch (family) {
    case Family::SU: return d * d - 1;
    case Family::SOOdd:
    case Family::SOEven: return d * (d - 1) / 2;
    case Family::SOStar: return static_cast<long>(n) * (2L * n - 1);
    case Family::Sp: return static_cast<long>(g) * (2L * g + 1);
  }
  return 0;
}

Weight RestrictionMap::apply(const Weight& w) const {
  if (w.basis() != Basis::Absolute || w.dim() != images.size()) {
    throw ParameterError("restriction: expected an absolute weight of dimension " +
                         std::to_string(images.size()));
  }
  std::vector<int> out(static_cast<std::size_t>(restricted_rank), 0);
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      // images have integer coordinates, so twice(img)/2 is exact
      out[j] += w.twice(i) * (images[i].twice(j) / 2);
    }
  }
  return Weight(std::move(out), Basis::Restricted);
}

WeightMultiset RestrictionMap::apply(const WeightMultiset& ms) const {
  WeightMultiset out(static_cast<std::size_t>(restricted_rank), Basis::Restricted);
  for (const auto& [w, m] : ms) out.add(apply(w), m);
  return out;
}

RestrictionMap restriction_map(const RealFormSpec& form) {
  form.validate();
  RestrictionMap r;
  r.restricted_rank = form.real_rank();
  const std::size_t n = form.root_system().ambient_dim();
  const std::size_t rr = static_cast<std::size_t>(r.restricted_rank);
  r.images.assign(n, Weight::zero(rr, Basis::Restricted));
  switch (form.family) {
    case Family::SU:
      for (std::size_t i = 0; i < rr; ++i) {
        r.images[i] = Weight::unit(rr, i, Basis::Restricted);
        r.images[n - 1 - i] = Weight::unit(rr, i, Basis::Restricted, -1);
      }
      break;
    case Family::SOOdd:
    case Family::SOEven:
      r.images[0] = Weight::unit(rr, 0, Basis::Restricted);
      r.images[1] = Weight::unit(rr, 1, Basis::Restricted);
      break;
    case Family::SOStar:
      // Each delta block of the split torus has eigenvalues +-1 and is
      // repeated in both diagonal blocks: e_{2i-1}, e_{2i} -> f_i.
      for (std::size_t i = 0; i < rr; ++i) {
        r.images[2 * i] = Weight::unit(rr, i, Basis::Restricted);
        r.images[2 * i + 1] = Weight::unit(rr, i, Basis::Restricted);
      }
      break;
    case Family::Sp:
      for (std::size_t i = 0; i < n; ++i) r.images[i] = Weight::unit(rr, i, Basis::Restricted);
      break;
  }
  return r;
}

void check_coherent(const RealFormSpec& form, const RepSpec& rep) {
  form.validate();
  switch (rep.kind) {
    case RepKind::Standard: return;
    case RepKind::ExteriorPower:
      if (rep.k < 1 || rep.k > form.matrix_dim()) {
        throw ParameterError("ext:" + std::to_string(rep.k) + " of " + form.name() +
                             " needs 1 <= k <= " + std::to_string(form.matrix_dim()));
      }
      return;
    case RepKind::Spin:
      if (form.family != Family::SOOdd) {
        throw ParameterError("spin representation requires SO(2n-1,2) (type B), got " +
                             form.name());
      }
      return;
    case RepKind::HalfSpinPlus:
    case RepKind::HalfSpinMinus:
      if (form.family != Family::SOEven) {
        throw ParameterError("half-spin representations require SO(2n-2,2) (type D), got " +
                             form.name());
      }
      return;
  }
}

BigInt rep_complex_dim(const RealFormSpec& form, const RepSpec& rep) {
  check_coherent(form, rep);
  switch (rep.kind) {
    case RepKind::Standard: return form.matrix_dim();
    case RepKind::ExteriorPower: return binomial(form.matrix_dim(), rep.k);
    case RepKind::Spin: return BigInt(1) << form.n;
    case RepKind::HalfSpinPlus:
    case RepKind::HalfSpinMinus: return BigInt(1) << (form.n - 1);
  }
  return 0;
}

WeightMultiset weights_restricted(const RealFormSpec& form, const RepSpec& rep) {
  check_coherent(form, rep);
  if (rep_complex_dim(form, rep) > kMaxEnumeratedWeights) {
    throw ParameterError(form.name() + " " + rep.to_string() + " has dimension " +
                         rep_complex_dim(form, rep).str() + ", too large to enumerate");
  }
  switch (rep.kind) {
    case RepKind::Standard:
      if (form.family == Family::SOStar) {
        return weights_from_torus(split_torus_generators(form));
      }
      return restriction_map(form).apply(weights_standard(form.root_system()));
    case RepKind::ExteriorPower: {
      const std::vector<Weight> list =
          weights_restricted(form, RepSpec::standard()).expanded();
      return subset_sums(list, rep.k);
    }
    case RepKind::Spin:
    case RepKind::HalfSpinPlus:
    case RepKind::HalfSpinMinus:
      return restriction_map(form).apply(weights_spin(form.root_system(), rep));
  }
  return {};
}

std::vector<CMatrix> split_torus_generators(const RealFormSpec& form) {
  form.validate();
  if (form.family != Family::SOStar) {
    throw UnsupportedError("explicit split torus is only provided for SO*(2n)");
  }
  const int n = form.n;
  std::vector<CMatrix> out;
  for (int i = 0; i < n / 2; ++i) {
    // A = delta at block i, lower-right block conj(A) = -delta.
    CMatrix a = CMatrix::Zero(2 * n, 2 * n);
    const int r = 2 * i;
    a(r, r + 1) = kI;
    a(r + 1, r) = -kI;
    a(n + r, n + r + 1) = -kI;
    a(n + r + 1, n + r) = kI;
    out.push_back(std::move(a));
  }
  return out;
}

WeightMultiset weights_from_torus(const std::vector<CMatrix>& generators) {
  if (generators.empty()) throw ParameterError("weights_from_torus: no generators");
  const Eigen::Index d = generators.front().rows();
  // Generic combination: distinct irrational coefficients separate the
  // common eigenspaces.
  CMatrix combo = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    combo += std::sqrt(2.0 + static_cast<double>(i) * 1.618033988749895) * generators[i];
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(combo);
  if (solver.info() != Eigen::Success) throw NumericError("torus diagonalization failed");
  const CMatrix& v = solver.eigenvectors();
  WeightMultiset out(generators.size(), Basis::Restricted);
  for (Eigen::Index col = 0; col < d; ++col) {
    std::vector<int> twice(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const double ev = (v.col(col).adjoint() * generators[i] * v.col(col))(0, 0).real();
      const double t = 2.0 * ev;
      if (std::abs(t - std::round(t)) > 1e-9) {
        throw NumericError("torus eigenvalue " + std::to_string(ev) + " is not a half-integer");
      }
      twice[i] = static_cast<int>(std::lround(t));
    }
    out.add(Weight(std::move(twice), Basis::Restricted));
  }
  return out;
}

InvariantForms invariant_forms(const RealFormSpec& form) {
  form.validate();
  InvariantForms f;
  const int d = form.matrix_dim();
  switch (form.family) {
    case Family::SU: {
      CMatrix h = CMatrix::Identity(d, d);
      for (int i = form.p; i < d; ++i) h(i, i) = -1.0;
      f.hermitian = h;
      break;
    }
    case Family::SOOdd:
    case Family::SOEven: {
      CMatrix s = CMatrix::Identity(d, d);
      s.bottomRightCorner(4, 4) = exchange(4);
      f.symmetric = s;
      break;
    }
    case Family::SOStar: {
      const int n = form.n;
      CMatrix h = CMatrix::Zero(d, d);
      h.topRightCorner(n, n).setIdentity();
      h.bottomLeftCorner(n, n).setIdentity();
      CMatrix s = CMatrix::Identity(d, d);
      s.bottomRightCorner(n, n) *= -1.0;
      f.hermitian = h;
      f.symmetric = s;
      break;
    }
    case Family::Sp: {
      const int g = form.g;
      CMatrix w = CMatrix::Zero(d, d);
      w.topRightCorner(g, g).setIdentity();
      w.bottomLeftCorner(g, g) = -CMatrix::Identity(g, g);
      f.symplectic = w;
      break;
    }
  }
  return f;
}

std::vector<CMatrix> lie_algebra_basis(const RealFormSpec& form) {
  form.validate();
  const int d = form.matrix_dim();
  const InvariantForms forms = invariant_forms(form);
  std::vector<CMatrix> basis;
  switch (form.family) {
    case Family::SU: {
      // X = H S with S skew-hermitian; traceless diagonal part kept separate.
      const CMatrix& h = *forms.hermitian;
      for (int j = 0; j + 1 < d; ++j) {
        CMatrix x = CMatrix::Zero(d, d);
        x(j, j) = kI;
        x(j + 1, j + 1) = -kI;
        basis.push_back(std::move(x));
      }
      for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
          basis.push_back(h * (unit_matrix(d, j, k) - unit_matrix(d, k, j)));
          basis.push_back(h * (kI * (unit_matrix(d, j, k) + unit_matrix(d, k, j))));
        }
      }
      break;
    }
    case Family::SOOdd:
    case Family::SOEven: {
      // X = S A with A real antisymmetric (S^2 = 1).
      const CMatrix& s = *forms.symmetric;
      for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
          basis.push_back(s * (unit_matrix(d, j, k) - unit_matrix(d, k, j)));
        }
      }
      break;
    }
    case Family::SOStar: {
      // [[A, B], [B^T, conj(A)]] with A complex antisymmetric, B skew-hermitian.
      const int n = form.n;
      auto block = [&](const CMatrix& a, const CMatrix& b) {
        CMatrix x(d, d);
        x.topLeftCorner(n, n) = a;
        x.topRightCorner(n, n) = b;
        x.bottomLeftCorner(n, n) = b.transpose();
        x.bottomRightCorner(n, n) = a.conjugate();
        return x;
      };
      const CMatrix zero = CMatrix::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          const CMatrix anti = unit_matrix(n, j, k) - unit_matrix(n, k, j);
          basis.push_back(block(anti, zero));
          basis.push_back(block(kI * anti, zero));
        }
      }
      for (int j = 0; j < n; ++j) basis.push_back(block(zero, kI * unit_matrix(n, j, j)));
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          basis.push_back(block(zero, unit_matrix(n, j, k) - unit_matrix(n, k, j)));
          basis.push_back(block(zero, kI * (unit_matrix(n, j, k) + unit_matrix(n, k, j))));
        }
      }
      break;
    }
    case Family::Sp: {
      // X = W^T Y with Y real symmetric.
      const CMatrix wt = forms.symplectic->transpose();
      for (int j = 0; j < d; ++j) {
        for (int k = j; k < d; ++k) {
          CMatrix y = unit_matrix(d, j, k);
          if (k != j) y += unit_matrix(d, k, j);
          basis.push_back(wt * y);
        }
      }
      break;
    }
  }
  return basis;
}

double algebra_defect(const RealFormSpec& form, const InvariantForms& forms, const CMatrix& x) {
  const double xn = x.norm();
  if (xn == 0.0) return 0.0;
  double worst = 0.0;
  auto track = [&](double v) { worst = std::max(worst, v); };
  if (forms.hermitian) {
    const CMatrix& h = *forms.hermitian;
    track((x.adjoint() * h + h * x).norm() / (h.norm() * xn));
  }
  if (forms.symmetric) {
    const CMatrix& s = *forms.symmetric;
    track((x.transpose() * s + s * x).norm() / (s.norm() * xn));
  }
  if (forms.symplectic) {
    const CMatrix& w = *forms.symplectic;
    track((x.transpose() * w + w * x).norm() / (w.norm() * xn));
  }
  if (form.family == Family::SU) track(std::abs(x.trace()) / xn);
  if (!form.has_complex_structure()) track(x.imag().norm() / xn);
  return worst;
}

double form_defect(const InvariantForms& forms, const CMatrix& g) {
  double worst = 0.0;
  if (forms.hermitian) {
    const CMatrix& h = *forms.hermitian;
    worst = std::max(worst, (g.adjoint() * h * g - h).norm() / h.norm());
  }
  if (forms.symmetric) {
    const CMatrix& s = *forms.symmetric;
    worst = std::max(worst, (g.transpose() * s * g - s).norm() / s.norm());
  }
  if (forms.symplectic) {
    const CMatrix& w = *forms.symplectic;
    worst = std::max(worst, (g.transpose() * w * g - w).norm() / w.norm());
  }
  return worst;
}

GroupSampler::GroupSampler(const RealFormSpec& form, double scale)
    : form_(form),
      scale_(scale),
      basis_(lie_algebra_basis(form)),
      forms_(invariant_forms(form)) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw ParameterError("sampler scale must be a finite nonnegative number");
  }
}

CMatrix GroupSampler::sample_algebra(GaussianStream& rng) const {
  const int d = dim();
  CMatrix x = CMatrix::Zero(d, d);
  for (const CMatrix& b : basis_) x += (scale_ * rng.normal()) * b;
  return x;
}

CMatrix GroupSampler::sample(GaussianStream& rng) const { return expm(sample_algebra(rng)); }

}  // namespace lyapzero
