#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lyapzero/errors.hpp"
#include "lyapzero/realforms.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

using namespace lyapzero;

namespace {

Weight f(std::size_t dim, std::size_t i, int sign = 1) { return Weight::unit(dim, i, Basis::Restricted, sign); }

WeightMultiset multiset(std::size_t dim, std::initializer_list<std::pair<Weight, int>> entries) {
  WeightMultiset ms(dim, Basis::Restricted);
  for (const auto& [w, m] : entries) ms.add(w, m);
  return ms;
}

CMatrix random_matrix(int d, GaussianStream& rng) {
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = {rng.normal(), rng.normal()};
  }
  return m;
}

std::vector<RealFormSpec> small_forms() {
  std::vector<RealFormSpec> forms;
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; q <= p && p + q <= 6; ++q) forms.push_back(RealFormSpec::su(p, q));
  }
  for (int n = 2; n <= 4; ++n) forms.push_back(RealFormSpec::so_odd(n));
  for (int n = 3; n <= 4; ++n) forms.push_back(RealFormSpec::so_even(n));
  for (int n = 2; n <= 4; ++n) forms.push_back(RealFormSpec::so_star(n));
  for (int g = 1; g <= 3; ++g) forms.push_back(RealFormSpec::sp(g));
  return forms;
}

// Independent closed forms for the real dimension of each algebra.
long expected_algebra_dim(const RealFormSpec& form) {
  switch (form.family) {
    case Family::SU: {
      const long d = form.p + form.q;
      return d * d - 1;
    }
    case Family::SOOdd:
    case Family::SOEven: {
      const long m = form.family == Family::SOOdd ? 2L * form.n - 1 : 2L * form.n - 2;
      return (m + 2) * (m + 1) / 2;
    }
    case Family::SOStar: return static_cast<long>(form.n) * (2L * form.n - 1);
    case Family::Sp: return static_cast<long>(form.g) * (2L * form.g + 1);
  }
  return -1;
}

}  // namespace

TEST_CASE("restriction map examples") {
  const auto su31 = restriction_map(RealFormSpec::su(3, 1));
  REQUIRE(su31.images.size() == 4);
  CHECK(su31.restricted_rank == 1);
  CHECK(su31.images[0] == f(1, 0));
  CHECK(su31.images[1].is_zero());
  CHECK(su31.images[2].is_zero());
  CHECK(su31.images[3] == f(1, 0, -1));

  const auto so52 = restriction_map(RealFormSpec::so_split(5));
  REQUIRE(so52.images.size() == 3);
  CHECK(so52.images[0] == f(2, 0));
  CHECK(so52.images[1] == f(2, 1));
  CHECK(so52.images[2].is_zero());

  const auto sp4 = restriction_map(RealFormSpec::sp(2));
  REQUIRE(sp4.images.size() == 2);
  CHECK(sp4.images[0] == f(2, 0));
  CHECK(sp4.images[1] == f(2, 1));

  CHECK(restriction_map(RealFormSpec::so_star(6)).restricted_rank == 3);
  CHECK(restriction_map(RealFormSpec::so_star(7)).restricted_rank == 3);
}

TEST_CASE("SU(p,q) map pairs e_i with e_{p+q+1-i}") {
  const auto m = restriction_map(RealFormSpec::su(4, 2));
  CHECK(m.images[0] == f(2, 0));
  CHECK(m.images[1] == f(2, 1));
  CHECK(m.images[4] == f(2, 1, -1));
  CHECK(m.images[5] == f(2, 0, -1));
  CHECK(m.images[2].is_zero());
  CHECK(m.images[3].is_zero());
}

TEST_CASE("restriction commutes with negation") {
  for (const auto& form : small_forms()) {
    if (form.family == Family::SOStar) continue;
    const auto map = restriction_map(form);
    const auto ms = weights_standard(form.root_system());
    for (const auto& [w, m] : ms) CHECK(map.apply(-w) == -map.apply(w));
  }
}

TEST_CASE("weights_restricted examples") {
  CHECK(weights_restricted(RealFormSpec::su(3, 1), RepSpec::exterior(2)) ==
        multiset(1, {{f(1, 0), 2}, {Weight::zero(1, Basis::Restricted), 2}, {f(1, 0, -1), 2}}));

  const auto spin = weights_restricted(RealFormSpec::so_split(5), RepSpec::spin());
  CHECK(spin == multiset(2, {{Weight({1, 1}, Basis::Restricted), 2},
                             {Weight({1, -1}, Basis::Restricted), 2},
                             {Weight({-1, 1}, Basis::Restricted), 2},
                             {Weight({-1, -1}, Basis::Restricted), 2}}));

  CHECK(weights_restricted(RealFormSpec::so_star(3), RepSpec::standard()) ==
        multiset(1, {{f(1, 0), 2}, {Weight::zero(1, Basis::Restricted), 2}, {f(1, 0, -1), 2}}));
  CHECK(weights_restricted(RealFormSpec::so_star(4), RepSpec::standard()) ==
        multiset(2, {{f(2, 0), 2}, {f(2, 1), 2}, {f(2, 1, -1), 2}, {f(2, 0, -1), 2}}));
}

TEST_CASE("SU(3,1) wedge 2 zero multiplicity by brute force") {
  // all 6 pair sums of e1..e4 pushed through e1->f1, e4->-f1, rest -> 0
  const int image[4] = {1, 0, 0, -1};
  int zeros = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) zeros += image[i] + image[j] == 0;
  }
  CHECK(zeros == 2);
  CHECK(weights_restricted(RealFormSpec::su(3, 1), RepSpec::exterior(2)).zero_multiplicity() == zeros);
}

TEST_CASE("half-spin representations restrict to the same multiset") {
  for (int n = 3; n <= 8; ++n) {
    const auto form = RealFormSpec::so_even(n);
    const auto plus = weights_restricted(form, RepSpec::half_spin(true));
    const auto minus = weights_restricted(form, RepSpec::half_spin(false));
    CHECK(plus == minus);
    CHECK(plus.zero_multiplicity() == 0);
    for (const auto& [w, m] : plus) CHECK(m == BigInt(1) << (n - 3));
  }
}

TEST_CASE("spin restricted multiplicities") {
  for (int n = 2; n <= 8; ++n) {
    const auto ms = weights_restricted(RealFormSpec::so_odd(n), RepSpec::spin());
    CHECK(ms.distinct() == 4);
    CHECK(ms.zero_multiplicity() == 0);
    for (const auto& [w, m] : ms) CHECK(m == BigInt(1) << (n - 2));
  }
}

TEST_CASE("SO* torus route agrees with the closed multiset") {
  for (int n = 2; n <= 7; ++n) {
    const auto form = RealFormSpec::so_star(n);
    const auto torus = weights_from_torus(split_torus_generators(form));
    const std::size_t r = static_cast<std::size_t>(n / 2);
    WeightMultiset expected(r, Basis::Restricted);
    for (std::size_t i = 0; i < r; ++i) {
      expected.add(f(r, i), 2);
      expected.add(f(r, i, -1), 2);
    }
    if (n % 2 == 1) expected.add(Weight::zero(r, Basis::Restricted), 2);
    CHECK(torus == expected);
    CHECK(weights_restricted(form, RepSpec::standard()) == expected);
  }
}

TEST_CASE("SO* torus generators lie in the algebra and commute") {
  for (int n = 2; n <= 6; ++n) {
    const auto form = RealFormSpec::so_star(n);
    const auto forms = invariant_forms(form);
    const auto gens = split_torus_generators(form);
    for (const auto& a : gens) {
      CHECK(algebra_defect(form, forms, a) < 1e-12);
      for (const auto& b : gens) CHECK((a * b - b * a).norm() < 1e-12);
    }
  }
}

TEST_CASE("coherence checks") {
  CHECK_THROWS_AS(check_coherent(RealFormSpec::sp(2), RepSpec::spin()), ParameterError);
  CHECK_THROWS_AS(check_coherent(RealFormSpec::so_odd(3), RepSpec::half_spin(true)), ParameterError);
  CHECK_THROWS_AS(check_coherent(RealFormSpec::su(2, 1), RepSpec::exterior(4)), ParameterError);
  CHECK_THROWS_AS(check_coherent(RealFormSpec::su(2, 1), RepSpec::exterior(0)), ParameterError);
  CHECK_NOTHROW(check_coherent(RealFormSpec::su(2, 1), RepSpec::exterior(3)));
  CHECK_THROWS_AS(RealFormSpec::so_star(1).validate(), ParameterError);
  CHECK_THROWS_AS(RealFormSpec::so_split(2).validate(), ParameterError);
}

TEST_CASE("SU with q > p is normalized") {
  const auto form = RealFormSpec::su(1, 3);
  CHECK(form.p == 3);
  CHECK(form.q == 1);
  CHECK(form.swapped);
  CHECK(form.name() == "SU(3,1)");
}

TEST_CASE("so_split parameter mapping") {
  CHECK(RealFormSpec::so_split(5) == RealFormSpec::so_odd(3));
  CHECK(RealFormSpec::so_split(4) == RealFormSpec::so_even(3));
  CHECK(RealFormSpec::so_split(5).name() == "SO(5,2)");
  CHECK(RealFormSpec::so_split(6).name() == "SO(6,2)");
}

TEST_CASE("Lie algebra basis dimensions") {
  CHECK(lie_algebra_basis(RealFormSpec::su(1, 1)).size() == 3);
  CHECK(lie_algebra_basis(RealFormSpec::so_star(2)).size() == 6);
  CHECK(lie_algebra_basis(RealFormSpec::sp(1)).size() == 3);
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; q <= p; ++q) {
      const auto form = RealFormSpec::su(p, q);
      CHECK(static_cast<long>(lie_algebra_basis(form).size()) == expected_algebra_dim(form));
    }
  }
  for (int n = 2; n <= 6; ++n) {
    for (const auto& form : {RealFormSpec::so_odd(n), RealFormSpec::so_star(n), RealFormSpec::sp(n)}) {
      CHECK(static_cast<long>(lie_algebra_basis(form).size()) == expected_algebra_dim(form));
      CHECK(form.algebra_dim() == expected_algebra_dim(form));
    }
    if (n >= 3) {
      const auto form = RealFormSpec::so_even(n);
      CHECK(static_cast<long>(lie_algebra_basis(form).size()) == expected_algebra_dim(form));
    }
  }
}

TEST_CASE("basis elements satisfy the defining relations and are independent") {
  for (const auto& form : small_forms()) {
    const auto forms = invariant_forms(form);
    const auto basis = lie_algebra_basis(form);
    const int d = form.matrix_dim();
    Eigen::MatrixXd flat(2 * d * d, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(algebra_defect(form, forms, basis[i]) < 1e-12);
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
          flat(r * d + c, static_cast<Eigen::Index>(i)) = basis[i](r, c).real();
          flat(d * d + r * d + c, static_cast<Eigen::Index>(i)) = basis[i](r, c).imag();
        }
      }
    }
    Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(flat);
    CHECK(qr.rank() == static_cast<Eigen::Index>(basis.size()));
  }
}

TEST_CASE("SO* forms: hermitian and symmetric both present") {
  const auto forms = invariant_forms(RealFormSpec::so_star(3));
  CHECK(forms.hermitian.has_value());
  CHECK(forms.symmetric.has_value());
  CHECK_FALSE(forms.symplectic.has_value());
  const auto sp = invariant_forms(RealFormSpec::sp(2));
  CHECK(sp.symplectic.has_value());
}

TEST_CASE("sampled elements preserve the invariant forms") {
  for (const auto& form : small_forms()) {
    const GroupSampler sampler(form, 0.3);
    GaussianStream rng(12345);
    double worst = 0.0;
    const int samples = form.matrix_dim() <= 4 ? 10000 : 2000;
    for (int i = 0; i < samples; ++i) worst = std::max(worst, form_defect(sampler.forms(), sampler.sample(rng)));
    INFO(form.name());
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("SU(2,1) sample with fixed seed") {
  const GroupSampler sampler(RealFormSpec::su(2, 1), 0.3);
  GaussianStream rng(42);
  const CMatrix g = sampler.sample(rng);
  const CMatrix h = sampler.forms().hermitian.value();
  CHECK((g.adjoint() * h * g - h).norm() / h.norm() < 1e-10);
}

TEST_CASE("scale zero samples the identity") {
  for (const auto& form : small_forms()) {
    const GroupSampler sampler(form, 0.0);
    GaussianStream rng(1);
    const CMatrix g = sampler.sample(rng);
    CHECK(g == CMatrix::Identity(g.rows(), g.cols()));
  }
}

TEST_CASE("Sp samples have unit determinant") {
  for (int g = 1; g <= 3; ++g) {
    const GroupSampler sampler(RealFormSpec::sp(g), 0.3);
    GaussianStream rng(7);
    for (int i = 0; i < 200; ++i) CHECK(std::abs(sampler.sample(rng).determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("expm against Eigen's matrix exponential") {
  GaussianStream rng(99);
  for (int d : {1, 2, 3, 5, 8}) {
    for (double s : {1e-3, 0.3, 2.0, 10.0}) {
      const CMatrix x = s * random_matrix(d, rng) / std::sqrt(static_cast<double>(d));
      const CMatrix ours = expm(x);
      const CMatrix ref = x.exp();
      CHECK((ours - ref).norm() / ref.norm() < 1e-11);
    }
  }
  CHECK(expm(CMatrix::Zero(3, 3)) == CMatrix::Identity(3, 3));
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(expm(bad), NumericError);
}

TEST_CASE("compound matrix examples") {
  CHECK(exterior_power_matrix(CMatrix::Identity(4, 4), 2) == CMatrix::Identity(6, 6));

  GaussianStream rng(3);
  for (int d = 1; d <= 6; ++d) {
    const CMatrix m = random_matrix(d, rng);
    const CMatrix top = exterior_power_matrix(m, d);
    REQUIRE(top.rows() == 1);
    CHECK(std::abs(top(0, 0) - m.determinant()) < 1e-10 * std::max(1.0, std::abs(m.determinant())));
    CHECK((exterior_power_matrix(m, 1) - m).norm() == 0.0);
  }

  CMatrix diag = CMatrix::Zero(4, 4);
  const std::complex<double> a(2, 0), b(3, 1), c(-1, 0), dd(0.5, -2);
  diag.diagonal() << a, b, c, dd;
  const CMatrix w = exterior_power_matrix(diag, 2);
  Eigen::VectorXcd expected(6);
  expected << a * b, a * c, a * dd, b * c, b * dd, c * dd;
  CHECK((w.diagonal() - expected).norm() < 1e-14);
  CHECK((w - CMatrix(expected.asDiagonal())).norm() < 1e-14);
}

TEST_CASE("compound matrices are functorial") {
  GaussianStream rng(5);
  for (int d = 1; d <= 6; ++d) {
    const CMatrix m = random_matrix(d, rng);
    const CMatrix n = random_matrix(d, rng);
    for (int k = 1; k <= d; ++k) {
      const CMatrix lhs = exterior_power_matrix(m * n, k);
      const CMatrix rhs = exterior_power_matrix(m, k) * exterior_power_matrix(n, k);
      CHECK((lhs - rhs).norm() / std::max(1.0, lhs.norm()) < 1e-10);
    }
  }
}

TEST_CASE("parallel compound matches the serial reference bit for bit") {
  GaussianStream rng(11);
  for (int d = 2; d <= 9; ++d) {
    const CMatrix m = random_matrix(d, rng);
    for (int k = 1; k <= d; ++k) CHECK(exterior_power_matrix(m, k) == exterior_power_matrix_serial(m, k));
  }
}

TEST_CASE("realify is a ring homomorphism") {
  GaussianStream rng(17);
  const CMatrix m = random_matrix(3, rng);
  const CMatrix n = random_matrix(3, rng);
  CHECK((realify(m * n) - realify(m) * realify(n)).norm() < 1e-12);
  CHECK(realify(m).imag().norm() == 0.0);
}

TEST_CASE("gaussian stream is reproducible and roughly standard") {
  GaussianStream a = GaussianStream::for_trial(42, 3);
  GaussianStream b = GaussianStream::for_trial(42, 3);
  GaussianStream c = GaussianStream::for_trial(42, 4);
  double sum = 0.0, sq = 0.0;
  bool differs = false;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    differs = differs || x != c.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(differs);
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}
