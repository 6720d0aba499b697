#include "lyapzero/prediction.hpp"

#include "lyapzero/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lyapzero {

namespace {

int exterior_degree(const RepSpec& rep) {
  return rep.kind == RepKind::ExteriorPower ? rep.k : 1;
}

bool is_standard_like(const RepSpec& rep) {
  return rep.kind == RepKind::Standard || (rep.kind == RepKind::ExteriorPower && rep.k == 1);
}

void check_su_p1_args(int p, int k) {
  if (p < 1 || k < 1 || k > p + 1) {
    throw ParameterError("SU(p,1) exterior power needs p >= 1 and 1 <= k <= p+1, got p=" +
                         std::to_string(p) + ", k=" + std::to_string(k));
  }
}

}  // namespace

WeightMultiset real_restricted_weights(const RealFormSpec& form, const RepSpec& rep) {
  return weights_restricted(form, rep).scaled(form.count_factor());
}

BigInt su_exterior_zero_multiplicity(int p, int q, int k) {
  BigInt total = 0;
  for (int a = 0; 2 * a <= k; ++a) total += binomial(q, a) * binomial(p - q, k - 2 * a);
  return total;
}

std::optional<BigInt> closed_form_zero_count(const RealFormSpec& form, const RepSpec& rep) {
  const bool standard = is_standard_like(rep);
  switch (form.family) {
    case Family::SU:
      if (standard) return BigInt(2 * (form.p - form.q));
      if (rep.kind == RepKind::ExteriorPower) {
        return 2 * su_exterior_zero_multiplicity(form.p, form.q, rep.k);
      }
      break;
    case Family::SOStar:
      if (standard) return BigInt(form.n % 2 == 1 ? 4 : 0);
      break;
    case Family::SOOdd:
      if (standard) return BigInt(2 * form.n - 3);
      if (rep.kind == RepKind::Spin) return BigInt(0);
      break;
    case Family::SOEven:
      if (standard) return BigInt(2 * form.n - 4);
      if (rep.kind == RepKind::HalfSpinPlus || rep.kind == RepKind::HalfSpinMinus) {
        return BigInt(0);
      }
      break;
    case Family::Sp:
      if (standard) return BigInt(0);
      break;
  }
  return std::nullopt;
}

BigInt predicted_zero_count(const RealFormSpec& form, const RepSpec& rep) {
  const BigInt enumerated = weights_restricted(form, rep).zero_multiplicity() * form.count_factor();
  if (auto closed = closed_form_zero_count(form, rep); closed && *closed != enumerated) {
    throw std::logic_error("zero count for " + form.name() + " " + rep.to_string() +
                           ": enumeration gives " + enumerated.str() + ", closed form " +
                           closed->str());
  }
  return enumerated;
}

SignaturePair su_exterior_signature(int p, int q, int k) {
  SignaturePair s;
  for (int j = 0; j <= std::min(k, q); ++j) {
    const BigInt c = binomial(p, k - j) * binomial(q, j);
    (j % 2 == 0 ? s.positive : s.negative) += c;
  }
  return s;
}

SignaturePair su_zero_block_split(int p, int q, int k) {
  SignaturePair s;
  for (int a = 0; 2 * a <= k; ++a) {
    const BigInt c = 2 * binomial(q, a) * binomial(p - q, k - 2 * a);
    (a % 2 == 0 ? s.positive : s.negative) += c;
  }
  return s;
}

SignaturePair su_p1_exterior_signature(int p, int k) {
  check_su_p1_args(p, k);
  return {binomial(p, k), binomial(p, k - 1)};
}

SignaturePair su_p1_zero_block_split(int p, int k) {
  check_su_p1_args(p, k);
  return {2 * binomial(p - 1, k), k >= 2 ? 2 * binomial(p - 1, k - 2) : BigInt(0)};
}

SigmaRankBound sigma_rank_bound(const RealFormSpec& form, const RepSpec& rep) {
  check_coherent(form, rep);
  if (form.family == Family::SU && is_standard_like(rep)) {
    return {BigInt((form.p + form.q) - std::abs(form.p - form.q)), std::nullopt};
  }
  if (form.family == Family::SOStar && is_standard_like(rep)) {
    return {BigInt(form.n % 2 == 1 ? 2 * form.n - 2 : 2 * form.n), std::nullopt};
  }
  if (form.family == Family::SU && form.q == 1 && rep.kind == RepKind::ExteriorPower) {
    const BigInt block = binomial(form.p - 1, rep.k - 1);
    return {2 * block, block};
  }
  throw UnsupportedError("no second fundamental form rank bound for " + form.name() + " in " +
                         rep.to_string());
}

HodgeVerdict hodge_admissible(const RealFormSpec& form, const RepSpec& rep) {
  try {
    check_coherent(form, rep);
  } catch (const ParameterError& e) {
    return {false, std::string("not a representation in scope: ") + e.what()};
  }
  const bool standard = is_standard_like(rep);
  switch (form.family) {
    case Family::SU:
      if (standard) return {true, "su(p,q) in the standard representation"};
      if (form.q == 1) return {true, "su(p,1) in an exterior power of the standard"};
      return {false, "exterior powers k >= 2 of su(p,q) require q = 1; here q = " +
                         std::to_string(form.q)};
    case Family::SOOdd:
      if (rep.kind == RepKind::Spin) return {true, "so(2n-1,2) in the spin representation"};
      return {false, "so(2n-1,2) occurs only in the spin representation"};
    case Family::Sp:
      if (standard) return {true, "sp(2g,R) in the standard representation"};
      return {false, "sp(2g,R) occurs only in the standard representation"};
    case Family::SOStar:
      if (standard) return {true, "so*(2n) in the standard representation"};
      return {false, "so*(2n) occurs only in the standard representation"};
    case Family::SOEven:
      if (rep.kind == RepKind::HalfSpinPlus || rep.kind == RepKind::HalfSpinMinus) {
        return {true, "so(2n-2,2) in a half-spin representation"};
      }
      return {false, "so(2n-2,2) occurs only in the half-spin representations"};
  }
  return {false, "unknown family"};
}

namespace {

void push_line(std::vector<SpectrumLine>& lines, double value, const BigInt& mult, const Weight& w) {
  lines.push_back({value, mult, {w}});
}

std::vector<SpectrumLine> merge_lines(std::vector<SpectrumLine> lines) {
  std::stable_sort(lines.begin(), lines.end(),
                   [](const SpectrumLine& a, const SpectrumLine& b) { return a.value > b.value; });
  std::vector<SpectrumLine> merged;
  for (auto& line : lines) {
    if (!merged.empty()) {
      SpectrumLine& last = merged.back();
      const double tol = 1e-12 * std::max(1.0, std::abs(last.value));
      if (std::abs(last.value - line.value) <= tol) {
        last.multiplicity += line.multiplicity;
        last.weights.insert(last.weights.end(), line.weights.begin(), line.weights.end());
        continue;
      }
    }
    merged.push_back(std::move(line));
  }
  return merged;
}

}  // namespace

std::vector<SpectrumLine> evaluate_spectrum(const WeightMultiset& restricted,
                                            std::span<const double> lambda) {
  if (restricted.basis() != Basis::Restricted) {
    throw ParameterError("evaluate_spectrum expects restricted weights");
  }
  if (lambda.size() != restricted.dim()) {
    throw ParameterError("evaluate_spectrum: Lyapunov vector has length " +
                         std::to_string(lambda.size()) + ", restricted rank is " +
                         std::to_string(restricted.dim()));
  }
  std::vector<SpectrumLine> lines;
  for (const auto& [w, m] : restricted) push_line(lines, w.evaluate(lambda), m, w);
  return merge_lines(std::move(lines));
}

std::vector<SpectrumLine> evaluate_spectrum(const std::vector<NonzeroEntry>& nonzero,
                                            const BigInt& zero_count,
                                            std::span<const double> lambda) {
  std::vector<SpectrumLine> lines;
  for (const auto& e : nonzero) {
    if (e.weight.dim() != lambda.size()) {
      throw ParameterError("evaluate_spectrum: Lyapunov vector has length " +
                           std::to_string(lambda.size()) + ", restricted rank is " +
                           std::to_string(e.weight.dim()));
    }
    push_line(lines, e.weight.evaluate(lambda), e.real_multiplicity, e.weight);
  }
  if (zero_count > 0) {
    push_line(lines, 0.0, zero_count, Weight::zero(lambda.size(), Basis::Restricted));
  }
  return merge_lines(std::move(lines));
}

std::vector<double> expand_spectrum(const std::vector<SpectrumLine>& lines) {
  std::vector<double> out;
  for (const auto& line : lines) {
    for (BigInt i = 0; i < line.multiplicity; ++i) out.push_back(line.value);
  }
  return out;
}

std::vector<double> fit_lyapunov_vector(const RealFormSpec& form,
                                        std::span<const double> standard_exponents) {
  const int r = form.real_rank();
  std::vector<Weight> list = real_restricted_weights(form, RepSpec::standard()).expanded();
  if (list.size() != standard_exponents.size()) {
    throw ParameterError("fit_lyapunov_vector: expected " + std::to_string(list.size()) +
                         " standard exponents for " + form.name() + ", got " +
                         std::to_string(standard_exponents.size()));
  }
  std::vector<double> generic(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) generic[i] = static_cast<double>(r - i);
  std::stable_sort(list.begin(), list.end(), [&](const Weight& a, const Weight& b) {
    return a.evaluate(generic) > b.evaluate(generic);
  });
  Eigen::MatrixXd a(static_cast<Eigen::Index>(list.size()), r);
  Eigen::VectorXd b(static_cast<Eigen::Index>(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (int j = 0; j < r; ++j) a(i, j) = list[i].coord(j);
    b(i) = standard_exponents[i];
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  return {x.data(), x.data() + x.size()};
}

SpectrumPrediction predict(const RealFormSpec& form, const RepSpec& rep) {
  check_coherent(form, rep);
  SpectrumPrediction out;
  out.form = form;
  out.rep = rep;
  out.count_factor = form.count_factor();
  out.real_rank = form.real_rank();
  out.relative_root_system = form.relative_root_system();

  const WeightMultiset real = real_restricted_weights(form, rep);
  out.real_dim = real.total();
  out.zero_count_real = predicted_zero_count(form, rep);
  for (const auto& [w, m] : real) {
    if (!w.is_zero()) out.nonzero_structure.push_back({w, m});
  }

  if (form.family == Family::SU && !rep.is_spin()) {
    const int k = exterior_degree(rep);
    out.signature = su_exterior_signature(form.p, form.q, k);
    out.definite_split = su_zero_block_split(form.p, form.q, k);
  } else if (form.family == Family::SOStar && is_standard_like(rep)) {
    out.signature = SignaturePair{form.n, form.n};
  }
  try {
    out.sigma_rank_bound = sigma_rank_bound(form, rep);
  } catch (const UnsupportedError&) {
  }
  out.hodge = hodge_admissible(form, rep);
  return out;
}

std::vector<SpectrumPrediction> classification_table(long max_real_dim) {
  std::vector<std::pair<RealFormSpec, RepSpec>> pairs;
  for (int d = 2; 2L * d <= max_real_dim; ++d) {
    for (int q = 1; 2 * q <= d; ++q) pairs.push_back({RealFormSpec::su(d - q, q), RepSpec::standard()});
  }
  for (int p = 2; 2L * (p + 1) <= max_real_dim; ++p) {
    for (int k = 2; k <= p; ++k) {
      if (binomial(p + 1, k) * 2 <= max_real_dim) {
        pairs.push_back({RealFormSpec::su(p, 1), RepSpec::exterior(k)});
      }
    }
  }
  for (int n = 2; n < 62 && (1L << n) <= max_real_dim; ++n) {
    pairs.push_back({RealFormSpec::so_odd(n), RepSpec::spin()});
  }
  for (int g = 1; 2L * g <= max_real_dim; ++g) pairs.push_back({RealFormSpec::sp(g), RepSpec::standard()});
  for (int n = 2; 4L * n <= max_real_dim; ++n) {
    pairs.push_back({RealFormSpec::so_star(n), RepSpec::standard()});
  }
  for (int n = 3; n < 62 && (1L << (n - 1)) <= max_real_dim; ++n) {
    pairs.push_back({RealFormSpec::so_even(n), RepSpec::half_spin(true)});
    pairs.push_back({RealFormSpec::so_even(n), RepSpec::half_spin(false)});
  }

  std::vector<SpectrumPrediction> rows;
  for (const auto& [form, rep] : pairs) {
    if (!hodge_admissible(form, rep).admissible) continue;
    rows.push_back(predict(form, rep));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SpectrumPrediction& a, const SpectrumPrediction& b) {
    return a.real_dim < b.real_dim;
  });
  return rows;
}

}  // namespace lyapzero
