#include "lyapzero/simulate.hpp"

#include "lyapzero/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace lyapzero {

namespace {

class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Orthonormal frame pushed forward by the cocycle, with the accumulated
// log-stretch of each direction.
class Frame {
 public:
  explicit Frame(Eigen::Index n) : q_(CMatrix::Identity(n, n)), log_sums_(n, 0.0) {}

  void advance(const CMatrix& g, CMatrix& scratch) {
    scratch.noalias() = g * q_;
    q_.swap(scratch);
  }

  void renormalize() {
    if (!q_.allFinite()) throw OverflowError("frame overflowed between renormalizations");
    const Eigen::Index n = q_.rows();
    Eigen::HouseholderQR<CMatrix> qr(q_);
    const CMatrix& packed = qr.matrixQR();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = std::log(std::abs(packed(i, i)));
      if (!std::isfinite(v)) throw OverflowError("degenerate or overflowed frame");
      log_sums_[i] += v;
    }
    q_ = qr.householderQ() * CMatrix::Identity(n, n);
  }

  void reset_sums() { std::fill(log_sums_.begin(), log_sums_.end(), 0.0); }

  std::vector<double> exponents(long steps) const {
    std::vector<double> out(log_sums_);
    for (double& v : out) v /= static_cast<double>(steps);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }

 private:
  CMatrix q_;
  std::vector<double> log_sums_;
};

bool emits_pairs(const SimConfig& config) {
  return config.form.has_complex_structure() && !config.realify;
}

std::vector<double> realified(const SimConfig& config, const std::vector<double>& native) {
  if (!emits_pairs(config)) return native;
  std::vector<double> out;
  out.reserve(2 * native.size());
  for (double v : native) {
    out.push_back(v);
    out.push_back(v);
  }
  return out;
}

void mean_and_stderr(const std::vector<std::vector<double>>& rows, std::vector<double>& mean,
                     std::vector<double>& err) {
  const std::size_t n = rows.front().size();
  const double t = static_cast<double>(rows.size());
  mean.assign(n, 0.0);
  err.assign(n, 0.0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < n; ++i) mean[i] += row[i];
  }
  for (double& m : mean) m /= t;
  if (rows.size() < 2) return;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < n; ++i) err[i] += (row[i] - mean[i]) * (row[i] - mean[i]);
  }
  for (double& e : err) e = std::sqrt(e / (t - 1.0)) / std::sqrt(t);
}

void check_realizable(const SimConfig& config) {
  if (config.rep.is_spin()) {
    throw UnsupportedError("unsupported: spin representations are weight-combinatorics only");
  }
}

template <typename Runner>
std::pair<std::vector<TrialEstimate>, int> run_with_retry(const SimConfig& config, Runner run) {
  int interval = config.renorm_interval;
  try {
    return {run(config, interval), interval};
  } catch (const OverflowError& first) {
    if (interval <= 1) throw NumericError(std::string("overflow at renorm interval 1: ") + first.what());
    interval = std::max(1, interval / 2);
    try {
      return {run(config, interval), interval};
    } catch (const OverflowError& second) {
      throw NumericError("overflow persists after halving renorm interval to " +
                         std::to_string(interval) + ": " + second.what());
    }
  }
}

}  // namespace

void SimConfig::validate() const {
  form.validate();
  check_coherent(form, rep);
  if (steps < 1) throw ParameterError("steps must be positive");
  if (burn_in < 0) throw ParameterError("burn-in must be non-negative");
  if (trials < 1) throw ParameterError("trials must be positive");
  if (renorm_interval < 1 || renorm_interval > 50) {
    throw ParameterError("renorm interval must be in 1..50, got " + std::to_string(renorm_interval));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("scale must be positive");
  if (!(zero_threshold > 0.0 && zero_threshold < 0.5)) {
    throw ParameterError("zero threshold must lie in (0, 0.5)");
  }
}

TrialEstimate run_trial(const SimConfig& config, const GroupSampler& sampler, std::uint64_t trial,
                        int renorm_interval) {
  GaussianStream rng = GaussianStream::for_trial(config.master_seed, trial);
  const bool lift = config.realify && config.form.has_complex_structure();
  const bool ext = config.rep.kind == RepKind::ExteriorPower;
  const int d = sampler.dim();

  std::optional<CompoundPlan> plan;
  if (ext) plan.emplace(static_cast<std::size_t>(d), static_cast<std::size_t>(config.rep.k));
  const Eigen::Index std_dim = lift ? 2 * d : d;
  const Eigen::Index rep_dim =
      ext ? static_cast<Eigen::Index>(plan->size()) * (lift ? 2 : 1) : std_dim;

  Frame standard(std_dim);
  std::optional<Frame> rep;
  if (ext) rep.emplace(rep_dim);

  const InvariantForms& forms = sampler.forms();
  CMatrix window = CMatrix::Identity(d, d);
  CMatrix scratch;
  CMatrix wedge;
  TrialEstimate est;
  const long total = config.burn_in + config.steps;
  for (long step = 1; step <= total; ++step) {
    const CMatrix g = sampler.sample(rng);
    scratch.noalias() = g * window;
    window.swap(scratch);
    standard.advance(lift ? realify(g) : g, scratch);
    if (ext) {
      plan->apply_serial(g, wedge);
      rep->advance(lift ? realify(wedge) : wedge, scratch);
    }
    if (step % renorm_interval == 0 || step == config.burn_in || step == total) {
      standard.renormalize();
      if (ext) rep->renormalize();
      if (step == config.burn_in) {
        standard.reset_sums();
        if (ext) rep->reset_sums();
      }
      const double spread = window.squaredNorm() / static_cast<double>(d);
      est.max_form_defect = std::max(est.max_form_defect, form_defect(forms, window) / spread);
      window.setIdentity();
    }
  }
  est.standard_exponents = standard.exponents(config.steps);
  est.exponents = ext ? rep->exponents(config.steps) : est.standard_exponents;
  return est;
}

std::vector<TrialEstimate> run_trials(const SimConfig& config, int renorm_interval) {
  const GroupSampler sampler(config.form, config.scale);
  const long trials = config.trials;
  std::vector<TrialEstimate> out(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < trials; ++t) {
    try {
      out[t] = run_trial(config, sampler, static_cast<std::uint64_t>(t), renorm_interval);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<TrialEstimate> run_trials_serial(const SimConfig& config, int renorm_interval) {
  const GroupSampler sampler(config.form, config.scale);
  std::vector<TrialEstimate> out;
  out.reserve(static_cast<std::size_t>(config.trials));
  for (int t = 0; t < config.trials; ++t) {
    out.push_back(run_trial(config, sampler, static_cast<std::uint64_t>(t), renorm_interval));
  }
  return out;
}

LyapunovResult aggregate_trials(const SimConfig& config, const std::vector<TrialEstimate>& trials,
                                int renorm_interval) {
  if (trials.empty()) throw ParameterError("no trials to aggregate");
  LyapunovResult r;
  r.renorm_interval_used = renorm_interval;
  std::vector<std::vector<double>> standard_rows;
  for (const auto& t : trials) {
    r.per_trial.push_back(realified(config, t.exponents));
    standard_rows.push_back(realified(config, t.standard_exponents));
    r.max_form_defect = std::max(r.max_form_defect, t.max_form_defect);
  }
  mean_and_stderr(r.per_trial, r.exponents, r.stderr_);
  mean_and_stderr(standard_rows, r.standard_exponents, r.standard_stderr);
  r.zero_cluster = classify_zero_cluster(r.exponents, r.stderr_, config.zero_threshold);
  return r;
}

LyapunovResult lyapunov_spectrum(const SimConfig& config) {
  config.validate();
  check_realizable(config);
  auto [trials, interval] = run_with_retry(config, run_trials);
  return aggregate_trials(config, trials, interval);
}

LyapunovResult lyapunov_spectrum_serial(const SimConfig& config) {
  config.validate();
  check_realizable(config);
  auto [trials, interval] = run_with_retry(config, run_trials_serial);
  return aggregate_trials(config, trials, interval);
}

ZeroCluster classify_zero_cluster(std::span<const double> exponents,
                                  std::span<const double> stderr_, double zero_threshold) {
  ZeroCluster zc;
  const std::size_t n = exponents.size();
  if (n == 0 || stderr_.size() != n) {
    zc.reason = "empty spectrum or missing standard errors";
    return zc;
  }
  const double top = exponents[0];
  if (!(top > 0.0)) {
    zc.reason = "top exponent is not positive";
    return zc;
  }
  if (top <= 3.0 * stderr_[0]) {
    zc.reason = "top exponent is within 3 standard errors of zero";
    return zc;
  }
  // Neutral directions that the group acts on isometrically give exact zeros,
  // whose trial spread is pure roundoff; floor stderr at that resolution.
  const double floor = kRoundoffResolution * top;
  std::vector<bool> zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(exponents[i]);
    zero[i] = a < zero_threshold * top && a < 3.0 * std::max(stderr_[i], floor);
  }
  auto first = std::find(zero.begin(), zero.end(), true);
  if (first == zero.end()) {
    // empty cluster, placed at the sign change
    const auto pos = std::find_if(exponents.begin(), exponents.end(), [](double v) { return v < 0; });
    zc.first = zc.last = static_cast<std::size_t>(pos - exponents.begin());
    zc.conclusive = true;
    return zc;
  }
  auto last = std::find(first, zero.end(), false);
  if (std::find(last, zero.end(), true) != zero.end()) {
    zc.reason = "zero-classified exponents are not contiguous";
    return zc;
  }
  zc.first = static_cast<std::size_t>(first - zero.begin());
  zc.last = static_cast<std::size_t>(last - zero.begin());
  double max_zero = 0.0;
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(exponents[i]);
    if (zero[i]) {
      max_zero = std::max(max_zero, a);
    } else {
      min_nonzero = std::min(min_nonzero, a);
    }
  }
  if (std::isfinite(min_nonzero) && min_nonzero < 2.0 * max_zero) {
    std::ostringstream os;
    os << "gap ratio " << min_nonzero / max_zero << " between nonzero and zero exponents is below 2";
    zc.reason = os.str();
    return zc;
  }
  zc.conclusive = true;
  return zc;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

VerifyReport judge(const SimConfig& config, const SpectrumPrediction& prediction,
                   const LyapunovResult& result) {
  if (!(prediction.form == config.form) || !(prediction.rep == config.rep)) {
    throw ParameterError("prediction is for " + prediction.form.name() + " " +
                         prediction.rep.to_string() + ", simulation is " + config.form.name() +
                         " " + config.rep.to_string());
  }
  VerifyReport rep;
  rep.prediction = prediction;
  rep.result = result;
  const ZeroCluster& zc = result.zero_cluster;
  if (!zc.conclusive) {
    rep.verdict = Verdict::Inconclusive;
    rep.details = "zero cluster inconclusive: " + zc.reason;
    return rep;
  }

  rep.lambda_hat = fit_lyapunov_vector(config.form, result.standard_exponents);
  const auto lines =
      evaluate_spectrum(prediction.nonzero_structure, prediction.zero_count_real, rep.lambda_hat);
  rep.predicted_exponents = expand_spectrum(lines);
  for (const auto& line : lines) {
    const bool is_zero_line = std::all_of(line.weights.begin(), line.weights.end(),
                                          [](const Weight& w) { return w.is_zero(); });
    if (!is_zero_line) rep.predicted_groups.push_back(static_cast<long>(line.multiplicity));
  }

  const auto& ex = result.exponents;
  const auto& se = result.stderr_;
  const double floor = ex.empty() ? 0.0 : kRoundoffResolution * std::abs(ex.front());
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (i >= zc.first && i < zc.last) continue;
    const bool adjacent = prev && *prev + 1 == i;
    if (adjacent && std::abs(ex[*prev] - ex[i]) <
                        3.0 * (std::max(se[*prev], floor) + std::max(se[i], floor))) {
      ++rep.simulated_groups.back();
    } else {
      rep.simulated_groups.push_back(1);
    }
    prev = i;
  }

  std::ostringstream os;
  const BigInt observed_zero = zc.size();
  if (observed_zero != prediction.zero_count_real) {
    rep.verdict = Verdict::Mismatch;
    os << "zero cluster has " << zc.size() << " exponents, predicted "
       << prediction.zero_count_real;
    rep.details = os.str();
    return rep;
  }
  if (rep.predicted_exponents.size() != ex.size()) {
    rep.verdict = Verdict::Mismatch;
    os << "prediction has " << rep.predicted_exponents.size() << " real exponents, simulation "
       << ex.size();
    rep.details = os.str();
    return rep;
  }
  const double top = ex.front();
  double worst = 0.0;
  std::size_t worst_i = 0;
  bool within = true;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const double tol = std::max(0.05 * top, 3.0 * se[i]);
    rep.tolerance.push_back(tol);
    const double dev = std::abs(ex[i] - rep.predicted_exponents[i]);
    if (dev / tol > worst) {
      worst = dev / tol;
      worst_i = i;
    }
    within = within && dev <= tol;
  }
  if (rep.simulated_groups != rep.predicted_groups) {
    rep.verdict = Verdict::Mismatch;
    os << "nonzero multiplicity pattern differs (simulated groups " << rep.simulated_groups.size()
       << ", predicted " << rep.predicted_groups.size() << ")";
    rep.details = os.str();
    return rep;
  }
  if (!within) {
    rep.verdict = Verdict::Mismatch;
    os << "exponent " << worst_i + 1 << " deviates from the evaluated prediction by "
       << std::abs(ex[worst_i] - rep.predicted_exponents[worst_i]) << " > tolerance "
       << rep.tolerance[worst_i];
    rep.details = os.str();
    return rep;
  }
  rep.verdict = Verdict::Match;
  os << zc.size() << " zero exponents as predicted; largest deviation/tolerance ratio " << worst;
  rep.details = os.str();
  return rep;
}

VerifyReport verify_prediction(const SimConfig& config, const SpectrumPrediction& prediction) {
  return judge(config, prediction, lyapunov_spectrum(config));
}

ExteriorConsistency exterior_consistency_check(const RealFormSpec& form, int k, SimConfig config) {
  config.form = form;
  config.rep = RepSpec::exterior(k);
  config.realify = false;
  config.validate();
  auto [trials, interval] = run_with_retry(config, run_trials);

  std::vector<std::vector<double>> sums_rows;
  std::vector<std::vector<double>> direct_rows;
  for (const auto& t : trials) {
    std::vector<double> sums;
    const auto& s = t.standard_exponents;
    for_each_subset(s.size(), static_cast<std::size_t>(k), [&](std::span<const std::size_t> idx) {
      double acc = 0.0;
      for (std::size_t i : idx) acc += s[i];
      sums.push_back(acc);
    });
    std::sort(sums.begin(), sums.end(), std::greater<>());
    sums_rows.push_back(realified(config, sums));
    direct_rows.push_back(realified(config, t.exponents));
  }
  ExteriorConsistency out;
  out.k = k;
  mean_and_stderr(sums_rows, out.subset_sums, out.subset_stderr);
  mean_and_stderr(direct_rows, out.direct, out.direct_stderr);

  std::vector<std::vector<double>> standard_rows;
  for (const auto& t : trials) standard_rows.push_back(t.standard_exponents);
  std::vector<double> standard_mean;
  std::vector<double> standard_err;
  mean_and_stderr(standard_rows, standard_mean, standard_err);
  const double top = standard_mean.front();

  out.consistent = true;
  for (std::size_t i = 0; i < out.direct.size(); ++i) {
    const double combined = std::hypot(out.subset_stderr[i], out.direct_stderr[i]);
    const double tol = std::max(0.05 * top, 3.0 * combined);
    out.tolerance.push_back(tol);
    const double dev = std::abs(out.subset_sums[i] - out.direct[i]);
    out.max_deviation = std::max(out.max_deviation, dev);
    out.consistent = out.consistent && dev <= tol;
  }
  return out;
}

void write_trials_csv(std::ostream& os, const LyapunovResult& result) {
  const std::size_t n = result.exponents.size();
  os << "trial";
  for (std::size_t i = 0; i < n; ++i) os << ",lambda_" << (i + 1);
  os << '\n';
  os << std::setprecision(17);
  for (std::size_t t = 0; t < result.per_trial.size(); ++t) {
    os << t;
    for (double v : result.per_trial[t]) os << ',' << v;
    os << '\n';
  }
}

}  // namespace lyapzero
