#pragma once

// Lyapunov spectra of i.i.d. random products g_N ... g_1, g_i = exp(X_i)
// with X_i gaussian in a fixed Lie algebra basis, estimated by repeated QR
// re-orthonormalization of a full frame.
//
// Exponents are reported on the realified space: for SU(p,q) and SO*(2n)
// every complex exponent is emitted twice, so counts match the real
// conventions of prediction.hpp.

#include "lyapzero/prediction.hpp"
#include "lyapzero/realforms.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lyapzero {

struct SimConfig {
  RealFormSpec form;
  RepSpec rep = RepSpec::standard();
  long steps = 100000;
  // Steps run before accumulation starts, so the frame has aligned with the
  // Oseledets filtration. Exponents are averaged over `steps` only.
  long burn_in = 1000;
  int trials = 8;
  int renorm_interval = 10;
  double scale = 0.3;
  std::uint64_t master_seed = 42;
  double zero_threshold = 0.05;
  // Simulate complex representations through their real 2d x 2d matrices
  // instead of emitting each complex exponent twice.
  bool realify = false;

  void validate() const;
};

struct ZeroCluster {
  bool conclusive = false;
  std::size_t first = 0;  // half-open index range [first, last)
  std::size_t last = 0;
  std::string reason;

  std::size_t size() const { return last - first; }
  bool operator==(const ZeroCluster&) const = default;
};

// Result of one trial. Exponents are in the native count of the simulated
// matrices (complex for SU/SO* unless realified), sorted descending.
struct TrialEstimate {
  std::vector<double> exponents;
  std::vector<double> standard_exponents;
  double max_form_defect = 0.0;
};

struct LyapunovResult {
  std::vector<double> exponents;  // realified, descending
  std::vector<double> stderr_;
  std::vector<double> standard_exponents;  // realified standard representation
  std::vector<double> standard_stderr;
  ZeroCluster zero_cluster;
  std::vector<std::vector<double>> per_trial;  // realified
  // Largest ||W* F W - F|| / (||F|| ||W||^2 / d) over renormalization
  // windows W of the standard-representation product.
  double max_form_defect = 0.0;
  int renorm_interval_used = 0;

  bool operator==(const LyapunovResult&) const = default;
};

// Single trial with its own stream derived from (master_seed, trial).
TrialEstimate run_trial(const SimConfig& config, const GroupSampler& sampler, std::uint64_t trial,
                        int renorm_interval);

// All trials, OpenMP-parallel over trials.
std::vector<TrialEstimate> run_trials(const SimConfig& config, int renorm_interval);
// Serial reference of run_trials.
std::vector<TrialEstimate> run_trials_serial(const SimConfig& config, int renorm_interval);

LyapunovResult aggregate_trials(const SimConfig& config, const std::vector<TrialEstimate>& trials,
                                int renorm_interval);

LyapunovResult lyapunov_spectrum(const SimConfig& config);
LyapunovResult lyapunov_spectrum_serial(const SimConfig& config);

// Relative resolution of the estimator; standard errors below
// kRoundoffResolution * top exponent are raised to it.
inline constexpr double kRoundoffResolution = 1e-9;

ZeroCluster classify_zero_cluster(std::span<const double> exponents,
                                  std::span<const double> stderr_, double zero_threshold);

enum class Verdict { Match, Mismatch, Inconclusive };
std::string to_string(Verdict v);

struct VerifyReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string details;
  SpectrumPrediction prediction;
  LyapunovResult result;
  std::vector<double> lambda_hat;
  std::vector<double> predicted_exponents;  // prediction evaluated at lambda_hat
  std::vector<double> tolerance;            // per exponent
  std::vector<long> simulated_groups;       // nonzero multiplicities, descending
  std::vector<long> predicted_groups;

  bool operator==(const VerifyReport&) const = default;
};

// Compare an existing simulation result against a prediction.
VerifyReport judge(const SimConfig& config, const SpectrumPrediction& prediction,
                   const LyapunovResult& result);
VerifyReport verify_prediction(const SimConfig& config, const SpectrumPrediction& prediction);

struct ExteriorConsistency {
  int k = 1;
  std::vector<double> subset_sums;  // realified, descending
  std::vector<double> subset_stderr;
  std::vector<double> direct;
  std::vector<double> direct_stderr;
  std::vector<double> tolerance;
  double max_deviation = 0.0;
  bool consistent = false;
};

// Exponents of wedge^k against k-subset sums of the standard exponents,
// both measured along the same cocycle.
ExteriorConsistency exterior_consistency_check(const RealFormSpec& form, int k, SimConfig config);

// One row per trial, columns = realified exponents.
void write_trials_csv(std::ostream& os, const LyapunovResult& result);

}  // namespace lyapzero
