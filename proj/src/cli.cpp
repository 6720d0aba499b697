#include "lyapzero/cli.hpp"

#include "lyapzero/errors.hpp"
#include "lyapzero/records.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace lyapzero {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupFlags {
  std::string group;
  std::optional<int> p, q, m, n, g;
  std::string rep = "standard";
};

struct SimFlags {
  long steps = 100000;
  long burn_in = 1000;
  int trials = 8;
  std::uint64_t seed = 42;
  double scale = 0.3;
  int renorm = 10;
  double zero_threshold = 0.05;
  bool realify = false;
  std::string dump_trials;
};

struct Options {
  GroupFlags group;
  SimFlags sim;
  long max_dim = 0;
  std::string format = "text";
};

void add_group_options(CLI::App* cmd, GroupFlags& f) {
  cmd->add_option("--group", f.group, "su | so-split | so-star | sp")
      ->required()
      ->check(CLI::IsMember({"su", "so-split", "so-star", "sp"}));
  cmd->add_option("--p", f.p, "SU(p,q): p");
  cmd->add_option("--q", f.q, "SU(p,q): q");
  cmd->add_option("--m", f.m, "SO(m,2): m");
  cmd->add_option("--n", f.n, "SO*(2n): n");
  cmd->add_option("--g", f.g, "Sp(2g,R): g");
  cmd->add_option("--rep", f.rep, "standard | ext:K | spin | half-spin:+ | half-spin:-")
      ->capture_default_str();
}

void add_sim_options(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--steps", f.steps, "cocycle length per trial")->capture_default_str();
  cmd->add_option("--burn-in", f.burn_in, "steps discarded before accumulation")->capture_default_str();
  cmd->add_option("--trials", f.trials, "independent trials")->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->envname(kSeedEnvVar)->capture_default_str();
  cmd->add_option("--scale", f.scale, "gaussian scale of Lie algebra steps")->capture_default_str();
  cmd->add_option("--renorm", f.renorm, "steps between QR renormalizations")->capture_default_str();
  cmd->add_option("--zero-threshold", f.zero_threshold, "relative zero threshold")
      ->capture_default_str();
  cmd->add_flag("--realify", f.realify, "simulate complex reps through real 2d x 2d matrices");
  cmd->add_option("--dump-trials", f.dump_trials, "write per-trial exponents as CSV");
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

int need(const std::optional<int>& v, const char* flag, const std::string& group) {
  if (!v) throw UsageError("--group " + group + " requires " + flag);
  return *v;
}

RealFormSpec resolve_form(const GroupFlags& f) {
  RealFormSpec form;
  try {
    if (f.group == "su") {
      form = RealFormSpec::su(need(f.p, "--p", f.group), need(f.q, "--q", f.group));
    } else if (f.group == "so-split") {
      form = RealFormSpec::so_split(need(f.m, "--m", f.group));
    } else if (f.group == "so-star") {
      form = RealFormSpec::so_star(need(f.n, "--n", f.group));
    } else {
      form = RealFormSpec::sp(need(f.g, "--g", f.group));
    }
    form.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return form;
}

RepSpec resolve_rep(const GroupFlags& f) {
  try {
    return RepSpec::parse(f.rep);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
}

Json group_inputs(const GroupFlags& f) {
  Json j = {{"group", f.group}, {"rep", f.rep}};
  for (const auto& [key, value] : {std::pair{"p", f.p}, {"q", f.q}, {"m", f.m}, {"n", f.n}, {"g", f.g}}) {
    if (value) j[key] = *value;
  }
  return j;
}

Json sim_parameters(const SimConfig& c) {
  return {{"steps", c.steps},
          {"burn_in", c.burn_in},
          {"trials", c.trials},
          {"scale", c.scale},
          {"renorm_interval", c.renorm_interval},
          {"zero_threshold", c.zero_threshold},
          {"realify", c.realify}};
}

SimConfig resolve_config(const Options& o) {
  SimConfig c;
  c.form = resolve_form(o.group);
  c.rep = resolve_rep(o.group);
  c.steps = o.sim.steps;
  c.burn_in = o.sim.burn_in;
  c.trials = o.sim.trials;
  c.master_seed = o.sim.seed;
  c.scale = o.sim.scale;
  c.renorm_interval = o.sim.renorm;
  c.zero_threshold = o.sim.zero_threshold;
  c.realify = o.sim.realify;
  try {
    c.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::string big(const BigInt& v) { return v.str(); }

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

bool positive(const Weight& w) {
  for (int c : w.twice_coords()) {
    if (c != 0) return c > 0;
  }
  return false;
}

std::string structure_text(const SpectrumPrediction& p) {
  std::vector<std::string> parts;
  bool zero_done = p.zero_count_real == 0;
  for (const auto& e : p.nonzero_structure) {
    if (!zero_done && !positive(e.weight)) {
      parts.push_back("0 x" + big(p.zero_count_real));
      zero_done = true;
    }
    parts.push_back(e.weight.to_string() + " x" + big(e.real_multiplicity));
  }
  if (!zero_done) parts.push_back("0 x" + big(p.zero_count_real));
  std::string s;
  for (const auto& part : parts) s += (s.empty() ? "" : ", ") + part;
  return s.empty() ? "-" : s;
}

void print_row(std::ostream& out, const std::string& label, const std::string& value) {
  out << "  " << std::left << std::setw(22) << label << value << "\n";
}

void print_prediction(std::ostream& out, const SpectrumPrediction& p) {
  out << p.form.name() << "  " << p.rep.to_string() << "\n";
  print_row(out, "relative root system",
            p.relative_root_system + " (real rank " + std::to_string(p.real_rank) + ")");
  print_row(out, "dimension", big(p.real_dim) + " (real)");
  std::string zeros = big(p.zero_count_real) + " (real)";
  if (p.count_factor != 1) zeros += ", " + big(p.zero_count_complex()) + " (complex)";
  print_row(out, "zero exponents", zeros);
  print_row(out, "spectrum", structure_text(p) + " (real multiplicities)");
  if (p.signature) {
    print_row(out, "signature",
              "(" + big(p.signature->positive) + "+, " + big(p.signature->negative) + "-) (complex)");
  }
  if (p.definite_split) {
    print_row(out, "zero block split",
              big(p.definite_split->positive) + " positive, " + big(p.definite_split->negative) +
                  " negative (real)");
  }
  if (p.sigma_rank_bound) {
    std::string s = big(p.sigma_rank_bound->total) + " total";
    if (p.sigma_rank_bound->per_block) s += ", " + big(*p.sigma_rank_bound->per_block) + " per block";
    print_row(out, "sigma rank bound", s);
  }
  print_row(out, "hodge admissible", std::string(p.hodge.admissible ? "yes" : "no") + ": " + p.hodge.reason);
}

void print_table(std::ostream& out, const std::vector<SpectrumPrediction>& rows, long max_dim) {
  if (rows.empty()) {
    out << "no admissible pairs with real dimension <= " << max_dim << "\n";
    return;
  }
  out << std::left << std::setw(12) << "form" << std::setw(14) << "rep" << std::setw(12) << "dim(real)"
      << std::setw(13) << "zeros(real)" << std::setw(10) << "relative"
      << "spectrum (real multiplicities)\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(12) << r.form.name() << std::setw(14) << r.rep.to_string()
        << std::setw(12) << big(r.real_dim) << std::setw(13) << big(r.zero_count_real) << std::setw(10)
        << r.relative_root_system << structure_text(r) << "\n";
  }
}

void print_result(std::ostream& out, const SimConfig& c, const LyapunovResult& r) {
  out << c.form.name() << "  " << c.rep.to_string() << ": " << r.exponents.size()
      << " exponents (real), steps " << c.steps << ", trials " << c.trials << ", seed " << c.master_seed
      << "\n";
  out << "  " << std::right << std::setw(4) << "i" << std::setw(14) << "exponent" << std::setw(14)
      << "stderr"
      << "\n";
  for (std::size_t i = 0; i < r.exponents.size(); ++i) {
    const bool zero = i >= r.zero_cluster.first && i < r.zero_cluster.last;
    out << "  " << std::setw(4) << i + 1 << std::setw(14) << fixed(r.exponents[i]) << std::setw(14)
        << fixed(r.stderr_[i]) << (zero ? "  zero" : "") << "\n";
  }
  if (r.zero_cluster.conclusive) {
    out << "zero cluster: " << r.zero_cluster.size() << " (real)";
    if (r.zero_cluster.size() > 0) {
      out << ", indices " << r.zero_cluster.first + 1 << ".." << r.zero_cluster.last;
    }
    out << "\n";
  } else {
    out << "zero cluster: inconclusive (" << r.zero_cluster.reason << ")\n";
  }
  out << "max form defect " << std::scientific << std::setprecision(2) << r.max_form_defect << std::defaultfloat
      << ", renormalization interval " << r.renorm_interval_used << "\n";
}

void print_verify(std::ostream& out, const SimConfig& c, const VerifyReport& v) {
  out << "verdict: " << to_string(v.verdict) << "\n";
  out << "  " << v.details << "\n";
  out << "  predicted zeros " << big(v.prediction.zero_count_real) << " (real), simulated zero cluster ";
  if (v.result.zero_cluster.conclusive) {
    out << v.result.zero_cluster.size() << " (real)\n";
  } else {
    out << "inconclusive\n";
  }
  if (!v.lambda_hat.empty()) {
    out << "  lyapunov vector";
    for (double x : v.lambda_hat) out << " " << fixed(x);
    out << "\n";
  }
  out << c.form.name() << "  " << c.rep.to_string() << "\n";
  out << "  " << std::right << std::setw(4) << "i" << std::setw(14) << "simulated" << std::setw(14)
      << "predicted" << std::setw(14) << "tolerance"
      << "\n";
  for (std::size_t i = 0; i < v.result.exponents.size(); ++i) {
    out << "  " << std::setw(4) << i + 1 << std::setw(14) << fixed(v.result.exponents[i]);
    out << std::setw(14) << (i < v.predicted_exponents.size() ? fixed(v.predicted_exponents[i]) : "-");
    out << std::setw(14) << (i < v.tolerance.size() ? fixed(v.tolerance[i]) : "-") << "\n";
  }
}

void dump_trials(const std::string& path, const LyapunovResult& r) {
  if (path.empty()) return;
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open '" + path + "' for writing");
  write_trials_csv(os, r);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit_json(std::ostream& out, const OutputRecord& rec) { out << to_json(rec).dump(2) << "\n"; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"zero Lyapunov exponents of random cocycles in Hodge-admissible groups", "lyapzero"};
  app.require_subcommand(1);

  auto* predict_cmd = app.add_subcommand("predict", "restricted weights and zero-exponent prediction");
  add_group_options(predict_cmd, o.group);
  add_format_option(predict_cmd, o.format);

  auto* classify_cmd = app.add_subcommand("classify", "table of Hodge-admissible pairs");
  classify_cmd->add_option("--max-dim", o.max_dim, "largest real dimension")->required();
  add_format_option(classify_cmd, o.format);

  auto* simulate_cmd = app.add_subcommand("simulate", "estimate a Lyapunov spectrum");
  add_group_options(simulate_cmd, o.group);
  add_sim_options(simulate_cmd, o.sim);
  add_format_option(simulate_cmd, o.format);

  auto* verify_cmd = app.add_subcommand("verify", "simulate and compare with the prediction");
  add_group_options(verify_cmd, o.group);
  add_sim_options(verify_cmd, o.sim);
  add_format_option(verify_cmd, o.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool json = o.format == "json";
  const auto t0 = std::chrono::steady_clock::now();
  OutputRecord rec;
  try {
    if (*predict_cmd) {
      const RealFormSpec form = resolve_form(o.group);
      const RepSpec rep = resolve_rep(o.group);
      check_coherent(form, rep);
      const SpectrumPrediction p = predict(form, rep);
      rec.command = "predict";
      rec.inputs = group_inputs(o.group);
      rec.payload = to_json(p);
      rec.provenance = {{"seed", nullptr}, {"parameters", Json::object()}, {"wall_clock_seconds", seconds_since(t0)}};
      if (json) {
        emit_json(out, rec);
      } else {
        print_prediction(out, p);
      }
      return kExitOk;
    }
    if (*classify_cmd) {
      const auto rows = classification_table(o.max_dim);
      rec.command = "classify";
      rec.inputs = {{"max_dim_real", o.max_dim}};
      Json list = Json::array();
      for (const auto& r : rows) list.push_back(to_json(r));
      rec.payload = {{"rows", list}};
      rec.provenance = {{"seed", nullptr}, {"parameters", Json::object()}, {"wall_clock_seconds", seconds_since(t0)}};
      if (json) {
        emit_json(out, rec);
      } else {
        print_table(out, rows, o.max_dim);
      }
      return kExitOk;
    }

    const SimConfig config = resolve_config(o);
    check_coherent(config.form, config.rep);
    rec.inputs = group_inputs(o.group);
    rec.inputs["seed"] = config.master_seed;
    rec.inputs["parameters"] = sim_parameters(config);
    if (*simulate_cmd) {
      const LyapunovResult r = lyapunov_spectrum(config);
      dump_trials(o.sim.dump_trials, r);
      rec.command = "simulate";
      rec.payload = to_json(r);
      rec.provenance = {{"seed", config.master_seed},
                        {"parameters", sim_parameters(config)},
                        {"wall_clock_seconds", seconds_since(t0)}};
      if (json) {
        emit_json(out, rec);
      } else {
        print_result(out, config, r);
      }
      return kExitOk;
    }

    const VerifyReport v = verify_prediction(config, predict(config.form, config.rep));
    dump_trials(o.sim.dump_trials, v.result);
    rec.command = "verify";
    rec.payload = to_json(v);
    rec.provenance = {{"seed", config.master_seed},
                      {"parameters", sim_parameters(config)},
                      {"wall_clock_seconds", seconds_since(t0)}};
    if (json) {
      emit_json(out, rec);
    } else {
      print_verify(out, config, v);
    }
    switch (v.verdict) {
      case Verdict::Match: return kExitOk;
      case Verdict::Mismatch: return kExitMismatch;
      case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitFailure;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ParameterError& e) {
    err << "incoherent request: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace lyapzero
