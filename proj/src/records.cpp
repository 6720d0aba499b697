#include "lyapzero/records.hpp"

#include "lyapzero/errors.hpp"

#include <limits>

namespace lyapzero {

namespace {

std::string family_tag(Family f) {
  switch (f) {
    case Family::SU: return "su";
    case Family::SOOdd: return "so-odd";
    case Family::SOEven: return "so-even";
    case Family::SOStar: return "so-star";
    case Family::Sp: return "sp";
  }
  return "?";
}

Family family_from_tag(const std::string& s) {
  if (s == "su") return Family::SU;
  if (s == "so-odd") return Family::SOOdd;
  if (s == "so-even") return Family::SOEven;
  if (s == "so-star") return Family::SOStar;
  if (s == "sp") return Family::Sp;
  throw ParameterError("unknown family tag '" + s + "'");
}

Json pair_to_json(const std::optional<SignaturePair>& s) {
  if (!s) return nullptr;
  return {{"positive", big_to_json(s->positive)}, {"negative", big_to_json(s->negative)}};
}

std::optional<SignaturePair> pair_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return SignaturePair{big_from_json(j.at("positive")), big_from_json(j.at("negative"))};
}

Json cluster_to_json(const ZeroCluster& z) {
  return {{"conclusive", z.conclusive},
          {"first", z.first},
          {"last", z.last},
          {"size_real", z.size()},
          {"reason", z.reason}};
}

ZeroCluster cluster_from_json(const Json& j) {
  ZeroCluster z;
  z.conclusive = j.at("conclusive").get<bool>();
  z.first = j.at("first").get<std::size_t>();
  z.last = j.at("last").get<std::size_t>();
  z.reason = j.at("reason").get<std::string>();
  return z;
}

}  // namespace

Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw ParameterError("expected an integer or decimal string, got " + j.dump());
}

Json to_json(const Weight& w) {
  return {{"twice", w.twice_coords()},
          {"basis", w.basis() == Basis::Absolute ? "absolute" : "restricted"},
          {"symbol", w.to_string()}};
}

Weight weight_from_json(const Json& j) {
  const std::string basis = j.at("basis").get<std::string>();
  return Weight(j.at("twice").get<std::vector<int>>(),
                basis == "absolute" ? Basis::Absolute : Basis::Restricted);
}

Json to_json(const RealFormSpec& f) {
  Json j = {{"family", family_tag(f.family)}, {"name", f.name()}};
  switch (f.family) {
    case Family::SU:
      j["p"] = f.p;
      j["q"] = f.q;
      j["swapped"] = f.swapped;
      break;
    case Family::SOOdd:
      j["n"] = f.n;
      j["m"] = 2 * f.n - 1;
      break;
    case Family::SOEven:
      j["n"] = f.n;
      j["m"] = 2 * f.n - 2;
      break;
    case Family::SOStar: j["n"] = f.n; break;
    case Family::Sp: j["g"] = f.g; break;
  }
  return j;
}

RealFormSpec real_form_from_json(const Json& j) {
  switch (family_from_tag(j.at("family").get<std::string>())) {
    case Family::SU: {
      RealFormSpec f = RealFormSpec::su(j.at("p").get<int>(), j.at("q").get<int>());
      f.swapped = j.value("swapped", false);
      return f;
    }
    case Family::SOOdd: return RealFormSpec::so_odd(j.at("n").get<int>());
    case Family::SOEven: return RealFormSpec::so_even(j.at("n").get<int>());
    case Family::SOStar: return RealFormSpec::so_star(j.at("n").get<int>());
    case Family::Sp: return RealFormSpec::sp(j.at("g").get<int>());
  }
  throw ParameterError("bad real form record");
}

Json to_json(const SpectrumPrediction& p) {
  Json nonzero = Json::array();
  for (const auto& e : p.nonzero_structure) {
    nonzero.push_back({{"weight", to_json(e.weight)},
                       {"symbol", e.weight.to_string()},
                       {"multiplicity_real", big_to_json(e.real_multiplicity)}});
  }
  Json sigma = nullptr;
  if (p.sigma_rank_bound) {
    sigma = {{"total", big_to_json(p.sigma_rank_bound->total)},
             {"per_block", p.sigma_rank_bound->per_block
                               ? big_to_json(*p.sigma_rank_bound->per_block)
                               : Json(nullptr)}};
  }
  return {{"form", to_json(p.form)},
          {"rep", p.rep.to_string()},
          {"count_factor", p.count_factor},
          {"real_rank", p.real_rank},
          {"relative_root_system", p.relative_root_system},
          {"real_dim", big_to_json(p.real_dim)},
          {"zero_count_real", big_to_json(p.zero_count_real)},
          {"zero_count_complex", big_to_json(p.zero_count_complex())},
          {"nonzero_structure", nonzero},
          {"signature_complex", pair_to_json(p.signature)},
          {"definite_split_real", pair_to_json(p.definite_split)},
          {"sigma_rank_bound", sigma},
          {"hodge_admissible", p.hodge.admissible},
          {"hodge_reason", p.hodge.reason}};
}

SpectrumPrediction prediction_from_json(const Json& j) {
  SpectrumPrediction p;
  p.form = real_form_from_json(j.at("form"));
  p.rep = RepSpec::parse(j.at("rep").get<std::string>());
  p.count_factor = j.at("count_factor").get<int>();
  p.real_rank = j.at("real_rank").get<int>();
  p.relative_root_system = j.at("relative_root_system").get<std::string>();
  p.real_dim = big_from_json(j.at("real_dim"));
  p.zero_count_real = big_from_json(j.at("zero_count_real"));
  for (const auto& e : j.at("nonzero_structure")) {
    p.nonzero_structure.push_back(
        {weight_from_json(e.at("weight")), big_from_json(e.at("multiplicity_real"))});
  }
  p.signature = pair_from_json(j.at("signature_complex"));
  p.definite_split = pair_from_json(j.at("definite_split_real"));
  if (const Json& s = j.at("sigma_rank_bound"); !s.is_null()) {
    SigmaRankBound b;
    b.total = big_from_json(s.at("total"));
    if (!s.at("per_block").is_null()) b.per_block = big_from_json(s.at("per_block"));
    p.sigma_rank_bound = b;
  }
  p.hodge.admissible = j.at("hodge_admissible").get<bool>();
  p.hodge.reason = j.at("hodge_reason").get<std::string>();
  return p;
}

Json to_json(const LyapunovResult& r) {
  return {{"exponents_real", r.exponents},
          {"stderr", r.stderr_},
          {"standard_exponents_real", r.standard_exponents},
          {"standard_stderr", r.standard_stderr},
          {"zero_cluster", cluster_to_json(r.zero_cluster)},
          {"per_trial", r.per_trial},
          {"max_form_defect", r.max_form_defect},
          {"renorm_interval_used", r.renorm_interval_used}};
}

LyapunovResult lyapunov_result_from_json(const Json& j) {
  LyapunovResult r;
  r.exponents = j.at("exponents_real").get<std::vector<double>>();
  r.stderr_ = j.at("stderr").get<std::vector<double>>();
  r.standard_exponents = j.at("standard_exponents_real").get<std::vector<double>>();
  r.standard_stderr = j.at("standard_stderr").get<std::vector<double>>();
  r.zero_cluster = cluster_from_json(j.at("zero_cluster"));
  r.per_trial = j.at("per_trial").get<std::vector<std::vector<double>>>();
  r.max_form_defect = j.at("max_form_defect").get<double>();
  r.renorm_interval_used = j.at("renorm_interval_used").get<int>();
  return r;
}

Json to_json(const SimConfig& c) {
  return {{"form", to_json(c.form)},
          {"rep", c.rep.to_string()},
          {"steps", c.steps},
          {"burn_in", c.burn_in},
          {"trials", c.trials},
          {"renorm_interval", c.renorm_interval},
          {"scale", c.scale},
          {"master_seed", c.master_seed},
          {"zero_threshold", c.zero_threshold},
          {"realify", c.realify}};
}

SimConfig sim_config_from_json(const Json& j) {
  SimConfig c;
  c.form = real_form_from_json(j.at("form"));
  c.rep = RepSpec::parse(j.at("rep").get<std::string>());
  c.steps = j.at("steps").get<long>();
  c.burn_in = j.at("burn_in").get<long>();
  c.trials = j.at("trials").get<int>();
  c.renorm_interval = j.at("renorm_interval").get<int>();
  c.scale = j.at("scale").get<double>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.zero_threshold = j.at("zero_threshold").get<double>();
  c.realify = j.value("realify", false);
  return c;
}

Json to_json(const VerifyReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"details", r.details},
          {"prediction", to_json(r.prediction)},
          {"result", to_json(r.result)},
          {"lambda_hat", r.lambda_hat},
          {"predicted_exponents_real", r.predicted_exponents},
          {"tolerance", r.tolerance},
          {"simulated_groups_real", r.simulated_groups},
          {"predicted_groups_real", r.predicted_groups}};
}

VerifyReport verify_report_from_json(const Json& j) {
  VerifyReport r;
  const std::string v = j.at("verdict").get<std::string>();
  if (v == "match") {
    r.verdict = Verdict::Match;
  } else if (v == "mismatch") {
    r.verdict = Verdict::Mismatch;
  } else if (v == "inconclusive") {
    r.verdict = Verdict::Inconclusive;
  } else {
    throw ParameterError("unknown verdict '" + v + "'");
  }
  r.details = j.at("details").get<std::string>();
  r.prediction = prediction_from_json(j.at("prediction"));
  r.result = lyapunov_result_from_json(j.at("result"));
  r.lambda_hat = j.at("lambda_hat").get<std::vector<double>>();
  r.predicted_exponents = j.at("predicted_exponents_real").get<std::vector<double>>();
  r.tolerance = j.at("tolerance").get<std::vector<double>>();
  r.simulated_groups = j.at("simulated_groups_real").get<std::vector<long>>();
  r.predicted_groups = j.at("predicted_groups_real").get<std::vector<long>>();
  return r;
}

Json to_json(const ExteriorConsistency& e) {
  return {{"k", e.k},
          {"subset_sums_real", e.subset_sums},
          {"subset_stderr", e.subset_stderr},
          {"direct_real", e.direct},
          {"direct_stderr", e.direct_stderr},
          {"tolerance", e.tolerance},
          {"max_deviation", e.max_deviation},
          {"consistent", e.consistent}};
}

Json to_json(const OutputRecord& r) {
  return {{"schema_version", r.schema_version},
          {"command", r.command},
          {"inputs", r.inputs},
          {"payload", r.payload},
          {"provenance", r.provenance}};
}

OutputRecord output_record_from_json(const Json& j) {
  OutputRecord r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) {
    throw ParameterError("unsupported schema version " + std::to_string(r.schema_version));
  }
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.payload = j.at("payload");
  r.provenance = j.at("provenance");
  return r;
}

}  // namespace lyapzero
