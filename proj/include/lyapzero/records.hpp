#pragma once

// Versioned JSON schema for predictions, simulation results and CLI output.
// Count fields carry their convention in the name: *_real or *_complex.

#include "lyapzero/prediction.hpp"
#include "lyapzero/simulate.hpp"

#include "json.hpp"

#include <string>

namespace lyapzero {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// BigInt as a JSON integer when it fits in 64 bits, otherwise a decimal string.
Json big_to_json(const BigInt& v);
BigInt big_from_json(const Json& j);

Json to_json(const Weight& w);
Weight weight_from_json(const Json& j);

Json to_json(const RealFormSpec& f);
RealFormSpec real_form_from_json(const Json& j);

Json to_json(const SpectrumPrediction& p);
SpectrumPrediction prediction_from_json(const Json& j);

Json to_json(const LyapunovResult& r);
LyapunovResult lyapunov_result_from_json(const Json& j);

Json to_json(const SimConfig& c);
SimConfig sim_config_from_json(const Json& j);

Json to_json(const VerifyReport& r);
VerifyReport verify_report_from_json(const Json& j);

Json to_json(const ExteriorConsistency& e);

struct OutputRecord {
  int schema_version = kSchemaVersion;
  std::string command;
  Json inputs = Json::object();
  Json payload = Json::object();
  Json provenance = Json::object();  // seed, parameters, wall_clock_seconds

  bool operator==(const OutputRecord&) const = default;
};

Json to_json(const OutputRecord& r);
OutputRecord output_record_from_json(const Json& j);

}  // namespace lyapzero
