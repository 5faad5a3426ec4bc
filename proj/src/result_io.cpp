#include "rulingsim/result_io.hpp"

#include <istream>
#include <ostream>

#include "rulingsim/errors.hpp"

namespace rulingsim {

nlohmann::ordered_json to_json(const PhaseRecord& p) {
  return {{"phase", p.phase},
          {"rounds", p.rounds},
          {"s_size", p.s_size},
          {"w_size", p.w_size},
          {"max_alive_degree", p.max_alive_degree}};
}

nlohmann::ordered_json to_json(const RulingSetResult& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kResultSchemaVersion;
  j["algorithm"] = r.algorithm;
  j["seed"] = r.seed;
  j["n"] = r.node_count;
  j["S"] = r.set;
  j["beta_target"] = r.beta_target;
  j["beta_measured"] = r.beta_measured;
  j["rounds_total"] = r.rounds_total;
  auto& phases = j["phases"] = nlohmann::ordered_json::array();
  for (const auto& p : r.phases) phases.push_back(to_json(p));
  j["delta_small"] = r.delta_small;
  j["sampling_thresholds"] = r.sampling_thresholds;
  j["delta_per_iter"] = r.delta_per_iter;
  j["thresholds"] = r.thresholds;
  j["sampling_sets"] = r.sampling_sets;
  j["degree_drop_sets"] = r.degree_drop_sets;
  j["put_aside_sets"] = r.put_aside_sets;
  j["cleanup_sets"] = r.cleanup_sets;
  j["final_mis"] = r.final_mis;
  j["cleanup_schedule_overrun"] = r.cleanup_schedule_overrun;
  return j;
}

std::string dump_result(const RulingSetResult& r) { return to_json(r).dump(2) + "\n"; }

void write_trace_jsonl(const std::vector<PhaseRecord>& phases, std::ostream& out) {
  for (const auto& p : phases) out << to_json(p).dump() << '\n';
}

std::vector<NodeId> read_result_set(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("result file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("S") || !j["S"].is_array()) throw InputError("result file has no \"S\" array");
  if (j.contains("schema_version") && j["schema_version"] != kResultSchemaVersion) {
    throw InputError("unsupported result schema_version " + j["schema_version"].dump());
  }
  std::vector<NodeId> s;
  for (const auto& x : j["S"]) {
    if (!x.is_number_unsigned()) throw InputError("\"S\" must contain non-negative integers");
    s.push_back(x.get<NodeId>());
  }
  return s;
}

}  // namespace rulingsim
