#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rulingsim/algorithms.hpp"

namespace rulingsim {

inline constexpr int kResultSchemaVersion = 1;

nlohmann::ordered_json to_json(const RulingSetResult& r);
nlohmann::ordered_json to_json(const PhaseRecord& p);

/// Canonical text of a result: 2-space indented JSON plus a trailing newline.
std::string dump_result(const RulingSetResult& r);

/// One JSON object per line per phase record.
void write_trace_jsonl(const std::vector<PhaseRecord>& phases, std::ostream& out);

/// Reads the "S" array of a result document. Throws InputError if missing
/// or malformed, or if the schema version is unsupported.
std::vector<NodeId> read_result_set(std::istream& in);

}  // namespace rulingsim
