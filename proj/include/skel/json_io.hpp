#ifndef SKEL_JSON_IO_HPP_
#define SKEL_JSON_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "skel/predicates.hpp"
#include "skel/run_model.hpp"
#include "skel/simulator.hpp"
#include "skel/types.hpp"

namespace skel {

using Json = nlohmann::ordered_json;

/// A run plus optional simulation inputs, as stored in scenario files.
struct Scenario {
  RunSpec run;
  std::optional<std::vector<Value>> proposals;
  std::optional<int> k;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Writers. Round graphs are serialized without self-loops (they are
/// mandatory anyway); field order is fixed so equal values render to
/// identical bytes.
Json json_of(const RunSpec& run);
Json json_of(const Scenario& scenario);
Json json_of(const Trace& trace);
Json json_of(const PredicateReport& report);
Json json_of(const CheckResult& check);
Json json_of(const VerifierReport& report);

/// Readers. Self-loops are inserted automatically; an edge listed twice in
/// the same graph is rejected. All validation errors throw Error.
RunSpec run_from_json(const Json& j);
Scenario scenario_from_json(const Json& j);
Trace trace_from_json(const Json& j);

/// Canonical rendering: two-space indent, trailing newline.
std::string render_json(const Json& j);

Scenario load_scenario(const std::string& path);
Trace load_trace(const std::string& path);
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace skel

#endif  // SKEL_JSON_IO_HPP_
