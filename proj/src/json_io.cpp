#include "skel/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <utility>

namespace skel {

namespace {

Json json_of_edges(const RoundGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    if (e.from == e.to) continue;
    edges.push_back(Json::array({e.from, e.to}));
  }
  return edges;
}

Json json_of(const ApproxGraph& g) {
  Json j = Json::object();
  j["vertices"] = g.vertices;
  Json edges = Json::array();
  for (const auto& [edge, label] : g.labeled_edges) {
    edges.push_back(Json::array({edge.from, edge.to, label}));
  }
  j["edges"] = std::move(edges);
  return j;
}

const char* tag_name(MsgTag tag) {
  return tag == MsgTag::decide ? "decide" : "prop";
}

const char* via_name(DecisionVia via) {
  return via == DecisionVia::adopted ? "adopted" : "detected";
}

Json json_of(const Decision& d) {
  Json j = Json::object();
  j["value"] = d.value;
  j["round"] = d.round;
  j["via"] = via_name(d.via);
  return j;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw Error("expected an object with field \"" + std::string(key) + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw Error("missing field \"" + std::string(key) + "\"");
  return *it;
}

long long int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw Error("field \"" + std::string(key) + "\" must be an integer");
  }
  return v.get<long long>();
}

bool bool_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) {
    throw Error("field \"" + std::string(key) + "\" must be a boolean");
  }
  return v.get<bool>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) {
    throw Error("field \"" + std::string(key) + "\" must be a string");
  }
  return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) {
    throw Error("field \"" + std::string(key) + "\" must be an array");
  }
  return v;
}

long long int_element(const Json& j, std::size_t i, const char* what) {
  if (!j.at(i).is_number_integer()) {
    throw Error(std::string(what) + " entries must be integers");
  }
  return j.at(i).get<long long>();
}

// One round graph from a JSON edge list: self-loops are implied, a repeated
// pair is rejected.
RoundGraph graph_from_json(int n, const Json& j, const char* what) {
  if (!j.is_array()) {
    throw Error(std::string(what) + " must be an array of [from, to] pairs");
  }
  std::set<Edge> seen;
  for (const Json& entry : j) {
    if (!entry.is_array() || entry.size() != 2) {
      throw Error(std::string(what) + " entries must be [from, to] pairs");
    }
    const Edge e{static_cast<ProcessId>(int_element(entry, 0, what)),
                 static_cast<ProcessId>(int_element(entry, 1, what))};
    if (!seen.insert(e).second) {
      throw Error(std::string(what) + ": duplicate edge (" +
                  std::to_string(e.from) + " -> " + std::to_string(e.to) + ")");
    }
  }
  std::vector<Edge> edges(seen.begin(), seen.end());
  for (ProcessId p = 0; p < n; ++p) edges.push_back({p, p});
  return validate_round_graph(RoundGraph(n, std::move(edges)));
}

ApproxGraph approx_from_json(const Json& j) {
  ApproxGraph g;
  for (const Json& v : array_field(j, "vertices")) {
    if (!v.is_number_integer()) throw Error("vertices entries must be integers");
    g.vertices.push_back(v.get<ProcessId>());
  }
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()),
                   g.vertices.end());
  for (const Json& entry : array_field(j, "edges")) {
    if (!entry.is_array() || entry.size() != 3) {
      throw Error("labeled edges must be [from, to, label] triples");
    }
    const Edge e{static_cast<ProcessId>(int_element(entry, 0, "labeled edge")),
                 static_cast<ProcessId>(int_element(entry, 1, "labeled edge"))};
    const Round label = static_cast<Round>(int_element(entry, 2, "labeled edge"));
    if (!g.labeled_edges.emplace(e, label).second) {
      throw Error("duplicate labeled edge (" + std::to_string(e.from) + " -> " +
                  std::to_string(e.to) + ")");
    }
  }
  return g;
}

Decision decision_from_json(const Json& j) {
  Decision d;
  d.value = int_field(j, "value");
  d.round = static_cast<Round>(int_field(j, "round"));
  const std::string via = string_field(j, "via");
  if (via == "detected") {
    d.via = DecisionVia::detected;
  } else if (via == "adopted") {
    d.via = DecisionVia::adopted;
  } else {
    throw Error("unknown decision kind \"" + via + "\"");
  }
  return d;
}

std::vector<Value> proposals_from_json(const Json& j, int n) {
  if (!j.is_array()) throw Error("proposals must be an array");
  if (static_cast<int>(j.size()) != n) {
    throw Error("expected " + std::to_string(n) + " proposals, got " +
                std::to_string(j.size()));
  }
  std::vector<Value> proposals;
  for (const Json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw Error("proposals must be non-negative integers");
    }
    proposals.push_back(v.get<Value>());
  }
  return proposals;
}

}  // namespace

Json json_of(const RunSpec& run) {
  Json j = Json::object();
  j["n"] = run.n;
  Json prefix = Json::array();
  for (const RoundGraph& g : run.prefix) prefix.push_back(json_of_edges(g));
  j["prefix"] = std::move(prefix);
  j["tail"] = json_of_edges(run.tail);
  return j;
}

Json json_of(const Scenario& scenario) {
  Json j = json_of(scenario.run);
  if (scenario.proposals.has_value()) j["proposals"] = *scenario.proposals;
  if (scenario.k.has_value()) j["k"] = *scenario.k;
  return j;
}

Json json_of(const Trace& trace) {
  Json j = Json::object();
  j["run"] = json_of(trace.run);
  j["proposals"] = trace.proposals;
  Json rounds = Json::array();
  for (const RoundRecord& rec : trace.rounds) {
    Json jr = Json::object();
    jr["r"] = rec.r;
    Json messages = Json::array();
    for (const auto& [key, msg] : rec.messages) {
      Json jm = Json::object();
      jm["from"] = key.first;
      jm["to"] = key.second;
      jm["tag"] = tag_name(msg.tag);
      jm["x"] = msg.x;
      jm["graph"] = json_of(msg.graph);
      messages.push_back(std::move(jm));
    }
    jr["messages"] = std::move(messages);
    Json states = Json::array();
    for (const ProcessState& s : rec.states_after) {
      Json js = Json::object();
      js["id"] = s.id;
      js["pt"] = s.pt;
      js["x"] = s.x;
      js["decided"] = s.decided;
      js["graph"] = json_of(s.graph);
      js["decision"] = s.decision.has_value() ? json_of(*s.decision) : Json();
      states.push_back(std::move(js));
    }
    jr["states"] = std::move(states);
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  Json decisions = Json::array();
  for (const auto& [p, d] : trace.decisions) {
    Json jd = Json::object();
    jd["process"] = p;
    jd["value"] = d.value;
    jd["round"] = d.round;
    jd["via"] = via_name(d.via);
    decisions.push_back(std::move(jd));
  }
  j["decisions"] = std::move(decisions);
  return j;
}

Json json_of(const PredicateReport& report) {
  Json j = Json::object();
  j["k"] = report.k;
  j["holds"] = report.holds;
  if (report.holds) {
    Json witnesses = Json::array();
    for (const auto& [subset, source] : report.witness_sources) {
      Json w = Json::object();
      w["subset"] = subset;
      w["source"] = source;
      witnesses.push_back(std::move(w));
    }
    j["witness_sources"] = std::move(witnesses);
  } else {
    j["violating_subset"] = *report.violating_subset;
  }
  return j;
}

Json json_of(const CheckResult& check) {
  Json j = Json::object();
  j["name"] = check.name;
  j["passed"] = check.passed;
  j["detail"] = check.detail;
  return j;
}

Json json_of(const VerifierReport& report) {
  Json j = Json::object();
  j["passed"] = report.passed;
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) checks.push_back(json_of(c));
  j["checks"] = std::move(checks);
  return j;
}

RunSpec run_from_json(const Json& j) {
  RunSpec run;
  const long long n = int_field(j, "n");
  if (n < 1) throw Error("n must be at least 1");
  run.n = static_cast<int>(n);
  const Json& prefix = array_field(j, "prefix");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    run.prefix.push_back(graph_from_json(
        run.n, prefix.at(i),
        ("prefix round " + std::to_string(i + 1)).c_str()));
  }
  run.tail = graph_from_json(run.n, field(j, "tail"), "tail");
  return validate_run_spec(std::move(run));
}

Scenario scenario_from_json(const Json& j) {
  Scenario scenario;
  scenario.run = run_from_json(j);
  if (j.contains("proposals")) {
    scenario.proposals = proposals_from_json(j.at("proposals"), scenario.run.n);
  }
  if (j.contains("k")) {
    const long long k = int_field(j, "k");
    if (k < 1) throw Error("k must be at least 1");
    scenario.k = static_cast<int>(k);
  }
  return scenario;
}

Trace trace_from_json(const Json& j) {
  Trace trace;
  trace.run = run_from_json(field(j, "run"));
  const int n = trace.run.n;
  trace.proposals = proposals_from_json(field(j, "proposals"), n);
  for (const Json& jr : array_field(j, "rounds")) {
    RoundRecord rec;
    rec.r = static_cast<Round>(int_field(jr, "r"));
    for (const Json& jm : array_field(jr, "messages")) {
      Message msg;
      const auto from = static_cast<ProcessId>(int_field(jm, "from"));
      const auto to = static_cast<ProcessId>(int_field(jm, "to"));
      const std::string tag = string_field(jm, "tag");
      if (tag == "prop") {
        msg.tag = MsgTag::prop;
      } else if (tag == "decide") {
        msg.tag = MsgTag::decide;
      } else {
        throw Error("unknown message tag \"" + tag + "\"");
      }
      msg.x = int_field(jm, "x");
      msg.graph = approx_from_json(field(jm, "graph"));
      msg.sender = from;
      if (!rec.messages.emplace(std::make_pair(from, to), std::move(msg)).second) {
        throw Error("duplicate message (" + std::to_string(from) + " -> " +
                    std::to_string(to) + ") in round " + std::to_string(rec.r));
      }
    }
    const Json& states = array_field(jr, "states");
    if (static_cast<int>(states.size()) != n) {
      throw Error("round " + std::to_string(rec.r) + " has " +
                  std::to_string(states.size()) + " states, expected " +
                  std::to_string(n));
    }
    for (int p = 0; p < n; ++p) {
      const Json& js = states.at(static_cast<std::size_t>(p));
      ProcessState s;
      s.id = static_cast<ProcessId>(int_field(js, "id"));
      if (s.id != p) {
        throw Error("round " + std::to_string(rec.r) +
                    ": states must be listed in process order");
      }
      s.n = n;
      for (const Json& q : array_field(js, "pt")) {
        if (!q.is_number_integer()) throw Error("pt entries must be integers");
        s.pt.push_back(q.get<ProcessId>());
      }
      s.x = int_field(js, "x");
      s.decided = bool_field(js, "decided");
      s.graph = approx_from_json(field(js, "graph"));
      const Json& decision = field(js, "decision");
      if (!decision.is_null()) s.decision = decision_from_json(decision);
      rec.states_after.push_back(std::move(s));
    }
    trace.rounds.push_back(std::move(rec));
  }
  for (const Json& jd : array_field(j, "decisions")) {
    const auto p = static_cast<ProcessId>(int_field(jd, "process"));
    if (!trace.decisions.emplace(p, decision_from_json(jd)).second) {
      throw Error("duplicate decision entry for process " + std::to_string(p));
    }
  }
  return trace;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  const Json j = load_json(path);
  try {
    return scenario_from_json(j);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

Trace load_trace(const std::string& path) {
  const Json j = load_json(path);
  try {
    return trace_from_json(j);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << render_json(j);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace skel
