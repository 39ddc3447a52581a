#include "skel/simulator.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "skel/digraph.hpp"
#include "skel/predicates.hpp"

namespace skel {

namespace {

std::string at(ProcessId p, Round r) {
  return "process " + std::to_string(p) + ", round " + std::to_string(r);
}

bool all_decided(const std::vector<ProcessState>& states) {
  return std::all_of(states.begin(), states.end(),
                     [](const ProcessState& s) { return s.decided; });
}

void require_recorded(const Trace& trace) {
  if (trace.rounds.empty()) {
    throw Error("verifier: trace has no recorded rounds");
  }
  const int n = trace.run.n;
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const RoundRecord& rec = trace.rounds[i];
    if (rec.r != static_cast<Round>(i) + 1) {
      throw Error("verifier: round records are not consecutive from 1");
    }
    if (static_cast<int>(rec.states_after.size()) != n) {
      throw Error("verifier: round " + std::to_string(rec.r) +
                  " has states for " + std::to_string(rec.states_after.size()) +
                  " of " + std::to_string(n) + " processes");
    }
  }
}

// Everything the verifiers compare against, recomputed from the run alone.
// Process states are never trusted as ground truth.
struct GroundTruth {
  Round last = 0;
  std::vector<RoundGraph> skeletons;                     // [r-1]
  std::vector<std::vector<std::vector<ProcessId>>> pts;  // [r-1][p]
  std::vector<SccPartition> comps;                       // [r-1]
  std::vector<std::vector<std::vector<int>>> dist;       // [r-1][a][b], -1 if unreachable
  RoundGraph stable;
  SccPartition stable_comps;
};

std::vector<std::vector<int>> bfs_distances(const RoundGraph& g) {
  const int n = g.n();
  std::vector<std::vector<ProcessId>> out(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    out[static_cast<std::size_t>(e.from)].push_back(e.to);
  }
  std::vector<std::vector<int>> dist(
      static_cast<std::size_t>(n),
      std::vector<int>(static_cast<std::size_t>(n), -1));
  for (ProcessId src = 0; src < n; ++src) {
    auto& d = dist[static_cast<std::size_t>(src)];
    d[static_cast<std::size_t>(src)] = 0;
    std::vector<ProcessId> frontier{src};
    while (!frontier.empty()) {
      std::vector<ProcessId> next;
      for (ProcessId u : frontier) {
        for (ProcessId v : out[static_cast<std::size_t>(u)]) {
          if (d[static_cast<std::size_t>(v)] == -1) {
            d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
            next.push_back(v);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return dist;
}

GroundTruth ground_truth(const RunSpec& run, Round last) {
  GroundTruth gt;
  gt.last = last;
  const int n = run.n;
  for (Round r = 1; r <= last; ++r) {
    const RoundGraph sk = skeleton_at(run, r).graph;
    std::vector<std::vector<ProcessId>> pt(static_cast<std::size_t>(n));
    for (ProcessId p = 0; p < n; ++p) {
      pt[static_cast<std::size_t>(p)] = sk.in_neighbors(p);
    }
    gt.pts.push_back(std::move(pt));
    gt.comps.push_back(scc_partition(to_digraph(sk)));
    gt.dist.push_back(bfs_distances(sk));
    gt.skeletons.push_back(sk);
  }
  gt.stable = stable_skeleton(run).skeleton.graph;
  gt.stable_comps = scc_partition(to_digraph(gt.stable));
  return gt;
}

// Collects named verdicts; only the first counterexample per check is kept.
class CheckSet {
 public:
  explicit CheckSet(std::vector<std::string> names) {
    for (auto& name : names) {
      checks_.push_back(CheckResult{std::move(name), true, ""});
    }
  }

  void fail(const std::string& name, std::string detail) {
    CheckResult& c = lookup(name);
    if (c.passed) {
      c.passed = false;
      c.detail = std::move(detail);
    }
  }

  bool still_passing(const std::string& name) { return lookup(name).passed; }

  VerifierReport report() && {
    VerifierReport out;
    out.checks = std::move(checks_);
    out.passed = std::all_of(out.checks.begin(), out.checks.end(),
                             [](const CheckResult& c) { return c.passed; });
    return out;
  }

 private:
  CheckResult& lookup(const std::string& name) {
    for (CheckResult& c : checks_) {
      if (c.name == name) return c;
    }
    throw Error("verifier: unknown check " + name);
  }

  std::vector<CheckResult> checks_;
};

std::string show_edge(const Edge& e) {
  return "(" + std::to_string(e.from) + " -> " + std::to_string(e.to) + ")";
}

}  // namespace

const CheckResult* VerifierReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Round default_horizon(const RunSpec& run) {
  return run.prefix_len() + 3 * run.n + 1;
}

Trace execute(const RunSpec& run, const std::vector<Value>& proposals,
              SimOptions options) {
  const RunSpec checked = validate_run_spec(run);
  const int n = checked.n;
  if (static_cast<int>(proposals.size()) != n) {
    throw Error("execute: expected " + std::to_string(n) + " proposals, got " +
                std::to_string(proposals.size()));
  }
  const Round horizon = options.horizon.value_or(default_horizon(checked));
  if (horizon < 1) throw Error("execute: horizon must be at least 1");

  std::vector<ProcessState> states;
  states.reserve(static_cast<std::size_t>(n));
  for (ProcessId p = 0; p < n; ++p) {
    states.push_back(init_state(p, proposals[static_cast<std::size_t>(p)], n));
  }

  Trace trace;
  trace.run = checked;
  trace.proposals = proposals;

  for (Round r = 1; r <= horizon; ++r) {
    if (all_decided(states)) break;

    // All sends happen before any delivery: the round barrier.
    std::vector<Message> sends;
    sends.reserve(static_cast<std::size_t>(n));
    for (ProcessId p = 0; p < n; ++p) {
      sends.push_back(send_fn(states[static_cast<std::size_t>(p)], r));
    }

    const RoundGraph& graph = round_graph(checked, r);
    std::vector<Inbox> inboxes(static_cast<std::size_t>(n));
    for (const Edge& e : graph.edges()) {
      inboxes[static_cast<std::size_t>(e.to)].emplace(
          e.from, sends[static_cast<std::size_t>(e.from)]);
    }

    std::vector<ProcessState> next(static_cast<std::size_t>(n));
    if (options.policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
      for (int p = 0; p < n; ++p) {
        next[static_cast<std::size_t>(p)] =
            transition_fn(states[static_cast<std::size_t>(p)], r,
                          inboxes[static_cast<std::size_t>(p)]);
      }
    } else {
      for (int p = 0; p < n; ++p) {
        next[static_cast<std::size_t>(p)] =
            transition_fn(states[static_cast<std::size_t>(p)], r,
                          inboxes[static_cast<std::size_t>(p)]);
      }
    }

    if (options.record_rounds) {
      RoundRecord record;
      record.r = r;
      for (const Edge& e : graph.edges()) {
        record.messages.emplace(std::make_pair(e.from, e.to),
                                sends[static_cast<std::size_t>(e.from)]);
      }
      record.states_after = next;
      trace.rounds.push_back(std::move(record));
    }
    states = std::move(next);
  }

  if (!all_decided(states)) {
    std::vector<ProcessId> undecided;
    for (ProcessId p = 0; p < n; ++p) {
      if (!states[static_cast<std::size_t>(p)].decided) undecided.push_back(p);
    }
    throw HorizonExceeded(horizon, std::move(undecided));
  }

  for (ProcessId p = 0; p < n; ++p) {
    trace.decisions.emplace(p, *states[static_cast<std::size_t>(p)].decision);
  }
  return trace;
}

CheckResult check_validity(const Trace& trace) {
  CheckResult result{"validity", true, ""};
  const std::set<Value> proposed(trace.proposals.begin(),
                                 trace.proposals.end());
  for (const auto& [p, decision] : trace.decisions) {
    if (proposed.count(decision.value) == 0) {
      result.passed = false;
      result.detail = "process " + std::to_string(p) + " decided " +
                      std::to_string(decision.value) +
                      ", which no process proposed";
      break;
    }
  }
  return result;
}

CheckResult check_k_agreement(const Trace& trace, int k) {
  if (k < 1) {
    throw Error("check_k_agreement: k must be at least 1, got " +
                std::to_string(k));
  }
  CheckResult result{"k-agreement", true, ""};
  std::set<Value> values;
  for (const auto& [p, decision] : trace.decisions) {
    values.insert(decision.value);
  }
  if (static_cast<int>(values.size()) > k) {
    result.passed = false;
    result.detail = std::to_string(values.size()) +
                    " distinct decision values, allowed " + std::to_string(k);
  }
  return result;
}

CheckResult check_termination_bound(const Trace& trace) {
  CheckResult result{"termination-bound", true, ""};
  const int n = trace.run.n;
  Round window_start = 1;
  while (!(skeleton_at(trace.run, window_start).graph ==
           skeleton_at(trace.run, window_start + n - 1).graph)) {
    ++window_start;
  }
  const Round bound = window_start + 2 * n - 1;
  for (const auto& [p, decision] : trace.decisions) {
    if (decision.round > bound) {
      result.passed = false;
      result.detail = "process " + std::to_string(p) + " decided in round " +
                      std::to_string(decision.round) + ", bound was " +
                      std::to_string(bound) + " (stability from round " +
                      std::to_string(window_start) + ")";
      break;
    }
  }
  return result;
}

VerifierReport verify_approximation(const Trace& trace) {
  require_recorded(trace);
  const RunSpec& run = trace.run;
  const int n = run.n;
  const Round last = trace.rounds.back().r;
  const GroundTruth gt = ground_truth(run, last);

  CheckSet checks({"timely-view", "path-propagation", "component-coverage",
                   "label-validity", "connected-containment",
                   "component-closure", "label-window", "merge-consistency"});

  // Timeliness at rounds past the recorded window, for labels from mutated
  // or hand-built traces.
  const auto pt_at = [&](ProcessId p, Round s) -> std::vector<ProcessId> {
    if (s <= gt.last) return gt.pts[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(p)];
    return skeleton_at(run, s).graph.in_neighbors(p);
  };

  for (const RoundRecord& rec : trace.rounds) {
    const Round r = rec.r;
    const std::size_t ri = static_cast<std::size_t>(r - 1);

    for (ProcessId p = 0; p < n; ++p) {
      const ProcessState& state = rec.states_after[static_cast<std::size_t>(p)];
      const ApproxGraph& g = state.graph;
      const std::vector<ProcessId>& true_pt =
          gt.pts[ri][static_cast<std::size_t>(p)];

      if (checks.still_passing("timely-view")) {
        if (state.pt != true_pt) {
          checks.fail("timely-view", at(p, r) + ": recorded neighborhood " +
                                         "differs from the true one");
        } else {
          for (ProcessId q = 0; q < n; ++q) {
            const bool timely =
                std::binary_search(true_pt.begin(), true_pt.end(), q);
            const std::optional<Round> label = g.label_of(q, p);
            const bool fresh_edge = label.has_value() && *label == r;
            if (timely != fresh_edge) {
              checks.fail("timely-view",
                          at(p, r) + ": edge (" + std::to_string(q) + " -> " +
                              std::to_string(p) + ") labeled with the " +
                              "current round " +
                              (timely ? "missing for a timely neighbor"
                                      : "present for a non-timely sender"));
              break;
            }
          }
        }
      }

      if (checks.still_passing("label-window")) {
        if (!g.has_vertex(p)) {
          checks.fail("label-window", at(p, r) + ": own vertex missing");
        }
        for (const auto& [edge, label] : g.labeled_edges) {
          if (label <= r - n || label > r) {
            checks.fail("label-window", at(p, r) + ": edge " + show_edge(edge) +
                                            " labeled " + std::to_string(label) +
                                            ", outside (" +
                                            std::to_string(r - n) + ", " +
                                            std::to_string(r) + "]");
            break;
          }
        }
      }

      if (checks.still_passing("label-validity")) {
        for (const auto& [edge, label] : g.labeled_edges) {
          if (label < 1) {
            checks.fail("label-validity", at(p, r) + ": edge " +
                                              show_edge(edge) + " labeled " +
                                              std::to_string(label));
            break;
          }
          const std::vector<ProcessId> pt = pt_at(edge.to, label);
          if (!std::binary_search(pt.begin(), pt.end(), edge.from)) {
            checks.fail("label-validity",
                        at(p, r) + ": edge " + show_edge(edge) + " labeled " +
                            std::to_string(label) +
                            " records a timeliness fact that never held");
            break;
          }
        }
      }

      // The graph rebuild is deterministic in the timely neighborhood and
      // the neighbors' previous graphs, so each recorded graph must equal
      // the rebuild from those inputs exactly.
      if (checks.still_passing("merge-consistency")) {
        ProcessState probe;
        probe.id = p;
        probe.n = n;
        probe.pt = true_pt;
        Inbox inbox;
        for (ProcessId q : true_pt) {
          Message msg;
          msg.sender = q;
          if (r == 1) {
            msg.graph.vertices = {q};
          } else {
            msg.graph = trace.rounds[static_cast<std::size_t>(r - 2)]
                            .states_after[static_cast<std::size_t>(q)]
                            .graph;
          }
          inbox.emplace(q, std::move(msg));
        }
        const ProcessState rebuilt =
            approximate_skeleton(std::move(probe), r, inbox);
        if (rebuilt.graph != g) {
          checks.fail("merge-consistency",
                      at(p, r) + ": recorded graph differs from the rebuild " +
                          "out of the round-" + std::to_string(r - 1) +
                          " neighbor graphs");
        }
      }

      if (r >= n && checks.still_passing("component-coverage")) {
        const SccPartition& parts = gt.comps[ri];
        const std::vector<ProcessId>& comp =
            parts.components[static_cast<std::size_t>(parts.component_of.at(p))];
        for (ProcessId member : comp) {
          if (!g.has_vertex(member)) {
            checks.fail("component-coverage",
                        at(p, r) + ": component member " +
                            std::to_string(member) + " missing from the " +
                            "approximation");
            break;
          }
        }
        for (const Edge& e : gt.skeletons[ri].edges()) {
          const bool internal =
              std::binary_search(comp.begin(), comp.end(), e.from) &&
              std::binary_search(comp.begin(), comp.end(), e.to);
          if (internal && !g.label_of(e.from, e.to).has_value()) {
            checks.fail("component-coverage",
                        at(p, r) + ": component edge " + show_edge(e) +
                            " missing from the approximation");
            break;
          }
        }
      }

      if (r >= n && checks.still_passing("component-closure")) {
        if (is_strongly_connected(unlabeled(g))) {
          for (ProcessId q : g.vertices) {
            const SccPartition& sp = gt.stable_comps;
            const std::vector<ProcessId>& comp =
                sp.components[static_cast<std::size_t>(sp.component_of.at(q))];
            for (ProcessId member : comp) {
              if (!g.has_vertex(member)) {
                checks.fail("component-closure",
                            at(p, r) + ": stable component of " +
                                std::to_string(q) + " not contained (vertex " +
                                std::to_string(member) + " missing)");
                break;
              }
            }
            for (const Edge& e : gt.stable.edges()) {
              const bool internal =
                  std::binary_search(comp.begin(), comp.end(), e.from) &&
                  std::binary_search(comp.begin(), comp.end(), e.to);
              if (internal && !g.label_of(e.from, e.to).has_value()) {
                checks.fail("component-closure",
                            at(p, r) + ": stable component edge " +
                                show_edge(e) + " missing");
                break;
              }
            }
            if (!checks.still_passing("component-closure")) break;
          }
        }
      }
    }

    // Facts about a neighborhood reach every process within path-length
    // rounds, with labels no older than the path is long.
    if (r >= n && checks.still_passing("path-propagation")) {
      const auto& dist = gt.dist[ri];
      for (ProcessId b = 0; b < n && checks.still_passing("path-propagation");
           ++b) {
        const ApproxGraph& gb =
            rec.states_after[static_cast<std::size_t>(b)].graph;
        for (ProcessId a = 0; a < n; ++a) {
          const int d = dist[static_cast<std::size_t>(a)]
                            [static_cast<std::size_t>(b)];
          if (d < 0 || d > n - 1) continue;
          bool broke = false;
          for (int len = d; len <= n - 1 && !broke; ++len) {
            const Round s = r - len;
            for (ProcessId q :
                 gt.pts[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(a)]) {
              const std::optional<Round> label = gb.label_of(q, a);
              if (!label.has_value() || *label < s || *label > r) {
                checks.fail(
                    "path-propagation",
                    at(b, r) + ": edge (" + std::to_string(q) + " -> " +
                        std::to_string(a) + ") should be present with label " +
                        "in [" + std::to_string(s) + ", " + std::to_string(r) +
                        "] (path of length " + std::to_string(len) +
                        " from " + std::to_string(a) + ")");
                broke = true;
                break;
              }
            }
          }
          if (broke) break;
        }
      }
    }

    // A strongly connected approximation of n-1 rounds later fits inside
    // the current component of its owner.
    if (checks.still_passing("connected-containment") && r + n - 1 <= last) {
      const RoundRecord& later = trace.rounds[static_cast<std::size_t>(r + n - 2)];
      for (ProcessId p = 0; p < n; ++p) {
        const ApproxGraph& g =
            later.states_after[static_cast<std::size_t>(p)].graph;
        if (!is_strongly_connected(unlabeled(g))) continue;
        const SccPartition& parts = gt.comps[ri];
        const std::vector<ProcessId>& comp =
            parts.components[static_cast<std::size_t>(parts.component_of.at(p))];
        bool failed = false;
        for (ProcessId v : g.vertices) {
          if (!std::binary_search(comp.begin(), comp.end(), v)) {
            checks.fail("connected-containment",
                        at(p, r + n - 1) + ": vertex " + std::to_string(v) +
                            " lies outside the owner's component of round " +
                            std::to_string(r));
            failed = true;
            break;
          }
        }
        if (failed) break;
        for (const auto& [edge, label] : g.labeled_edges) {
          if (!gt.skeletons[ri].has_edge(edge.from, edge.to)) {
            checks.fail("connected-containment",
                        at(p, r + n - 1) + ": edge " + show_edge(edge) +
                            " is not in the round-" + std::to_string(r) +
                            " skeleton");
            failed = true;
            break;
          }
        }
        if (failed) break;
      }
    }
  }

  return std::move(checks).report();
}

VerifierReport verify_agreement_structure(const Trace& trace, int k) {
  require_recorded(trace);
  const PredicateReport pred = p_srcs_holds(trace.run, k);
  if (!pred.holds) {
    throw PredicateNotSatisfied(
        "verify_agreement_structure: source coverage fails at k=" +
        std::to_string(k));
  }
  const int n = trace.run.n;
  if (static_cast<int>(trace.decisions.size()) != n) {
    throw Error("verify_agreement_structure: trace is incomplete (" +
                std::to_string(trace.decisions.size()) + " of " +
                std::to_string(n) + " decisions)");
  }

  CheckSet checks({"root-bound", "estimate-agreement", "value-correspondence",
                   "decision-provenance"});

  const RoundGraph stable = stable_skeleton(trace.run).skeleton.graph;
  const std::vector<std::vector<ProcessId>> roots =
      root_components(to_digraph(stable));
  if (static_cast<int>(roots.size()) > k) {
    checks.fail("root-bound", std::to_string(roots.size()) +
                                  " root components, allowed " +
                                  std::to_string(k));
  }

  if (static_cast<Round>(trace.rounds.size()) < n) {
    throw Error("verify_agreement_structure: trace stops before round " +
                std::to_string(n));
  }
  const RoundRecord& round_n = trace.rounds[static_cast<std::size_t>(n - 1)];
  const SccPartition comps_n =
      scc_partition(to_digraph(skeleton_at(trace.run, n).graph));
  for (const auto& comp : comps_n.components) {
    const Value expect =
        round_n.states_after[static_cast<std::size_t>(comp.front())].x;
    for (ProcessId q : comp) {
      const Value got = round_n.states_after[static_cast<std::size_t>(q)].x;
      if (got != expect) {
        checks.fail("estimate-agreement",
                    "round " + std::to_string(n) + ": members " +
                        std::to_string(comp.front()) + " and " +
                        std::to_string(q) +
                        " of one component hold estimates " +
                        std::to_string(expect) + " and " + std::to_string(got));
        break;
      }
    }
    if (!checks.still_passing("estimate-agreement")) break;
  }

  std::set<Value> values;
  for (const auto& [p, decision] : trace.decisions) values.insert(decision.value);
  if (values.size() > roots.size()) {
    checks.fail("value-correspondence",
                std::to_string(values.size()) + " distinct decision values, " +
                    "but only " + std::to_string(roots.size()) +
                    " root components");
  }

  for (const auto& [p, decision] : trace.decisions) {
    if (decision.via != DecisionVia::adopted) continue;
    bool justified = false;
    for (const auto& [q, other] : trace.decisions) {
      if (other.via == DecisionVia::detected && other.value == decision.value &&
          other.round < decision.round) {
        justified = true;
        break;
      }
    }
    if (!justified) {
      checks.fail("decision-provenance",
                  "process " + std::to_string(p) + " adopted " +
                      std::to_string(decision.value) + " in round " +
                      std::to_string(decision.round) +
                      " but nobody had detected that value earlier");
      break;
    }
  }

  return std::move(checks).report();
}

}  // namespace skel
