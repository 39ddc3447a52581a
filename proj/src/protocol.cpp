#include "skel/protocol.hpp"

#include <algorithm>
#include <string>

namespace skel {

bool ApproxGraph::has_vertex(ProcessId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::optional<Round> ApproxGraph::label_of(ProcessId from, ProcessId to) const {
  const auto it = labeled_edges.find(Edge{from, to});
  if (it == labeled_edges.end()) return std::nullopt;
  return it->second;
}

Digraph unlabeled(const ApproxGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.labeled_edges.size());
  for (const auto& [edge, label] : g.labeled_edges) edges.push_back(edge);
  return make_digraph(g.vertices, std::move(edges));
}

ProcessState init_state(ProcessId id, Value proposal, int n) {
  if (n < 1) throw Error("init_state: n must be positive");
  if (id < 0 || id >= n) {
    throw Error("init_state: id " + std::to_string(id) +
                " out of range for n=" + std::to_string(n));
  }
  if (proposal < 0) {
    throw Error("init_state: proposals are natural numbers, got " +
                std::to_string(proposal));
  }
  ProcessState state;
  state.id = id;
  state.n = n;
  state.pt.resize(static_cast<std::size_t>(n));
  for (ProcessId p = 0; p < n; ++p) state.pt[static_cast<std::size_t>(p)] = p;
  state.x = proposal;
  state.graph.vertices = {id};
  return state;
}

Message send_fn(const ProcessState& state, Round r) {
  if (r < 1) throw Error("send_fn: rounds start at 1");
  Message msg;
  msg.tag = state.decided ? MsgTag::decide : MsgTag::prop;
  msg.x = state.x;
  msg.graph = state.graph;
  msg.sender = state.id;
  return msg;
}

ProcessState update_pt(ProcessState state, const Inbox& inbox) {
  std::vector<ProcessId> next;
  for (ProcessId q : state.pt) {
    if (inbox.count(q) != 0) next.push_back(q);
  }
  state.pt = std::move(next);
  return state;
}

ProcessState handle_decide(ProcessState state, Round r, const Inbox& inbox) {
  if (state.decided) return state;
  bool found = false;
  Value best = 0;
  for (ProcessId q : state.pt) {
    const Message& msg = inbox.at(q);
    if (msg.tag != MsgTag::decide) continue;
    if (!found || msg.x < best) {
      found = true;
      best = msg.x;
    }
  }
  if (found) {
    state.x = best;
    state.decided = true;
    state.decision = Decision{best, r, DecisionVia::adopted};
  }
  return state;
}

ProcessState approximate_skeleton(ProcessState state, Round r,
                                  const Inbox& inbox) {
  ApproxGraph next;
  next.vertices = {state.id};
  for (ProcessId q : state.pt) {
    const Message& msg = inbox.at(q);
    next.vertices.push_back(q);
    next.vertices.insert(next.vertices.end(), msg.graph.vertices.begin(),
                         msg.graph.vertices.end());
    // Merge the neighbor's whole graph, keeping the newest label per edge.
    for (const auto& [edge, label] : msg.graph.labeled_edges) {
      auto [it, inserted] = next.labeled_edges.emplace(edge, label);
      if (!inserted && label > it->second) it->second = label;
    }
  }
  std::sort(next.vertices.begin(), next.vertices.end());
  next.vertices.erase(std::unique(next.vertices.begin(), next.vertices.end()),
                      next.vertices.end());

  // Fresh evidence: everyone heard from this round points at us, stamped
  // with the current round. r exceeds every received label, so it wins any
  // merge conflict.
  for (ProcessId q : state.pt) {
    next.labeled_edges[Edge{q, state.id}] = r;
  }

  // Forget evidence that is n or more rounds old.
  for (auto it = next.labeled_edges.begin(); it != next.labeled_edges.end();) {
    if (it->second <= r - state.n) {
      it = next.labeled_edges.erase(it);
    } else {
      ++it;
    }
  }

  // Keep only the part of the graph that can still influence us.
  const Digraph kept = prune_unreachable_to(unlabeled(next), state.id);
  ApproxGraph pruned;
  pruned.vertices = kept.vertices;
  for (const auto& [edge, label] : next.labeled_edges) {
    if (kept.has_edge(edge.from, edge.to)) pruned.labeled_edges[edge] = label;
  }
  state.graph = std::move(pruned);
  return state;
}

ProcessState update_estimate_and_decide(ProcessState state, Round r,
                                        const Inbox& inbox) {
  if (state.decided) return state;
  if (state.pt.empty()) {
    throw Error("update_estimate_and_decide: empty timely neighborhood");
  }
  Value best = inbox.at(state.pt.front()).x;
  for (ProcessId q : state.pt) {
    const Value seen = inbox.at(q).x;
    if (seen < best) best = seen;
  }
  state.x = best;
  if (r >= state.n && is_strongly_connected(unlabeled(state.graph))) {
    state.decided = true;
    state.decision = Decision{state.x, r, DecisionVia::detected};
  }
  return state;
}

ProcessState transition_fn(ProcessState state, Round r, const Inbox& inbox) {
  if (r < 1) throw Error("transition_fn: rounds start at 1");
  if (inbox.count(state.id) == 0) {
    throw SelfMessageMissing("transition_fn: process " +
                             std::to_string(state.id) +
                             " received no self message in round " +
                             std::to_string(r));
  }
  state = update_pt(std::move(state), inbox);
  state = handle_decide(std::move(state), r, inbox);
  state = approximate_skeleton(std::move(state), r, inbox);
  state = update_estimate_and_decide(std::move(state), r, inbox);
  return state;
}

}  // namespace skel
