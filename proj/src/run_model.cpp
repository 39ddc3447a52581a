#include "skel/run_model.hpp"

#include <algorithm>

namespace skel {

HorizonExceeded::HorizonExceeded(Round horizon, std::vector<ProcessId> undecided)
    : Error("horizon " + std::to_string(horizon) +
            " reached with " + std::to_string(undecided.size()) +
            " undecided process(es)"),
      horizon_(horizon),
      undecided_(std::move(undecided)) {}

RoundGraph::RoundGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool RoundGraph::has_edge(ProcessId from, ProcessId to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::vector<ProcessId> RoundGraph::in_neighbors(ProcessId p) const {
  std::vector<ProcessId> result;
  for (const Edge& e : edges_) {
    if (e.to == p) result.push_back(e.from);
  }
  std::sort(result.begin(), result.end());
  return result;
}

RoundGraph RoundGraph::intersect(const RoundGraph& other) const {
  if (n_ != other.n_) throw Error("intersect: size mismatch");
  std::vector<Edge> common;
  std::set_intersection(edges_.begin(), edges_.end(), other.edges_.begin(),
                        other.edges_.end(), std::back_inserter(common));
  return RoundGraph(n_, std::move(common));
}

RoundGraph RoundGraph::complete(int n) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * n);
  for (ProcessId from = 0; from < n; ++from) {
    for (ProcessId to = 0; to < n; ++to) edges.push_back({from, to});
  }
  return RoundGraph(n, std::move(edges));
}

RoundGraph RoundGraph::loops_only(int n) {
  std::vector<Edge> edges;
  edges.reserve(n);
  for (ProcessId p = 0; p < n; ++p) edges.push_back({p, p});
  return RoundGraph(n, std::move(edges));
}

RoundGraph validate_round_graph(RoundGraph g) {
  if (g.n() <= 0) throw Error("round graph: system size must be positive");
  for (const Edge& e : g.edges()) {
    if (e.from < 0 || e.from >= g.n() || e.to < 0 || e.to >= g.n()) {
      throw Error("round graph: endpoint out of range in edge (" +
                  std::to_string(e.from) + " -> " + std::to_string(e.to) +
                  ") for n=" + std::to_string(g.n()));
    }
  }
  for (ProcessId p = 0; p < g.n(); ++p) {
    if (!g.has_edge(p, p)) {
      throw Error("round graph: missing self-loop at process " +
                  std::to_string(p));
    }
  }
  return g;
}

RunSpec validate_run_spec(RunSpec run) {
  if (run.n <= 0) throw Error("run spec: system size must be positive");
  for (const RoundGraph& g : run.prefix) {
    if (g.n() != run.n) throw Error("run spec: prefix graph size mismatch");
    validate_round_graph(g);
  }
  if (run.tail.n() != run.n) throw Error("run spec: tail graph size mismatch");
  validate_round_graph(run.tail);
  return run;
}

const RoundGraph& round_graph(const RunSpec& run, Round r) {
  if (r < 1) throw Error("round_graph: rounds start at 1");
  if (r <= run.prefix_len()) return run.prefix[static_cast<std::size_t>(r - 1)];
  return run.tail;
}

SkeletonGraph skeleton_at(const RunSpec& run, Round r) {
  if (r < 1) throw Error("skeleton_at: rounds start at 1");
  // Rounds beyond the prefix all repeat the tail, so the intersection
  // stops changing after round prefix_len()+1.
  const Round last_distinct = std::min(r, run.prefix_len() + 1);
  RoundGraph acc = round_graph(run, 1);
  for (Round i = 2; i <= last_distinct; ++i) {
    acc = acc.intersect(round_graph(run, i));
  }
  return SkeletonGraph{std::move(acc), r};
}

StableSkeleton stable_skeleton(const RunSpec& run) {
  SkeletonGraph stable = skeleton_at(run, run.prefix_len() + 1);
  stable.as_of_round = kInfiniteRound;
  Round r_st = run.prefix_len() + 1;
  for (Round r = 1; r <= run.prefix_len(); ++r) {
    if (skeleton_at(run, r).graph == stable.graph) {
      r_st = r;
      break;
    }
  }
  return StableSkeleton{std::move(stable), r_st};
}

std::vector<ProcessId> timely_neighborhood(const RunSpec& run, ProcessId p,
                                           Round r) {
  if (p < 0 || p >= run.n) throw Error("timely_neighborhood: unknown process");
  if (r == kInfiniteRound) {
    return stable_skeleton(run).skeleton.graph.in_neighbors(p);
  }
  return skeleton_at(run, r).graph.in_neighbors(p);
}

}  // namespace skel
