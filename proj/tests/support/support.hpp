#ifndef TESTS_SUPPORT_SUPPORT_HPP_
#define TESTS_SUPPORT_SUPPORT_HPP_

#include <algorithm>
#include <vector>

#include "skel/digraph.hpp"
#include "skel/rng.hpp"
#include "skel/run_model.hpp"
#include "skel/simulator.hpp"

namespace support {

using skel::Edge;
using skel::ProcessId;
using skel::Round;
using skel::RoundGraph;
using skel::RunSpec;

/// Self-loops plus the given extra edges.
inline RoundGraph graph_with(int n, std::vector<Edge> extra) {
  for (ProcessId p = 0; p < n; ++p) extra.push_back({p, p});
  return RoundGraph(n, std::move(extra));
}

inline RunSpec constant_run(RoundGraph tail) {
  RunSpec run;
  run.n = tail.n();
  run.tail = std::move(tail);
  return skel::validate_run_spec(std::move(run));
}

inline RunSpec complete_run(int n) {
  return constant_run(RoundGraph::complete(n));
}

inline RunSpec loops_run(int n) {
  return constant_run(RoundGraph::loops_only(n));
}

/// A random eventually-constant run with no predicate guarantees. The prefix
/// is kept shorter than n, so the first n-round window of skeleton stability
/// starts exactly at the true stabilization round and the decision-round
/// bound is meaningful.
inline RunSpec arbitrary_run(skel::Rng& rng, int n) {
  const int prefix_len = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  const auto random_graph = [&] {
    const std::uint64_t density = 1 + rng.below(3);
    std::vector<Edge> edges;
    for (ProcessId u = 0; u < n; ++u) {
      for (ProcessId v = 0; v < n; ++v) {
        if (u != v && rng.chance(density, 6)) edges.push_back({u, v});
      }
    }
    return graph_with(n, std::move(edges));
  };
  RunSpec run;
  run.n = n;
  for (int i = 0; i < prefix_len; ++i) run.prefix.push_back(random_graph());
  run.tail = random_graph();
  return skel::validate_run_spec(std::move(run));
}

/// Rewrites one random edge label in one random recorded state. The new
/// label is drawn from [1, last round] excluding the old value (extended by
/// one when that leaves no choice).
inline void mutate_one_label(skel::Trace& trace, skel::Rng& rng) {
  struct Site {
    std::size_t round_index;
    ProcessId p;
    Edge edge;
  };
  std::vector<Site> sites;
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const auto& states = trace.rounds[i].states_after;
    for (ProcessId p = 0; p < static_cast<ProcessId>(states.size()); ++p) {
      for (const auto& [edge, label] :
           states[static_cast<std::size_t>(p)].graph.labeled_edges) {
        sites.push_back({i, p, edge});
      }
    }
  }
  const Site& site = sites[rng.below(sites.size())];
  auto& graph = trace.rounds[site.round_index]
                    .states_after[static_cast<std::size_t>(site.p)]
                    .graph;
  const Round old_label = graph.labeled_edges.at(site.edge);
  Round hi = trace.rounds.back().r;
  if (hi == 1 && old_label == 1) hi = 2;
  Round fresh;
  do {
    fresh = static_cast<Round>(1 + rng.below(static_cast<std::uint64_t>(hi)));
  } while (fresh == old_label);
  graph.labeled_edges.at(site.edge) = fresh;
}

/// Intersection of explicitly materialized round graphs 1..r; the slow
/// mirror of skeleton_at.
inline RoundGraph folded_skeleton(const RunSpec& run, Round r) {
  RoundGraph acc = skel::round_graph(run, 1);
  for (Round i = 2; i <= r; ++i) {
    acc = acc.intersect(skel::round_graph(run, i));
  }
  return acc;
}

/// Mutual-reachability classes recomputed from the closure matrix; the slow
/// mirror of scc_partition.
inline std::vector<std::vector<ProcessId>> components_via_oracle(
    const skel::Digraph& g) {
  const skel::ReachabilityMatrix m = skel::reachability_oracle(g);
  std::vector<std::vector<ProcessId>> components;
  std::vector<bool> assigned(g.vertices.size(), false);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<ProcessId> comp;
    for (std::size_t j = 0; j < g.vertices.size(); ++j) {
      if (m.reach[i][j] && m.reach[j][i]) {
        comp.push_back(g.vertices[j]);
        assigned[j] = true;
      }
    }
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

/// Root components recomputed from the oracle classes by scanning for
/// incoming cross-component edges.
inline std::vector<std::vector<ProcessId>> roots_via_oracle(
    const skel::Digraph& g) {
  const auto components = components_via_oracle(g);
  std::vector<std::vector<ProcessId>> roots;
  for (const auto& comp : components) {
    bool incoming = false;
    for (const Edge& e : g.edges) {
      const bool to_inside =
          std::binary_search(comp.begin(), comp.end(), e.to);
      const bool from_inside =
          std::binary_search(comp.begin(), comp.end(), e.from);
      if (to_inside && !from_inside) {
        incoming = true;
        break;
      }
    }
    if (!incoming) roots.push_back(comp);
  }
  return roots;
}

inline bool strongly_connected_via_oracle(const skel::Digraph& g) {
  const skel::ReachabilityMatrix m = skel::reachability_oracle(g);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = 0; j < g.vertices.size(); ++j) {
      if (!m.reach[i][j]) return false;
    }
  }
  return true;
}

/// Every labeled digraph on vertices 0..m-1, all 2^(m*m) edge subsets.
inline std::vector<skel::Digraph> all_digraphs(int m) {
  std::vector<ProcessId> vertices(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) vertices[static_cast<std::size_t>(i)] = i;
  std::vector<Edge> pairs;
  for (ProcessId u = 0; u < m; ++u) {
    for (ProcessId v = 0; v < m; ++v) pairs.push_back({u, v});
  }
  std::vector<skel::Digraph> graphs;
  const std::uint64_t count = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) edges.push_back(pairs[i]);
    }
    graphs.push_back(skel::make_digraph(vertices, std::move(edges)));
  }
  return graphs;
}

inline skel::Digraph random_digraph(skel::Rng& rng, int m) {
  std::vector<ProcessId> vertices(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) vertices[static_cast<std::size_t>(i)] = i;
  const std::uint64_t density = 1 + rng.below(4);
  std::vector<Edge> edges;
  for (ProcessId u = 0; u < m; ++u) {
    for (ProcessId v = 0; v < m; ++v) {
      if (rng.chance(density, 8)) edges.push_back({u, v});
    }
  }
  return skel::make_digraph(std::move(vertices), std::move(edges));
}

}  // namespace support

#endif  // TESTS_SUPPORT_SUPPORT_HPP_
