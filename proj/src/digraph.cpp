#include "skel/digraph.hpp"

#include <algorithm>
#include <string>

namespace skel {

namespace {

// Dense-index adjacency lists for a digraph whose vertices may be any ids.
struct IndexedGraph {
  std::vector<ProcessId> vertices;           // sorted
  std::vector<std::vector<int>> out;         // successor positions
  std::vector<std::vector<int>> in;          // predecessor positions

  int index_of(ProcessId v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return static_cast<int>(it - vertices.begin());
  }
};

IndexedGraph index_graph(const Digraph& g) {
  IndexedGraph ig;
  ig.vertices = g.vertices;
  ig.out.resize(ig.vertices.size());
  ig.in.resize(ig.vertices.size());
  for (const Edge& e : g.edges) {
    const int u = ig.index_of(e.from);
    const int v = ig.index_of(e.to);
    ig.out[static_cast<std::size_t>(u)].push_back(v);
    ig.in[static_cast<std::size_t>(v)].push_back(u);
  }
  return ig;
}

}  // namespace

bool Digraph::has_vertex(ProcessId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Digraph::has_edge(ProcessId from, ProcessId to) const {
  return std::binary_search(edges.begin(), edges.end(), Edge{from, to});
}

Digraph make_digraph(std::vector<ProcessId> vertices, std::vector<Edge> edges) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Digraph g{std::move(vertices), std::move(edges)};
  for (const Edge& e : g.edges) {
    if (!g.has_vertex(e.from) || !g.has_vertex(e.to)) {
      throw Error("digraph: edge (" + std::to_string(e.from) + " -> " +
                  std::to_string(e.to) + ") has an endpoint outside the vertex set");
    }
  }
  return g;
}

Digraph to_digraph(const RoundGraph& g) {
  std::vector<ProcessId> vertices(static_cast<std::size_t>(g.n()));
  for (ProcessId p = 0; p < g.n(); ++p) vertices[static_cast<std::size_t>(p)] = p;
  return Digraph{std::move(vertices), g.edges()};
}

SccPartition scc_partition(const Digraph& g) {
  const IndexedGraph ig = index_graph(g);
  const int m = static_cast<int>(ig.vertices.size());

  // Iterative Tarjan.
  std::vector<int> index(static_cast<std::size_t>(m), -1);
  std::vector<int> lowlink(static_cast<std::size_t>(m), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(m), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> raw_components;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t next_child;
  };
  std::vector<Frame> call_stack;

  for (int root = 0; root < m; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call_stack.push_back({root, 0});
    index[static_cast<std::size_t>(root)] = next_index;
    lowlink[static_cast<std::size_t>(root)] = next_index;
    ++next_index;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const auto& succ = ig.out[static_cast<std::size_t>(frame.v)];
      if (frame.next_child < succ.size()) {
        const int w = succ[frame.next_child++];
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = next_index;
          lowlink[static_cast<std::size_t>(w)] = next_index;
          ++next_index;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          lowlink[static_cast<std::size_t>(frame.v)] =
              std::min(lowlink[static_cast<std::size_t>(frame.v)],
                       index[static_cast<std::size_t>(w)]);
        }
      } else {
        const int v = frame.v;
        call_stack.pop_back();
        if (!call_stack.empty()) {
          const int parent = call_stack.back().v;
          lowlink[static_cast<std::size_t>(parent)] =
              std::min(lowlink[static_cast<std::size_t>(parent)],
                       lowlink[static_cast<std::size_t>(v)]);
        }
        if (lowlink[static_cast<std::size_t>(v)] ==
            index[static_cast<std::size_t>(v)]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp.push_back(w);
          } while (w != v);
          raw_components.push_back(std::move(comp));
        }
      }
    }
  }

  SccPartition result;
  result.components.reserve(raw_components.size());
  for (auto& comp : raw_components) {
    std::vector<ProcessId> members;
    members.reserve(comp.size());
    for (int idx : comp) members.push_back(ig.vertices[static_cast<std::size_t>(idx)]);
    std::sort(members.begin(), members.end());
    result.components.push_back(std::move(members));
  }
  std::sort(result.components.begin(), result.components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (int c = 0; c < static_cast<int>(result.components.size()); ++c) {
    for (ProcessId v : result.components[static_cast<std::size_t>(c)]) {
      result.component_of[v] = c;
    }
  }
  return result;
}

std::vector<std::vector<ProcessId>> root_components(const Digraph& g) {
  const SccPartition partition = scc_partition(g);
  std::vector<bool> has_incoming(partition.components.size(), false);
  for (const Edge& e : g.edges) {
    const int cu = partition.component_of.at(e.from);
    const int cv = partition.component_of.at(e.to);
    if (cu != cv) has_incoming[static_cast<std::size_t>(cv)] = true;
  }
  std::vector<std::vector<ProcessId>> roots;
  for (std::size_t c = 0; c < partition.components.size(); ++c) {
    if (!has_incoming[c]) roots.push_back(partition.components[c]);
  }
  return roots;
}

Digraph condensation(const Digraph& g, const SccPartition& partition) {
  std::vector<ProcessId> vertices;
  for (int c = 0; c < static_cast<int>(partition.components.size()); ++c) {
    vertices.push_back(c);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges) {
    const int cu = partition.component_of.at(e.from);
    const int cv = partition.component_of.at(e.to);
    if (cu != cv) edges.push_back({cu, cv});
  }
  return make_digraph(std::move(vertices), std::move(edges));
}

bool is_strongly_connected(const Digraph& g) {
  if (g.vertices.empty()) throw Error("is_strongly_connected: empty graph");
  if (g.vertices.size() == 1) return true;
  return scc_partition(g).components.size() == 1;
}

Digraph prune_unreachable_to(const Digraph& g, ProcessId p) {
  if (!g.has_vertex(p)) {
    throw Error("prune_unreachable_to: vertex " + std::to_string(p) +
                " not in graph");
  }
  const IndexedGraph ig = index_graph(g);
  std::vector<bool> keeps(ig.vertices.size(), false);
  std::vector<int> frontier{ig.index_of(p)};
  keeps[static_cast<std::size_t>(frontier.front())] = true;
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    for (int u : ig.in[static_cast<std::size_t>(v)]) {
      if (!keeps[static_cast<std::size_t>(u)]) {
        keeps[static_cast<std::size_t>(u)] = true;
        frontier.push_back(u);
      }
    }
  }
  std::vector<ProcessId> vertices;
  for (std::size_t i = 0; i < ig.vertices.size(); ++i) {
    if (keeps[i]) vertices.push_back(ig.vertices[i]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges) {
    const int u = ig.index_of(e.from);
    const int v = ig.index_of(e.to);
    if (keeps[static_cast<std::size_t>(u)] && keeps[static_cast<std::size_t>(v)]) {
      edges.push_back(e);
    }
  }
  return Digraph{std::move(vertices), std::move(edges)};
}

bool ReachabilityMatrix::reaches(ProcessId from, ProcessId to) const {
  auto pos = [this](ProcessId v) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) {
      throw Error("reachability: vertex " + std::to_string(v) + " not in graph");
    }
    return static_cast<std::size_t>(it - vertices.begin());
  };
  return reach[pos(from)][pos(to)];
}

ReachabilityMatrix reachability_oracle(const Digraph& g) {
  const IndexedGraph ig = index_graph(g);
  const std::size_t m = ig.vertices.size();
  ReachabilityMatrix result;
  result.vertices = ig.vertices;
  result.reach.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) result.reach[i][i] = true;
  for (const Edge& e : g.edges) {
    result.reach[static_cast<std::size_t>(ig.index_of(e.from))]
                [static_cast<std::size_t>(ig.index_of(e.to))] = true;
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!result.reach[i][k]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (result.reach[k][j]) result.reach[i][j] = true;
      }
    }
  }
  return result;
}

}  // namespace skel
