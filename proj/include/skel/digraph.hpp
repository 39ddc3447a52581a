#ifndef SKEL_DIGRAPH_HPP_
#define SKEL_DIGRAPH_HPP_

#include <map>
#include <vector>

#include "skel/run_model.hpp"
#include "skel/types.hpp"

namespace skel {

/// Plain directed graph over an explicit vertex set. Vertices and edges are
/// kept sorted; edge endpoints must be vertices.
struct Digraph {
  std::vector<ProcessId> vertices;
  std::vector<Edge> edges;

  bool has_vertex(ProcessId v) const;
  bool has_edge(ProcessId from, ProcessId to) const;

  friend bool operator==(const Digraph&, const Digraph&) = default;
};

/// Builds a normalized digraph (sorts, dedups, checks endpoints).
Digraph make_digraph(std::vector<ProcessId> vertices, std::vector<Edge> edges);

/// Unlabeled view of a round or skeleton graph over all n processes.
Digraph to_digraph(const RoundGraph& g);

/// Partition of the vertex set into maximal strongly connected components.
/// Components are ordered by smallest member, members sorted ascending.
struct SccPartition {
  std::vector<std::vector<ProcessId>> components;
  std::map<ProcessId, int> component_of;
};

SccPartition scc_partition(const Digraph& g);

/// The components with no incoming edge from outside themselves. Nonempty
/// for every nonempty graph; same ordering convention as scc_partition.
std::vector<std::vector<ProcessId>> root_components(const Digraph& g);

/// Contracts each component to one vertex (its index in the partition).
/// The result is acyclic.
Digraph condensation(const Digraph& g, const SccPartition& partition);

/// True iff every vertex reaches every vertex. A single vertex counts as
/// strongly connected regardless of self-loops. Throws on an empty graph.
bool is_strongly_connected(const Digraph& g);

/// Keeps p and exactly the vertices with a directed path to p, dropping
/// edges with removed endpoints. Throws if p is not a vertex.
Digraph prune_unreachable_to(const Digraph& g, ProcessId p);

/// Transitive-closure reachability matrix, computed by a triple-loop
/// closure. Reflexive by convention. Serves as the independent oracle for
/// the component algorithms above.
struct ReachabilityMatrix {
  std::vector<ProcessId> vertices;
  std::vector<std::vector<bool>> reach;  // indexed by vertex positions

  bool reaches(ProcessId from, ProcessId to) const;
};

ReachabilityMatrix reachability_oracle(const Digraph& g);

}  // namespace skel

#endif  // SKEL_DIGRAPH_HPP_
