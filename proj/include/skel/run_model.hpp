#ifndef SKEL_RUN_MODEL_HPP_
#define SKEL_RUN_MODEL_HPP_

#include <utility>
#include <vector>

#include "skel/types.hpp"

namespace skel {

/// One round's directed communication graph over n processes.
/// Edge (q -> p) means p receives q's message in that round.
/// Edges are kept sorted and deduplicated; a valid round graph carries a
/// self-loop for every process (see validate_round_graph).
class RoundGraph {
 public:
  RoundGraph() = default;
  RoundGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(ProcessId from, ProcessId to) const;

  /// Processes q with an edge (q -> p), sorted ascending.
  std::vector<ProcessId> in_neighbors(ProcessId p) const;

  /// Edge-set intersection; both graphs must have the same n.
  RoundGraph intersect(const RoundGraph& other) const;

  static RoundGraph complete(int n);
  static RoundGraph loops_only(int n);

  friend bool operator==(const RoundGraph&, const RoundGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Checks endpoints and mandatory self-loops; returns the graph unchanged.
/// Throws Error with the offending process/edge otherwise.
RoundGraph validate_round_graph(RoundGraph g);

/// An infinite run encoded as a finite prefix of round graphs followed by
/// one tail graph repeated forever. Round r uses prefix[r-1] for
/// r <= prefix.size() and the tail for every later round.
struct RunSpec {
  int n = 0;
  std::vector<RoundGraph> prefix;
  RoundGraph tail;

  Round prefix_len() const { return static_cast<Round>(prefix.size()); }

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

/// Validates every graph of the run (size agreement plus per-graph checks).
RunSpec validate_run_spec(RunSpec run);

/// The communication graph of round r (r >= 1).
const RoundGraph& round_graph(const RunSpec& run, Round r);

/// Intersection of the round graphs of rounds 1..r, stamped with the round
/// it reflects. as_of_round == kInfiniteRound marks the stable skeleton.
struct SkeletonGraph {
  RoundGraph graph;
  Round as_of_round = 0;

  friend bool operator==(const SkeletonGraph&, const SkeletonGraph&) = default;
};

SkeletonGraph skeleton_at(const RunSpec& run, Round r);

/// The all-rounds intersection together with the earliest round whose
/// skeleton already equals it.
struct StableSkeleton {
  SkeletonGraph skeleton;
  Round stabilization_round = 1;
};

StableSkeleton stable_skeleton(const RunSpec& run);

/// Processes p has heard from in every round up to r: the in-neighbors of
/// p in the round-r skeleton. r == kInfiniteRound uses the stable skeleton.
std::vector<ProcessId> timely_neighborhood(const RunSpec& run, ProcessId p,
                                           Round r = kInfiniteRound);

}  // namespace skel

#endif  // SKEL_RUN_MODEL_HPP_
