#ifndef SKEL_PROTOCOL_HPP_
#define SKEL_PROTOCOL_HPP_

#include <map>
#include <optional>
#include <vector>

#include "skel/digraph.hpp"
#include "skel/types.hpp"

namespace skel {

/// Weighted digraph a process maintains as its approximation of the stable
/// skeleton. Vertices are sorted; each ordered pair carries at most one
/// round label, and after a process finishes round r every label lies in
/// (r - n, r]. The owning process is always a vertex.
struct ApproxGraph {
  std::vector<ProcessId> vertices;
  std::map<Edge, Round> labeled_edges;

  bool has_vertex(ProcessId v) const;
  std::optional<Round> label_of(ProcessId from, ProcessId to) const;

  friend bool operator==(const ApproxGraph&, const ApproxGraph&) = default;
};

/// The label-free view used for connectivity questions.
Digraph unlabeled(const ApproxGraph& g);

enum class MsgTag { prop, decide };

/// One broadcast payload. The graph is a value copy taken at send time;
/// later state changes do not alter messages already sent.
struct Message {
  MsgTag tag = MsgTag::prop;
  Value x = 0;
  ApproxGraph graph;
  ProcessId sender = -1;

  friend bool operator==(const Message&, const Message&) = default;
};

/// How a process decided: by its own connectivity test, or by adopting a
/// decision message from a timely neighbor.
enum class DecisionVia { detected, adopted };

struct Decision {
  Value value = 0;
  Round round = 0;
  DecisionVia via = DecisionVia::detected;

  friend bool operator==(const Decision&, const Decision&) = default;
};

/// Messages delivered to one process in one round, keyed by sender. Keys are
/// exactly the in-neighbors of the receiver in that round's graph.
using Inbox = std::map<ProcessId, Message>;

struct ProcessState {
  ProcessId id = -1;
  int n = 0;
  std::vector<ProcessId> pt;
  Value x = 0;
  ApproxGraph graph;
  bool decided = false;
  std::optional<Decision> decision;

  friend bool operator==(const ProcessState&, const ProcessState&) = default;
};

class SelfMessageMissing : public Error {
 public:
  explicit SelfMessageMissing(const std::string& what) : Error(what) {}
};

/// Fresh state: pt covers all n processes, the estimate is the proposal, the
/// approximation graph is the single vertex {id} with no edges.
ProcessState init_state(ProcessId id, Value proposal, int n);

/// The round-r broadcast computed from the end-of-round-(r-1) state.
Message send_fn(const ProcessState& state, Round r);

/// Phase 1: pt shrinks to the senders actually heard from this round.
ProcessState update_pt(ProcessState state, const Inbox& inbox);

/// Phase 2: an undecided process adopts a decision carried by any
/// decide-tagged message from a timely neighbor, taking the smallest value
/// when several arrive. Decided processes ignore the phase.
ProcessState handle_decide(ProcessState state, Round r, const Inbox& inbox);

/// Phase 3: rebuild the approximation graph from scratch. Timely neighbors
/// contribute a fresh (q -> id) edge labeled r plus their whole message
/// graphs (merged per edge by maximum label); labels at most r - n are
/// discarded, then vertices that cannot reach id are pruned.
ProcessState approximate_skeleton(ProcessState state, Round r,
                                  const Inbox& inbox);

/// Phase 4: an undecided process lowers its estimate to the minimum over
/// timely neighbors' message values, then decides on it once r >= n and the
/// approximation graph is strongly connected.
ProcessState update_estimate_and_decide(ProcessState state, Round r,
                                        const Inbox& inbox);

/// One full round: the four phases above in order. The inbox must contain
/// the process's own message (self-loops are mandatory), else throws
/// SelfMessageMissing.
ProcessState transition_fn(ProcessState state, Round r, const Inbox& inbox);

}  // namespace skel

#endif  // SKEL_PROTOCOL_HPP_
