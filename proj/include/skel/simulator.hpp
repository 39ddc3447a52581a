#ifndef SKEL_SIMULATOR_HPP_
#define SKEL_SIMULATOR_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skel/protocol.hpp"
#include "skel/run_model.hpp"
#include "skel/types.hpp"

namespace skel {

/// Everything that happened in one simulated round: the delivered messages
/// keyed by (sender, receiver) and every process's state after its
/// transition. A (q, p) key is present iff (q -> p) is in the round graph.
struct RoundRecord {
  Round r = 0;
  std::map<std::pair<ProcessId, ProcessId>, Message> messages;
  std::vector<ProcessState> states_after;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

/// Full record of a simulation. `rounds` covers rounds 1..last in order;
/// `decisions` has one entry per process once the run terminated.
struct Trace {
  RunSpec run;
  std::vector<Value> proposals;
  std::vector<RoundRecord> rounds;
  std::map<ProcessId, Decision> decisions;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct SimOptions {
  /// Stop with HorizonExceeded after this many rounds. Defaults to
  /// prefix length + 3n + 1, comfortably past the worst decision round,
  /// so hitting it signals a termination bug rather than a slow run.
  std::optional<Round> horizon;
  ExecPolicy policy = ExecPolicy::serial;
  /// Benchmarks disable round recording; such traces carry decisions only
  /// and cannot be fed to the verifiers.
  bool record_rounds = true;
};

Round default_horizon(const RunSpec& run);

/// Lock-step execution: round-r messages are computed from end-of-round
/// (r-1) states for all processes before any round-r transition runs.
/// Stops once every process has decided. Deterministic in (run, proposals).
Trace execute(const RunSpec& run, const std::vector<Value>& proposals,
              SimOptions options = {});

/// One named property verdict. `detail` holds the first counterexample.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// A bundle of named checks; passed iff every check passed.
struct VerifierReport {
  bool passed = true;
  std::vector<CheckResult> checks;

  const CheckResult* find(const std::string& name) const;
};

/// Every decided value was somebody's proposal.
CheckResult check_validity(const Trace& trace);

/// At most k distinct decision values.
CheckResult check_k_agreement(const Trace& trace, int k);

/// Decisions arrive within 2n-1 rounds of the earliest round r* from which
/// the skeleton stays constant for n consecutive rounds.
CheckResult check_termination_bound(const Trace& trace);

/// Structural soundness of every process's skeleton approximation, checked
/// per (process, round) against ground truth recomputed from the run:
///   timely-view          pt matches the true timely neighborhood, and an
///                        in-edge labeled with the current round exists for
///                        exactly its members
///   path-propagation     neighborhood facts travel along skeleton paths
///                        within a label window matching the path length
///   component-coverage   from round n on, the approximation contains the
///                        process's skeleton component of that round
///   label-validity       every labeled edge records a true timeliness fact
///   connected-containment a strongly connected approximation lies inside
///                        the component of n-1 rounds earlier
///   component-closure    a strongly connected approximation contains the
///                        stable component of each of its vertices
///   label-window         owner vertex present; labels lie in (r-n, r]
///   merge-consistency    each recorded graph equals the deterministic
///                        rebuild from the true timely neighborhood and the
///                        neighbors' round-(r-1) recorded graphs
/// These hold on every run, whatever the communication pattern.
VerifierReport verify_approximation(const Trace& trace);

class PredicateNotSatisfied : public Error {
 public:
  explicit PredicateNotSatisfied(const std::string& what) : Error(what) {}
};

/// Agreement-side structure for runs whose source coverage holds at k
/// (throws PredicateNotSatisfied otherwise):
///   root-bound           at most k root components in the stable skeleton
///   estimate-agreement   equal estimates inside each round-n component
///   value-correspondence distinct decision values bounded by the number of
///                        root components
///   decision-provenance  every adopted decision value was first decided by
///                        some process's own connectivity test, earlier
VerifierReport verify_agreement_structure(const Trace& trace, int k);

}  // namespace skel

#endif  // SKEL_SIMULATOR_HPP_
