#ifndef SKEL_TYPES_HPP_
#define SKEL_TYPES_HPP_

#include <compare>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace skel {

/// Process identifiers are dense indices in [0, n).
using ProcessId = int;

/// Rounds are 1-based; round 0 refers to initial state only.
using Round = int;

/// Proposal/decision values. Non-negative integers with the usual order.
using Value = long long;

/// Marker for "over the whole run" in round parameters and skeleton stamps.
inline constexpr Round kInfiniteRound = std::numeric_limits<Round>::max();

/// Directed edge (from -> to) between processes.
struct Edge {
  ProcessId from = 0;
  ProcessId to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Base error for all library failures (validation, generation, IO).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the simulator when the round horizon is reached while some
/// processes are still undecided. Carries the undecided set.
class HorizonExceeded : public Error {
 public:
  HorizonExceeded(Round horizon, std::vector<ProcessId> undecided);

  Round horizon() const { return horizon_; }
  const std::vector<ProcessId>& undecided() const { return undecided_; }

 private:
  Round horizon_;
  std::vector<ProcessId> undecided_;
};

/// Selects the serial reference path or the OpenMP kernel path for
/// operations that iterate over independent work items. Both paths
/// produce identical results; the serial path exists so tests can
/// cross-check the parallel one.
enum class ExecPolicy { serial, parallel };

}  // namespace skel

#endif  // SKEL_TYPES_HPP_
