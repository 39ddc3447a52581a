#ifndef SKEL_PREDICATES_HPP_
#define SKEL_PREDICATES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "skel/run_model.hpp"
#include "skel/types.hpp"

namespace skel {

/// Outcome of checking the source-coverage predicate for one k. Exactly one
/// of witness_sources / violating_subset is populated, matching `holds`.
/// Subsets are kept sorted so reports serialize canonically.
struct PredicateReport {
  int k = 0;
  bool holds = false;
  /// For every (k+1)-subset, the smallest process that is a 2-source for it.
  std::map<std::vector<ProcessId>, ProcessId> witness_sources;
  /// Lexicographically first (k+1)-subset without a 2-source.
  std::optional<std::vector<ProcessId>> violating_subset;

  friend bool operator==(const PredicateReport&,
                         const PredicateReport&) = default;
};

class SubsetTooSmall : public Error {
 public:
  explicit SubsetTooSmall(const std::string& what) : Error(what) {}
};

class ParameterOutOfRange : public Error {
 public:
  explicit ParameterOutOfRange(const std::string& what) : Error(what) {}
};

class GenerationFailed : public Error {
 public:
  explicit GenerationFailed(const std::string& what) : Error(what) {}
};

/// True iff two distinct members of the subset both see p as timely (on the
/// stable skeleton). p itself may or may not belong to the subset, which
/// needs at least two members; throws SubsetTooSmall otherwise.
bool p_src_holds(const RunSpec& run, ProcessId p,
                 const std::vector<ProcessId>& subset);

/// Checks that every (k+1)-subset of processes has a 2-source. Vacuously
/// true for k >= n. Enumeration order is lexicographic; the parallel policy
/// yields byte-identical reports to the serial one.
PredicateReport p_srcs_holds(const RunSpec& run, int k,
                             ExecPolicy policy = ExecPolicy::serial);

/// Smallest k >= 1 for which the coverage predicate holds; at most n.
int min_k(const RunSpec& run, ExecPolicy policy = ExecPolicy::serial);

/// Lower-bound construction: a constant run where `loners` hear only from
/// themselves and everyone else additionally hears from `hub`. Defaults
/// place the k-1 loners at ids 0..k-2 and the hub at k-1. Requires 1 < k < n.
RunSpec gen_tight(int n, int k,
                  std::optional<std::vector<ProcessId>> loners = std::nullopt,
                  std::optional<ProcessId> hub = std::nullopt);

/// Random run satisfying the coverage predicate for k: processes are grouped
/// under at most k hubs (so every (k+1)-subset has two members sharing a
/// hub), then random extra edges are layered per round. Deterministic in
/// seed; the result is re-checked exhaustively before being returned.
RunSpec gen_random_psrcs(int n, int k, std::uint64_t seed, int prefix_len);

}  // namespace skel

#endif  // SKEL_PREDICATES_HPP_
