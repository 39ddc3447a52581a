#include "skel/predicates.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "skel/rng.hpp"

namespace skel {

namespace {

// Bit i of receivers[p] is set iff p is timely for process i on the stable
// skeleton. A process p is a 2-source for subset S exactly when at least two
// bits of receivers[p] & mask(S) are set.
std::vector<std::uint64_t> receiver_masks(const RunSpec& run) {
  const RoundGraph skeleton = stable_skeleton(run).skeleton.graph;
  std::vector<std::uint64_t> receivers(static_cast<std::size_t>(run.n), 0);
  for (const Edge& e : skeleton.edges()) {
    receivers[static_cast<std::size_t>(e.from)] |= std::uint64_t{1} << e.to;
  }
  return receivers;
}

std::uint64_t subset_mask(const std::vector<ProcessId>& subset) {
  std::uint64_t mask = 0;
  for (ProcessId p : subset) mask |= std::uint64_t{1} << p;
  return mask;
}

// All size-`size` subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<ProcessId>> combinations(int n, int size) {
  std::vector<std::vector<ProcessId>> result;
  if (size > n || size <= 0) return result;
  std::vector<ProcessId> current(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) current[static_cast<std::size_t>(i)] = i;
  while (true) {
    result.push_back(current);
    int i = size - 1;
    while (i >= 0 &&
           current[static_cast<std::size_t>(i)] == n - size + i) {
      --i;
    }
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) {
      current[static_cast<std::size_t>(j)] =
          current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return result;
}

// Smallest 2-source for the subset, or -1 if none exists.
ProcessId smallest_source(const std::vector<std::uint64_t>& receivers,
                          std::uint64_t mask, int n) {
  for (ProcessId p = 0; p < n; ++p) {
    if (std::popcount(receivers[static_cast<std::size_t>(p)] & mask) >= 2) {
      return p;
    }
  }
  return -1;
}

void require_small_system(int n, const char* where) {
  if (n > 63) {
    throw Error(std::string(where) + ": supports at most 63 processes, got " +
                std::to_string(n));
  }
}

}  // namespace

bool p_src_holds(const RunSpec& run, ProcessId p,
                 const std::vector<ProcessId>& subset) {
  require_small_system(run.n, "p_src_holds");
  if (p < 0 || p >= run.n) {
    throw Error("p_src_holds: process " + std::to_string(p) +
                " out of range for n=" + std::to_string(run.n));
  }
  std::vector<ProcessId> members = subset;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.size() < 2) {
    throw SubsetTooSmall("p_src_holds: subset needs at least 2 members, got " +
                         std::to_string(members.size()));
  }
  for (ProcessId q : members) {
    if (q < 0 || q >= run.n) {
      throw Error("p_src_holds: subset member " + std::to_string(q) +
                  " out of range for n=" + std::to_string(run.n));
    }
  }
  const std::vector<std::uint64_t> receivers = receiver_masks(run);
  return std::popcount(receivers[static_cast<std::size_t>(p)] &
                       subset_mask(members)) >= 2;
}

PredicateReport p_srcs_holds(const RunSpec& run, int k, ExecPolicy policy) {
  if (k < 1) {
    throw ParameterOutOfRange("p_srcs_holds: k must be at least 1, got " +
                              std::to_string(k));
  }
  require_small_system(run.n, "p_srcs_holds");

  PredicateReport report;
  report.k = k;
  if (k >= run.n) {
    // No (k+1)-subsets exist; the universal claim holds vacuously.
    report.holds = true;
    return report;
  }

  const std::vector<std::uint64_t> receivers = receiver_masks(run);
  const std::vector<std::vector<ProcessId>> subsets =
      combinations(run.n, k + 1);
  std::vector<ProcessId> sources(subsets.size(), -1);

  const auto count = static_cast<std::int64_t>(subsets.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      sources[static_cast<std::size_t>(i)] = smallest_source(
          receivers, subset_mask(subsets[static_cast<std::size_t>(i)]), run.n);
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      sources[static_cast<std::size_t>(i)] = smallest_source(
          receivers, subset_mask(subsets[static_cast<std::size_t>(i)]), run.n);
    }
  }

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (sources[i] < 0) {
      report.holds = false;
      report.violating_subset = subsets[i];
      return report;
    }
  }
  report.holds = true;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    report.witness_sources.emplace(subsets[i], sources[i]);
  }
  return report;
}

int min_k(const RunSpec& run, ExecPolicy policy) {
  for (int k = 1; k < run.n; ++k) {
    if (p_srcs_holds(run, k, policy).holds) return k;
  }
  return run.n;
}

RunSpec gen_tight(int n, int k, std::optional<std::vector<ProcessId>> loners,
                  std::optional<ProcessId> hub) {
  if (!(1 < k && k < n)) {
    throw ParameterOutOfRange("gen_tight: requires 1 < k < n, got k=" +
                              std::to_string(k) + ", n=" + std::to_string(n));
  }
  std::vector<ProcessId> loner_set;
  if (loners.has_value()) {
    loner_set = *loners;
    std::sort(loner_set.begin(), loner_set.end());
    loner_set.erase(std::unique(loner_set.begin(), loner_set.end()),
                    loner_set.end());
    if (static_cast<int>(loner_set.size()) != k - 1) {
      throw ParameterOutOfRange("gen_tight: expected " + std::to_string(k - 1) +
                                " distinct loners, got " +
                                std::to_string(loner_set.size()));
    }
  } else {
    for (ProcessId p = 0; p + 1 < k; ++p) loner_set.push_back(p);
  }
  const ProcessId hub_id = hub.value_or(k - 1);
  for (ProcessId p : loner_set) {
    if (p < 0 || p >= n) {
      throw ParameterOutOfRange("gen_tight: loner " + std::to_string(p) +
                                " out of range for n=" + std::to_string(n));
    }
    if (p == hub_id) {
      throw ParameterOutOfRange("gen_tight: hub " + std::to_string(hub_id) +
                                " also listed as a loner");
    }
  }
  if (hub_id < 0 || hub_id >= n) {
    throw ParameterOutOfRange("gen_tight: hub " + std::to_string(hub_id) +
                              " out of range for n=" + std::to_string(n));
  }

  std::vector<Edge> edges;
  for (ProcessId p = 0; p < n; ++p) edges.push_back({p, p});
  for (ProcessId p = 0; p < n; ++p) {
    if (!std::binary_search(loner_set.begin(), loner_set.end(), p)) {
      edges.push_back({hub_id, p});
    }
  }
  return validate_run_spec(RunSpec{n, {}, RoundGraph(n, std::move(edges))});
}

RunSpec gen_random_psrcs(int n, int k, std::uint64_t seed, int prefix_len) {
  if (!(1 <= k && k < n)) {
    throw ParameterOutOfRange("gen_random_psrcs: requires 1 <= k < n, got k=" +
                              std::to_string(k) + ", n=" + std::to_string(n));
  }
  if (prefix_len < 0) {
    throw ParameterOutOfRange("gen_random_psrcs: negative prefix length " +
                              std::to_string(prefix_len));
  }
  require_small_system(n, "gen_random_psrcs");

  Rng rng(seed);
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Group every process under one of c <= k hubs. Any k+1 processes then
    // include two that share a hub, which is their 2-source, so the base
    // edge set already settles the predicate; extra edges only help.
    const int c = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    std::vector<ProcessId> order(static_cast<std::size_t>(n));
    for (ProcessId p = 0; p < n; ++p) order[static_cast<std::size_t>(p)] = p;
    rng.shuffle(order);

    std::vector<Edge> base;
    for (ProcessId p = 0; p < n; ++p) base.push_back({p, p});
    for (int i = c; i < n; ++i) {
      const ProcessId hub =
          order[rng.below(static_cast<std::uint64_t>(c))];
      base.push_back({hub, order[static_cast<std::size_t>(i)]});
    }
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());

    const auto layer_extras = [&](std::vector<Edge> edges) {
      for (ProcessId u = 0; u < n; ++u) {
        for (ProcessId v = 0; v < n; ++v) {
          if (u == v) continue;
          if (rng.chance(1, 4)) edges.push_back({u, v});
        }
      }
      return edges;
    };

    RunSpec run;
    run.n = n;
    for (int i = 0; i < prefix_len; ++i) {
      run.prefix.emplace_back(n, layer_extras(base));
    }
    run.tail = RoundGraph(n, layer_extras(base));
    run = validate_run_spec(std::move(run));

    if (p_srcs_holds(run, k).holds) return run;
  }
  throw GenerationFailed("gen_random_psrcs: no admissible run after " +
                         std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace skel
