#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "skel/digraph.hpp"
#include "skel/predicates.hpp"
#include "skel/rng.hpp"
#include "skel/run_model.hpp"
#include "support/support.hpp"

using namespace skel;
using support::complete_run;
using support::loops_run;

namespace {

// C(n, r) for the small systems used in tests.
std::int64_t choose(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::int64_t result = 1;
  for (int i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return result;
}

}  // namespace

TEST_CASE("every pair shares a source in a complete run") {
  const RunSpec run = complete_run(4);
  CHECK(p_src_holds(run, 0, {1, 2}));
  CHECK(p_src_holds(run, 3, {0, 3}));
}

TEST_CASE("isolated processes share no source") {
  const RunSpec run = loops_run(4);
  CHECK(!p_src_holds(run, 0, {1, 2}));
  CHECK(!p_src_holds(run, 0, {0, 1}));
}

TEST_CASE("the hub is a source exactly for its listeners") {
  const RunSpec run = gen_tight(6, 3);  // loners 0,1; hub 2
  CHECK(p_src_holds(run, 2, {3, 4}));
  CHECK(p_src_holds(run, 2, {2, 5}));
  CHECK(!p_src_holds(run, 2, {0, 1}));
  CHECK(!p_src_holds(run, 0, {0, 1}));
  CHECK(!p_src_holds(run, 2, {1, 4}));
}

TEST_CASE("p_src_holds rejects degenerate subsets") {
  const RunSpec run = complete_run(3);
  CHECK_THROWS_AS(p_src_holds(run, 0, {1}), SubsetTooSmall);
  CHECK_THROWS_AS(p_src_holds(run, 0, {1, 1}), SubsetTooSmall);
  CHECK_THROWS_AS(p_src_holds(run, 9, {0, 1}), Error);
  CHECK_THROWS_AS(p_src_holds(run, 0, {0, 7}), Error);
}

TEST_CASE("the tight family holds at k and fails just below") {
  for (int n = 4; n <= 8; ++n) {
    for (int k = 2; k < n; ++k) {
      const RunSpec run = gen_tight(n, k);
      CHECK(p_srcs_holds(run, k).holds);
      const PredicateReport below = p_srcs_holds(run, k - 1);
      CHECK(!below.holds);
      REQUIRE(below.violating_subset.has_value());
      CHECK(!p_src_holds(run, (*below.violating_subset)[0],
                         *below.violating_subset));
    }
  }
}

TEST_CASE("a complete run satisfies every meaningful k") {
  const RunSpec run = complete_run(5);
  for (int k = 1; k < 5; ++k) CHECK(p_srcs_holds(run, k).holds);
}

TEST_CASE("a loops-only run fails with the first subset as witness") {
  const RunSpec run = loops_run(4);
  for (int k = 1; k < 4; ++k) {
    const PredicateReport report = p_srcs_holds(run, k);
    CHECK(!report.holds);
    std::vector<ProcessId> expected(static_cast<std::size_t>(k + 1));
    for (int i = 0; i <= k; ++i) expected[static_cast<std::size_t>(i)] = i;
    CHECK(report.violating_subset == expected);
    CHECK(report.witness_sources.empty());
  }
}

TEST_CASE("k at or above the system size holds vacuously") {
  const RunSpec run = loops_run(3);
  for (int k = 3; k <= 5; ++k) {
    const PredicateReport report = p_srcs_holds(run, k);
    CHECK(report.holds);
    CHECK(report.witness_sources.empty());
    CHECK(!report.violating_subset.has_value());
  }
}

TEST_CASE("reports populate witnesses or a violation, never both") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const RunSpec run = support::arbitrary_run(rng, n);
    for (int k = 1; k < n; ++k) {
      const PredicateReport report = p_srcs_holds(run, k);
      if (report.holds) {
        CHECK(!report.violating_subset.has_value());
        CHECK(static_cast<std::int64_t>(report.witness_sources.size()) ==
              choose(n, k + 1));
      } else {
        CHECK(report.witness_sources.empty());
        CHECK(report.violating_subset.has_value());
      }
    }
  }
}

TEST_CASE("witnesses are the smallest qualifying source") {
  const PredicateReport report = p_srcs_holds(gen_tight(6, 3), 3);
  REQUIRE(report.holds);
  CHECK(static_cast<std::int64_t>(report.witness_sources.size()) ==
        choose(6, 4));
  // The hub is the only process heard by two others, so it witnesses
  // every subset.
  for (const auto& [subset, source] : report.witness_sources) {
    CHECK(source == 2);
  }
  CHECK(report.witness_sources.at({2, 3, 4, 5}) == 2);
}

TEST_CASE("serial and parallel evaluation agree") {
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(5));
    const RunSpec run = support::arbitrary_run(rng, n);
    for (int k = 1; k < n; ++k) {
      CHECK(p_srcs_holds(run, k, ExecPolicy::serial) ==
            p_srcs_holds(run, k, ExecPolicy::parallel));
    }
  }
  CHECK(min_k(gen_tight(7, 4), ExecPolicy::serial) ==
        min_k(gen_tight(7, 4), ExecPolicy::parallel));
}

TEST_CASE("satisfaction is monotone in k") {
  Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const RunSpec run = support::arbitrary_run(rng, n);
    bool seen_holding = false;
    for (int k = 1; k <= n; ++k) {
      const bool holds = p_srcs_holds(run, k).holds;
      if (seen_holding) CHECK(holds);
      seen_holding = seen_holding || holds;
    }
    CHECK(seen_holding);  // k = n always holds vacuously
  }
}

TEST_CASE("p_srcs_holds validates its parameters") {
  const RunSpec run = complete_run(3);
  CHECK_THROWS_AS(p_srcs_holds(run, 0), ParameterOutOfRange);
  CHECK_THROWS_AS(p_srcs_holds(run, -2), ParameterOutOfRange);
}

TEST_CASE("min_k lands on known fixtures") {
  CHECK(min_k(complete_run(4)) == 1);
  CHECK(min_k(gen_tight(6, 3)) == 3);
  CHECK(min_k(loops_run(4)) == 4);
}

TEST_CASE("min_k is the exact threshold") {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const RunSpec run = support::arbitrary_run(rng, n);
    const int threshold = min_k(run);
    CHECK(threshold >= 1);
    CHECK(threshold <= n);
    if (threshold < n) CHECK(p_srcs_holds(run, threshold).holds);
    if (threshold > 1) CHECK(!p_srcs_holds(run, threshold - 1).holds);
  }
}

TEST_CASE("gen_tight produces the documented neighborhoods") {
  const RunSpec run = gen_tight(6, 3);
  CHECK(run.prefix_len() == 0);
  CHECK(timely_neighborhood(run, 0) == std::vector<ProcessId>{0});
  CHECK(timely_neighborhood(run, 1) == std::vector<ProcessId>{1});
  CHECK(timely_neighborhood(run, 2) == std::vector<ProcessId>{2});
  CHECK(timely_neighborhood(run, 3) == std::vector<ProcessId>{2, 3});
  CHECK(timely_neighborhood(run, 4) == std::vector<ProcessId>{2, 4});
  CHECK(timely_neighborhood(run, 5) == std::vector<ProcessId>{2, 5});
}

TEST_CASE("gen_tight honors explicit loner and hub choices") {
  const RunSpec run = gen_tight(5, 3, std::vector<ProcessId>{4, 1}, 0);
  CHECK(timely_neighborhood(run, 1) == std::vector<ProcessId>{1});
  CHECK(timely_neighborhood(run, 4) == std::vector<ProcessId>{4});
  CHECK(timely_neighborhood(run, 2) == std::vector<ProcessId>{0, 2});
  CHECK(timely_neighborhood(run, 3) == std::vector<ProcessId>{0, 3});
  CHECK(timely_neighborhood(run, 0) == std::vector<ProcessId>{0});
  CHECK(p_srcs_holds(run, 3).holds);
  CHECK(!p_srcs_holds(run, 2).holds);
}

TEST_CASE("gen_tight rejects inconsistent parameters") {
  CHECK_THROWS_AS(gen_tight(4, 1), ParameterOutOfRange);
  CHECK_THROWS_AS(gen_tight(4, 4), ParameterOutOfRange);
  CHECK_THROWS_AS(gen_tight(5, 3, std::vector<ProcessId>{0}, 2),
                  ParameterOutOfRange);
  CHECK_THROWS_AS(gen_tight(5, 3, std::vector<ProcessId>{0, 2}, 2),
                  ParameterOutOfRange);
  CHECK_THROWS_AS(gen_tight(5, 3, std::vector<ProcessId>{0, 9}, 2),
                  ParameterOutOfRange);
  CHECK_THROWS_AS(gen_tight(5, 3, std::vector<ProcessId>{0, 1}, 7),
                  ParameterOutOfRange);
}

TEST_CASE("the tight family has exactly k root components") {
  for (int n = 4; n <= 8; ++n) {
    for (int k = 2; k < n; ++k) {
      const RunSpec run = gen_tight(n, k);
      const Digraph skeleton =
          to_digraph(stable_skeleton(run).skeleton.graph);
      CHECK(static_cast<int>(root_components(skeleton).size()) == k);
    }
  }
}

TEST_CASE("random predicate runs satisfy their target k") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 4 + static_cast<int>(seed % 4);
    const int k = 2 + static_cast<int>(seed % static_cast<std::uint64_t>(n - 2));
    const RunSpec run = gen_random_psrcs(n, k, seed, static_cast<int>(seed % 3));
    CHECK(run.n == n);
    CHECK(run.prefix_len() == static_cast<int>(seed % 3));
    CHECK(p_srcs_holds(run, k).holds);
  }
}

TEST_CASE("equal seeds reproduce the same run") {
  const RunSpec a = gen_random_psrcs(6, 3, 99, 2);
  const RunSpec b = gen_random_psrcs(6, 3, 99, 2);
  CHECK(a == b);
  const RunSpec c = gen_random_psrcs(6, 3, 100, 2);
  CHECK(a.n == c.n);  // different seeds usually differ, sizes still match
}

TEST_CASE("gen_random_psrcs validates its parameters") {
  CHECK_THROWS_AS(gen_random_psrcs(4, 0, 1, 0), ParameterOutOfRange);
  CHECK_THROWS_AS(gen_random_psrcs(4, 4, 1, 0), ParameterOutOfRange);
  CHECK_THROWS_AS(gen_random_psrcs(4, 2, 1, -1), ParameterOutOfRange);
}

TEST_CASE("predicate runs keep the root count within k") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const int k = 2 + static_cast<int>(seed % static_cast<std::uint64_t>(n - 2));
    const RunSpec run = gen_random_psrcs(n, k, seed, 1);
    const Digraph skeleton = to_digraph(stable_skeleton(run).skeleton.graph);
    CHECK(static_cast<int>(root_components(skeleton).size()) <= k);
  }
}
