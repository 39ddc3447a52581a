// Compares the serial and OpenMP lanes of the two parallelizable kernels:
// subset coverage checking and lock-step execution. Both lanes must produce
// identical results; timings are informational and depend on the host's
// thread count.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "skel/predicates.hpp"
#include "skel/run_model.hpp"
#include "skel/simulator.hpp"

namespace {

using namespace skel;

template <typename Fn>
double best_of(int repetitions, Fn&& fn) {
  double best_ms = 0.0;
  for (int rep = 0; rep < repetitions; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    if (rep == 0 || elapsed.count() < best_ms) best_ms = elapsed.count();
  }
  return best_ms;
}

void report(const std::string& label, double serial_ms, double parallel_ms,
            bool identical) {
  std::cout << std::fixed << std::setprecision(2) << label << ": serial "
            << serial_ms << " ms, parallel " << parallel_ms << " ms (ratio "
            << std::setprecision(2) << serial_ms / parallel_ms << "x), results "
            << (identical ? "identical" : "DIFFER") << "\n";
}

bool bench_predicate() {
  const int n = 22;
  const int k = 11;
  const RunSpec run = gen_random_psrcs(n, k, 7, 5);

  PredicateReport serial_report;
  PredicateReport parallel_report;
  const double serial_ms = best_of(
      5, [&] { serial_report = p_srcs_holds(run, k, ExecPolicy::serial); });
  const double parallel_ms = best_of(
      5, [&] { parallel_report = p_srcs_holds(run, k, ExecPolicy::parallel); });

  const bool identical = serial_report == parallel_report;
  report("coverage n=" + std::to_string(n) + " k=" + std::to_string(k),
         serial_ms, parallel_ms, identical);
  return identical;
}

bool bench_execute() {
  const int n = 24;
  const RunSpec run = gen_random_psrcs(n, 12, 3, 10);
  std::vector<Value> proposals(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    proposals[static_cast<std::size_t>(p)] = (p * 7) % n;
  }

  SimOptions serial_options;
  serial_options.record_rounds = false;
  SimOptions parallel_options = serial_options;
  parallel_options.policy = ExecPolicy::parallel;

  Trace serial_trace;
  Trace parallel_trace;
  const double serial_ms =
      best_of(3, [&] { serial_trace = execute(run, proposals, serial_options); });
  const double parallel_ms = best_of(
      3, [&] { parallel_trace = execute(run, proposals, parallel_options); });

  const bool identical = serial_trace == parallel_trace;
  report("execute n=" + std::to_string(n), serial_ms, parallel_ms, identical);
  return identical;
}

}  // namespace

int main() {
  const bool predicate_ok = bench_predicate();
  const bool execute_ok = bench_execute();
  if (!predicate_ok || !execute_ok) {
    std::cerr << "serial and parallel lanes disagree\n";
    return 1;
  }
  return 0;
}
