#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skel/dot.hpp"
#include "skel/json_io.hpp"
#include "skel/predicates.hpp"
#include "skel/simulator.hpp"

namespace {

using namespace skel;

class RoundOutOfRange : public Error {
 public:
  explicit RoundOutOfRange(const std::string& what) : Error(what) {}
};

class UnknownProcess : public Error {
 public:
  explicit UnknownProcess(const std::string& what) : Error(what) {}
};

std::vector<Value> identity_proposals(int n) {
  std::vector<Value> proposals(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) proposals[static_cast<std::size_t>(p)] = p;
  return proposals;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open " + out_path + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + out_path);
}

struct SimulateArgs {
  std::string scenario_path;
  std::vector<Value> proposals;
  std::optional<Round> horizon;
  std::string out_path;
  bool parallel = false;
};

int run_simulate(const SimulateArgs& args) {
  const Scenario scenario = load_scenario(args.scenario_path);
  const int n = scenario.run.n;

  std::vector<Value> proposals;
  if (!args.proposals.empty()) {
    proposals = args.proposals;
  } else if (scenario.proposals.has_value()) {
    proposals = *scenario.proposals;
  } else {
    proposals = identity_proposals(n);
  }
  if (static_cast<int>(proposals.size()) != n) {
    throw Error("expected " + std::to_string(n) + " proposals, got " +
                std::to_string(proposals.size()));
  }

  SimOptions options;
  options.horizon = args.horizon;
  options.policy = args.parallel ? ExecPolicy::parallel : ExecPolicy::serial;

  Trace trace;
  try {
    trace = execute(scenario.run, proposals, options);
  } catch (const HorizonExceeded& e) {
    std::cout << "no termination within " << e.horizon() << " rounds; "
              << e.undecided().size() << " processes undecided\n";
    return 1;
  }

  std::map<Value, int> histogram;
  Round last_decision = 0;
  for (const auto& [p, d] : trace.decisions) {
    ++histogram[d.value];
    if (d.round > last_decision) last_decision = d.round;
  }
  for (const auto& [value, count] : histogram) {
    std::cout << "value " << value << ": " << count
              << (count == 1 ? " process\n" : " processes\n");
  }
  std::cout << histogram.size() << " distinct value"
            << (histogram.size() == 1 ? "" : "s") << "; all decided by round "
            << last_decision << "\n";

  if (!args.out_path.empty()) save_json(args.out_path, json_of(trace));
  return 0;
}

struct CheckPredicateArgs {
  std::string scenario_path;
  std::optional<int> k;
  bool parallel = false;
};

int run_check_predicate(const CheckPredicateArgs& args) {
  const Scenario scenario = load_scenario(args.scenario_path);
  const ExecPolicy policy =
      args.parallel ? ExecPolicy::parallel : ExecPolicy::serial;
  if (args.k.has_value()) {
    const PredicateReport report = p_srcs_holds(scenario.run, *args.k, policy);
    std::cout << render_json(json_of(report));
    return report.holds ? 0 : 1;
  }
  Json j = Json::object();
  j["min_k"] = min_k(scenario.run, policy);
  std::cout << render_json(j);
  return 0;
}

struct GenerateArgs {
  std::string kind;
  int n = 0;
  std::optional<int> k;
  std::uint64_t seed = 0;
  std::optional<int> prefix_len;
  std::string out_path;
};

int run_generate(const GenerateArgs& args) {
  Scenario scenario;
  if (args.kind == "tight") {
    if (!args.k.has_value()) throw Error("--k is required for kind 'tight'");
    scenario.run = gen_tight(args.n, *args.k);
    scenario.k = *args.k;
  } else if (args.kind == "complete") {
    if (args.n < 1) throw Error("--n must be at least 1");
    scenario.run =
        validate_run_spec(RunSpec{args.n, {}, RoundGraph::complete(args.n)});
    scenario.k = args.k.value_or(1);
  } else if (args.kind == "random") {
    if (!args.k.has_value()) throw Error("--k is required for kind 'random'");
    // Short prefixes keep the first n-round stability window at the true
    // stabilization round, which the decision-round bound is stated against.
    const int prefix_len = args.prefix_len.value_or(std::max(0, args.n - 1));
    scenario.run = gen_random_psrcs(args.n, *args.k, args.seed, prefix_len);
    scenario.k = *args.k;
  } else {
    throw Error("unknown kind '" + args.kind +
                "' (expected tight, complete, or random)");
  }
  save_json(args.out_path, json_of(scenario));
  std::cout << "wrote " << args.out_path << " (n=" << scenario.run.n
            << ", k=" << *scenario.k << ")\n";
  return 0;
}

struct VerifyArgs {
  std::string trace_path;
  std::optional<int> k;
};

int run_verify(const VerifyArgs& args) {
  const Trace trace = load_trace(args.trace_path);

  VerifierReport combined;
  combined.checks.push_back(check_validity(trace));
  combined.checks.push_back(check_termination_bound(trace));
  const VerifierReport approx = verify_approximation(trace);
  combined.checks.insert(combined.checks.end(), approx.checks.begin(),
                         approx.checks.end());

  if (args.k.has_value()) {
    combined.checks.push_back(check_k_agreement(trace, *args.k));
    if (p_srcs_holds(trace.run, *args.k).holds) {
      const VerifierReport agreement =
          verify_agreement_structure(trace, *args.k);
      combined.checks.insert(combined.checks.end(), agreement.checks.begin(),
                             agreement.checks.end());
    } else {
      std::cerr << "note: source coverage does not hold at k=" << *args.k
                << "; agreement-structure checks skipped\n";
    }
  }

  combined.passed = true;
  for (const CheckResult& c : combined.checks) {
    combined.passed = combined.passed && c.passed;
  }
  std::cout << render_json(json_of(combined));
  return combined.passed ? 0 : 1;
}

struct ExportDotArgs {
  std::string input_path;
  std::optional<Round> round;
  bool stable = false;
  std::string approx;
  bool include_self_loops = false;
  std::string out_path;
};

int run_export_dot(const ExportDotArgs& args) {
  const int selections = (args.round.has_value() ? 1 : 0) +
                         (args.stable ? 1 : 0) + (args.approx.empty() ? 0 : 1);
  if (selections != 1) {
    throw Error("choose exactly one of --round, --stable, --approx");
  }

  const Json j = load_json(args.input_path);
  const bool is_trace = j.is_object() && j.contains("rounds");

  if (!args.approx.empty()) {
    if (!is_trace) {
      throw Error("--approx needs a trace file, not a scenario");
    }
    const Trace trace = trace_from_json(j);
    const auto sep = args.approx.find('@');
    ProcessId p = -1;
    Round r = 0;
    try {
      if (sep == std::string::npos) throw std::invalid_argument("no @");
      p = std::stoi(args.approx.substr(0, sep));
      r = std::stoi(args.approx.substr(sep + 1));
    } catch (const std::exception&) {
      throw Error("--approx expects <process>@<round>, e.g. 0@3");
    }
    if (p < 0 || p >= trace.run.n) {
      throw UnknownProcess("no process " + std::to_string(p) + " in a run of " +
                           std::to_string(trace.run.n));
    }
    if (r < 1 || r > static_cast<Round>(trace.rounds.size())) {
      throw RoundOutOfRange("round " + std::to_string(r) +
                            " not recorded (trace covers 1.." +
                            std::to_string(trace.rounds.size()) + ")");
    }
    const ApproxGraph& g = trace.rounds[static_cast<std::size_t>(r - 1)]
                               .states_after[static_cast<std::size_t>(p)]
                               .graph;
    const std::string name =
        "approx_p" + std::to_string(p) + "_r" + std::to_string(r);
    emit(dot_of(g, name, args.include_self_loops), args.out_path);
    return 0;
  }

  const RunSpec run =
      is_trace ? trace_from_json(j).run : scenario_from_json(j).run;
  if (args.stable) {
    emit(dot_of(stable_skeleton(run).skeleton.graph, "skeleton_stable",
                args.include_self_loops),
         args.out_path);
    return 0;
  }
  if (*args.round < 1) {
    throw RoundOutOfRange("rounds start at 1, got " +
                          std::to_string(*args.round));
  }
  emit(dot_of(skeleton_at(run, *args.round).graph,
              "skeleton_round_" + std::to_string(*args.round),
              args.include_self_loops),
       args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-based k-set agreement: simulate, generate, and verify"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the protocol and record a trace");
  simulate->add_option("scenario", sim.scenario_path, "Scenario JSON file")
      ->required();
  simulate
      ->add_option("--proposals", sim.proposals,
                   "Comma-separated proposals, one per process "
                   "(default: the scenario's, else 0..n-1)")
      ->delimiter(',');
  simulate->add_option("--horizon", sim.horizon, "Round limit override");
  simulate->add_option("--out", sim.out_path, "Trace JSON output path");
  simulate->add_flag("--parallel", sim.parallel,
                     "Run per-process transitions on OpenMP threads");

  CheckPredicateArgs pred;
  CLI::App* check = app.add_subcommand(
      "check-predicate", "Check source coverage, or find the smallest k");
  check->add_option("scenario", pred.scenario_path, "Scenario JSON file")
      ->required();
  check->add_option("--k", pred.k, "Check this k (omit to search)");
  check->add_flag("--parallel", pred.parallel,
                  "Enumerate subsets on OpenMP threads");

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write a scenario file");
  generate
      ->add_option("--kind", gen.kind, "One of: tight, complete, random")
      ->required();
  generate->add_option("--n", gen.n, "Number of processes")->required();
  generate->add_option("--k", gen.k, "Coverage parameter");
  generate->add_option("--seed", gen.seed, "Random seed (kind 'random')");
  generate->add_option("--prefix-len", gen.prefix_len,
                       "Rounds before the repeating tail (kind 'random', "
                       "default n-1)");
  generate->add_option("--out", gen.out_path, "Scenario output path")
      ->required();

  VerifyArgs ver;
  CLI::App* verify =
      app.add_subcommand("verify", "Check a recorded trace against the run");
  verify->add_option("trace", ver.trace_path, "Trace JSON file")->required();
  verify->add_option("--k", ver.k,
                     "Also check agreement at this k (structure checks run "
                     "only when coverage holds)");

  ExportDotArgs dot;
  CLI::App* export_dot =
      app.add_subcommand("export-dot", "Render a graph as Graphviz text");
  export_dot
      ->add_option("input", dot.input_path, "Scenario or trace JSON file")
      ->required();
  export_dot->add_option("--round", dot.round, "Skeleton as of this round");
  export_dot->add_flag("--stable", dot.stable, "The stable skeleton");
  export_dot->add_option("--approx", dot.approx,
                         "A process's approximation graph, as <process>@<round> "
                         "(trace input only)");
  export_dot->add_flag("--include-self-loops", dot.include_self_loops,
                       "Keep self-loops in the output");
  export_dot->add_option("--out", dot.out_path, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (check->parsed()) return run_check_predicate(pred);
    if (generate->parsed()) return run_generate(gen);
    if (verify->parsed()) return run_verify(ver);
    if (export_dot->parsed()) return run_export_dot(dot);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
