// Command-line front end: solve one instance, generate objectives onto a
// CNF, or run a benchmark batch that writes the CSV outputs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clausecut/bench.hpp"
#include "clausecut/io.hpp"
#include "clausecut/solver.hpp"

namespace fs = std::filesystem;
using namespace clausecut;

namespace {

CnfOptInstance load_for_solve(const std::string& file, long long weight_range,
                              uint64_t seed) {
  fs::path p(file);
  auto ext = p.extension().string();
  if (ext == ".wcnf") return wcnf_to_cnfopt(load_wcnf_file(file));
  if (ext == ".cnfopt") return load_cnfopt_file(file);
  // Plain CNF: sample an objective the same way bench does.
  return generate_instance(load_cnf_file(file), weight_range,
                           instance_seed(seed, p.filename().string()));
}

int cmd_solve(const std::string& file, const std::string& mode, int max_cuts,
              double time_budget, uint64_t seed, bool probe,
              long long weight_range, double timeout,
              const std::string& cut_log_path) {
  auto algo = sep_algo_from_string(mode);
  if (!algo) {
    std::cerr << "unknown mode: " << mode << "\n";
    return 2;
  }
  CnfOptInstance inst = load_for_solve(file, weight_range, seed);
  SolveOptions opts;
  opts.algo = *algo;
  opts.limits.max_cuts = max_cuts;
  opts.limits.time_budget_seconds = time_budget;
  opts.seed = seed;
  opts.probe_nodes = probe;
  opts.timeout_seconds = timeout;
  SolveResult res = solve_instance(inst, opts);
  std::string log_ref;
  if (!cut_log_path.empty()) {
    std::ofstream(cut_log_path) << cut_log_text(res);
    log_ref = cut_log_path;
  }
  std::cout << to_json(res, fs::path(file).filename().string(), log_ref)
            << "\n";
  return res.status == SolveStatus::Infeasible ? 1 : 0;
}

int cmd_gen(const std::string& cnf, long long weight_range, uint64_t seed,
            const std::string& out) {
  CnfOptInstance inst = generate_instance(load_cnf_file(cnf), weight_range,
                                          seed);
  save_cnfopt_file(inst, out);
  std::cerr << "wrote " << out << " (" << inst.formula.num_variables()
            << " vars, " << inst.formula.clauses().size() << " clauses)\n";
  return 0;
}

int cmd_bench(const std::vector<std::string>& inputs,
              const std::vector<std::string>& modes, long long weight_range,
              uint64_t seed, const std::string& outdir, int jobs,
              double timeout, int max_cuts, double time_budget, bool no_probe,
              bool cut_logs) {
  BenchConfig cfg;
  for (const auto& in : inputs) cfg.inputs.emplace_back(in);
  cfg.modes.clear();
  for (const auto& m : modes) {
    auto algo = sep_algo_from_string(m);
    if (!algo) {
      std::cerr << "unknown mode: " << m << "\n";
      return 2;
    }
    cfg.modes.push_back(*algo);
  }
  cfg.weight_range = weight_range;
  cfg.seed = seed;
  cfg.limits.max_cuts = max_cuts;
  cfg.limits.time_budget_seconds = time_budget;
  cfg.probe_nodes = !no_probe;
  cfg.timeout_seconds = timeout;
  cfg.jobs = jobs;
  cfg.output_dir = outdir;
  cfg.write_cut_logs = cut_logs;

  auto records = run_benchmark(cfg);
  if (records.empty())
    std::cerr << "warning: no instances found\n";
  for (const auto& r : records) {
    std::printf("%-28s %-5s %-10s ", r.instance.c_str(), to_string(r.mode),
                r.failed ? "error" : to_string(r.status));
    if (r.failed)
      std::printf("%s\n", r.error.c_str());
    else if (r.status == SolveStatus::Optimal)
      std::printf("obj %-8lld cuts %-4d nodes %-8lld %.3fs\n", r.objective,
                  r.stats.n_cuts, r.stats.nodes_visited,
                  r.stats.total_seconds);
    else
      std::printf("cuts %-4d nodes %-8lld %.3fs\n", r.stats.n_cuts,
                  r.stats.nodes_visited, r.stats.total_seconds);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clause-cut optimizer for CNF with linear objectives"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance");
  std::string file, mode = "lcca", cut_log_path;
  int max_cuts = 150;
  double time_budget = 60.0, timeout = 7200.0;
  uint64_t seed = 0;
  bool probe = false;
  long long weight_range = 10;
  solve->add_option("file", file, ".cnfopt, .wcnf, or .cnf instance")
      ->required();
  solve->add_option("--mode", mode, "icca|lcca|none (default lcca)");
  solve->add_option("--max-cuts", max_cuts, "cut loop limit (default 150)");
  solve->add_option("--time-budget", time_budget,
                    "cut loop budget, seconds (default 60)");
  solve->add_option("--seed", seed, "SAT engine / objective seed");
  solve->add_flag("--probe-nodes", probe,
                  "SAT-probe fractional nodes during branch and bound");
  solve->add_option("--weight-range", weight_range,
                    "objective range for plain .cnf inputs (default 10)");
  solve->add_option("--timeout", timeout,
                    "overall wall-clock limit, seconds (default 7200)");
  solve->add_option("--cut-log", cut_log_path, "write the cut log here");

  // gen
  auto* gen = app.add_subcommand("gen", "attach a sampled objective to a CNF");
  std::string gen_cnf, gen_out;
  long long gen_w = 10;
  uint64_t gen_seed = 0;
  gen->add_option("cnf", gen_cnf, "input DIMACS CNF")->required();
  gen->add_option("--weight-range", gen_w, "coefficients drawn from [-W, W]")
      ->required();
  gen->add_option("--seed", gen_seed, "sampler seed")->required();
  gen->add_option("-o,--output", gen_out, "output .cnfopt path")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run a batch and write CSVs");
  std::vector<std::string> bench_inputs;
  std::vector<std::string> bench_modes = {"none", "icca", "lcca"};
  std::string bench_out;
  long long bench_w = 10;
  uint64_t bench_seed = 0;
  int jobs = 1, bench_max_cuts = 150;
  double bench_timeout = 7200.0, bench_budget = 60.0;
  bool no_probe = false, cut_logs = false;
  bench->add_option("inputs", bench_inputs, "instance files or directories")
      ->required();
  bench->add_option("--modes", bench_modes, "subset of none,icca,lcca")
      ->delimiter(',');
  bench->add_option("--weight-range", bench_w,
                    "objective range for .cnf inputs (default 10)");
  bench->add_option("--seed", bench_seed, "batch seed (default 0)");
  bench->add_option("-o,--output", bench_out, "CSV output directory")
      ->required();
  bench->add_option("--jobs", jobs, "worker threads (default 1)");
  bench->add_option("--timeout", bench_timeout,
                    "per-instance limit, seconds (default 7200)");
  bench->add_option("--max-cuts", bench_max_cuts,
                    "cut loop limit (default 150)");
  bench->add_option("--time-budget", bench_budget,
                    "cut loop budget, seconds (default 60)");
  bench->add_flag("--no-probe-nodes", no_probe,
                  "disable node feasibility probing");
  bench->add_flag("--cut-logs", cut_logs, "write per-run cut logs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve)
      return cmd_solve(file, mode, max_cuts, time_budget, seed, probe,
                       weight_range, timeout, cut_log_path);
    if (*gen) return cmd_gen(gen_cnf, gen_w, gen_seed, gen_out);
    return cmd_bench(bench_inputs, bench_modes, bench_w, bench_seed, bench_out,
                     jobs, bench_timeout, bench_max_cuts, bench_budget,
                     no_probe, cut_logs);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
}
