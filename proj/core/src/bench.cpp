#include "clausecut/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "clausecut/io.hpp"
#include "clausecut/rng.hpp"

namespace clausecut {

namespace fs = std::filesystem;

CnfOptInstance generate_instance(const CnfFormula& f, long long weight_range,
                                 uint64_t seed) {
  if (weight_range < 0)
    throw std::invalid_argument("generate_instance: negative weight range");
  CnfOptInstance inst;
  inst.formula = f;
  inst.objective.assign(static_cast<size_t>(f.num_variables()) + 1, 0);
  SplitMix64 rng(seed);
  uint64_t span = 2 * static_cast<uint64_t>(weight_range) + 1;
  for (int v = 1; v <= f.num_variables(); ++v)
    inst.objective[static_cast<size_t>(v)] =
        static_cast<long long>(rng.bounded(span)) - weight_range;
  return inst;
}

uint64_t instance_seed(uint64_t batch_seed, const std::string& name) {
  SplitMix64 mix(batch_seed ^ fnv1a64(name.data(), name.size()));
  return mix.next();
}

namespace {

bool bench_extension(const fs::path& p) {
  auto e = p.extension().string();
  return e == ".cnf" || e == ".wcnf" || e == ".cnfopt";
}

std::vector<fs::path> collect_inputs(const BenchConfig& cfg) {
  std::vector<fs::path> files;
  for (const auto& in : cfg.inputs) {
    if (fs::is_directory(in)) {
      for (const auto& ent : fs::directory_iterator(in))
        if (ent.is_regular_file() && bench_extension(ent.path()))
          files.push_back(ent.path());
    } else {
      files.push_back(in);
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  return files;
}

CnfOptInstance load_instance(const fs::path& p, long long weight_range,
                             uint64_t seed) {
  auto ext = p.extension().string();
  if (ext == ".wcnf") return wcnf_to_cnfopt(load_wcnf_file(p.string()));
  if (ext == ".cnfopt") return load_cnfopt_file(p.string());
  return generate_instance(load_cnf_file(p.string()), weight_range, seed);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* status_str(const BenchRecord& r) {
  if (r.failed) return "error";
  switch (r.status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimedOut: return "timeout";
  }
  return "?";
}

}  // namespace

std::string cut_log_text(const SolveResult& r) {
  std::ostringstream out;
  for (const auto& e : r.cuts) {
    out << (e.cut.origin == CutOrigin::Icca ? "icca" : "lcca") << ' '
        << e.cut.length_before << ' ' << e.cut.length_after << ' '
        << fmt(e.cut.separation_seconds) << ' ';
    for (Lit l : e.cut.clause.literals()) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg) {
  auto files = collect_inputs(cfg);

  struct Task {
    fs::path file;
    SepAlgo mode;
  };
  std::vector<Task> tasks;
  for (const auto& f : files)
    for (SepAlgo m : cfg.modes) tasks.push_back({f, m});

  std::vector<BenchRecord> records(tasks.size());
  std::vector<std::string> cut_logs(cfg.write_cut_logs ? tasks.size() : 0);

  auto run_task = [&](size_t i) {
    const Task& t = tasks[i];
    BenchRecord& rec = records[i];
    rec.instance = t.file.filename().string();
    rec.mode = t.mode;
    rec.weight_range = cfg.weight_range;
    rec.seed = instance_seed(cfg.seed, rec.instance);
    try {
      CnfOptInstance inst = load_instance(t.file, cfg.weight_range, rec.seed);
      SolveOptions opts;
      opts.algo = t.mode;
      opts.limits = cfg.limits;
      opts.seed = cfg.seed;
      opts.probe_nodes = cfg.probe_nodes;
      opts.timeout_seconds = cfg.timeout_seconds;
      SolveResult res = solve_instance(inst, opts);
      rec.status = res.status;
      rec.objective = res.objective;
      rec.stats = res.stats;
      if (cfg.write_cut_logs) cut_logs[i] = cut_log_text(res);
    } catch (const std::exception& ex) {
      rec.failed = true;
      rec.error = ex.what();
    }
  };

  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || tasks.size() <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < tasks.size();
           i = next.fetch_add(1))
        run_task(i);
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::min<int>(jobs, static_cast<int>(tasks.size()));
         ++j)
      pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (!cfg.output_dir.empty()) {
    write_benchmark_outputs(cfg, records);
    if (cfg.write_cut_logs) {
      fs::create_directories(cfg.output_dir / "cutlogs");
      for (size_t i = 0; i < tasks.size(); ++i) {
        if (records[i].failed) continue;
        fs::path p = cfg.output_dir / "cutlogs" /
                     (records[i].instance + "-" + to_string(records[i].mode) +
                      ".cutlog");
        std::ofstream(p) << cut_logs[i];
      }
    }
  }
  return records;
}

std::string results_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "instance,mode,weight_range,seed,status,objective,n_cuts,"
         "avg_length_before,avg_length_after,initial_sat_seconds,"
         "cut_loop_seconds,bnb_seconds,total_seconds,nodes_visited,"
         "feasible_nodes,solved_at_root\n";
  for (const auto& r : records) {
    out << r.instance << ',' << to_string(r.mode) << ',' << r.weight_range
        << ',' << r.seed << ',' << status_str(r) << ',';
    if (!r.failed && r.status == SolveStatus::Optimal) out << r.objective;
    out << ',' << r.stats.n_cuts << ',' << fmt(r.stats.avg_length_before)
        << ',' << fmt(r.stats.avg_length_after) << ','
        << fmt(r.stats.initial_sat_seconds) << ','
        << fmt(r.stats.cut_loop_seconds) << ',' << fmt(r.stats.bnb_seconds)
        << ',' << fmt(r.stats.total_seconds) << ',' << r.stats.nodes_visited
        << ',' << r.stats.feasible_nodes << ','
        << (r.stats.solved_at_root ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sat_time_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "instance,mode,initial_sat_seconds,avg_clause_length,total_seconds\n";
  for (const auto& r : records) {
    if (r.failed) continue;
    out << r.instance << ',' << to_string(r.mode) << ','
        << fmt(r.stats.initial_sat_seconds) << ','
        << fmt(r.stats.avg_length_after) << ',' << fmt(r.stats.total_seconds)
        << '\n';
  }
  return out.str();
}

std::string nodes_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "instance,mode,nodes_visited,feasible_nodes\n";
  for (const auto& r : records) {
    if (r.failed) continue;
    out << r.instance << ',' << to_string(r.mode) << ','
        << r.stats.nodes_visited << ',' << r.stats.feasible_nodes << '\n';
  }
  return out.str();
}

std::string emit_cactus_data(std::span<const BenchRecord> records) {
  // Solved means a proven answer (optimal or infeasible) within the limits.
  std::map<std::string, std::vector<double>> per_mode;
  for (const auto& r : records) {
    if (r.failed || r.status == SolveStatus::TimedOut) continue;
    per_mode[to_string(r.mode)].push_back(r.stats.total_seconds);
  }
  std::ostringstream out;
  out << "mode,n,runtime_seconds,cumulative_seconds\n";
  for (auto& [mode, times] : per_mode) {
    std::sort(times.begin(), times.end());
    double cum = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
      cum += times[i];
      out << mode << ',' << (i + 1) << ',' << fmt(times[i]) << ',' << fmt(cum)
          << '\n';
    }
  }
  return out.str();
}

void write_benchmark_outputs(const BenchConfig& cfg,
                             std::span<const BenchRecord> records) {
  fs::create_directories(cfg.output_dir);
  std::ofstream(cfg.output_dir / "results.csv") << results_csv(records);
  std::ofstream(cfg.output_dir / "sat_time.csv") << sat_time_csv(records);
  std::ofstream(cfg.output_dir / "nodes.csv") << nodes_csv(records);
  std::ofstream(cfg.output_dir / "cactus.csv") << emit_cactus_data(records);
}

}  // namespace clausecut
