#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "clausecut/solver.hpp"

namespace clausecut {

// Objective sampler v1: a splitmix64 stream seeded with `seed`; variables
// 1..n draw, in order, one uniform integer each from [-weight_range,
// weight_range]. Reproducible byte-for-byte across platforms.
CnfOptInstance generate_instance(const CnfFormula& f, long long weight_range,
                                 uint64_t seed);

// Seed used for a named instance inside a batch: mixes the batch seed with a
// stable hash of the file name, so each instance gets its own stream while
// the whole batch stays reproducible.
uint64_t instance_seed(uint64_t batch_seed, const std::string& instance_name);

struct BenchConfig {
  // Files or directories; directories are scanned (non-recursively) for
  // .cnf / .wcnf / .cnfopt and the full list is sorted by file name.
  std::vector<std::filesystem::path> inputs;
  std::vector<SepAlgo> modes = {SepAlgo::None, SepAlgo::Icca, SepAlgo::Lcca};
  long long weight_range = 10;  // for objectives generated onto plain CNFs
  uint64_t seed = 0;
  CutLoopLimits limits;
  bool probe_nodes = true;
  double timeout_seconds = 7200.0;  // per instance and mode
  int jobs = 1;
  std::filesystem::path output_dir;  // empty: nothing is written
  bool write_cut_logs = false;
};

struct BenchRecord {
  std::string instance;
  SepAlgo mode = SepAlgo::None;
  long long weight_range = 0;
  uint64_t seed = 0;  // per-instance objective seed
  bool failed = false;
  std::string error;  // set when failed (unreadable or malformed input)
  SolveStatus status = SolveStatus::Optimal;
  long long objective = 0;
  SolveStats stats;
};

// Runs every (instance, mode) pair, optionally across `jobs` worker threads.
// Records come back ordered by instance then configured mode order,
// independent of scheduling; a broken input yields a failed record, not an
// aborted batch. Output files (when output_dir is set): results.csv,
// sat_time.csv, nodes.csv, cactus.csv, plus one cut log per record under
// cutlogs/ when enabled.
std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg);

std::string results_csv(std::span<const BenchRecord> records);
// (initial SAT time, mean emitted clause length, total time) per record.
std::string sat_time_csv(std::span<const BenchRecord> records);
// (nodes visited, feasible nodes) per record.
std::string nodes_csv(std::span<const BenchRecord> records);
// Cactus data: per mode, runtimes of solved records sorted ascending with
// cumulative sums, indexed 1..n.
std::string emit_cactus_data(std::span<const BenchRecord> records);

// One line per cut: origin, length before/after minimization, separation
// seconds, then the clause literals.
std::string cut_log_text(const SolveResult& r);

void write_benchmark_outputs(const BenchConfig& cfg,
                             std::span<const BenchRecord> records);

}  // namespace clausecut
