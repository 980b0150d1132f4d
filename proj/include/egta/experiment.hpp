#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egta/game_factory.hpp"
#include "egta/psro.hpp"

namespace egta {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct GameSource {
  std::string kind = "random";  // random | mrcp_closed | long_path | file
  RandomGameSpec random;
  int long_path_n = 100;
  std::string path;
  std::string label() const;
  Game build() const;
};

struct ExperimentConfig {
  GameSource game;
  std::vector<MssSpec> mss_list;
  std::vector<std::string> mss_names;
  std::vector<std::uint64_t> seeds;
  PsroConfig psro;  // template; seed/estimator filled per cell
  int initial_strategies = 1;
  std::vector<double> lambda_sweep;
  std::string output_dir = "out";
  int jobs = 1;
  std::uint64_t master_seed = 0;
};

// Flat `key = value` text with `[section]` headers; `[mss]` may repeat.
// Parse errors carry line numbers.
ExperimentConfig parse_config(const std::string& path);

struct CellSpec {
  int index = 0;
  int mss_index = 0;
  std::uint64_t seed = 0;
  std::optional<double> lambda;  // sweep value for RRD cells
  std::string name;
};

struct CellOutcome {
  CellSpec spec;
  RunTrace trace;
  double wall_seconds = 0.0;
  std::string error;  // empty on success
};

struct ExperimentResult {
  std::vector<CellOutcome> cells;
  int exit_status = 0;
};

// Runs every (MSS, seed[, lambda]) cell and writes trace.csv, manifest.txt
// and targets/<cell>/<iter>.profile under output_dir.
ExperimentResult run_experiment(const ExperimentConfig& config, bool quiet);

std::vector<CellSpec> enumerate_cells(const ExperimentConfig& config);

// trace.csv text for a finished experiment (deterministic for fixed config)
std::string render_trace_csv(const ExperimentConfig& config,
                             const std::vector<CellOutcome>& cells);

}  // namespace egta
