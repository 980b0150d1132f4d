#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egta/empirical.hpp"
#include "egta/meta_strategy.hpp"

namespace egta {

enum class OracleMode { kMixture, kSample };

struct PsroConfig {
  int max_iterations = 50;
  MssSpec mss;
  PayoffEstimator estimator;
  double epsilon_stop = 1e-6;
  bool track_ne_regret = false;
  std::uint64_t seed = 0;
  // respond to the mixed target directly, or to one sampled pure profile
  OracleMode oracle = OracleMode::kMixture;
  // when the best response is already in X, add the best strategy outside
  bool force_outside_x = false;
  bool bps_enabled = false;
  double bps_tol = 1e-6;
};

struct IterationRecord {
  int iteration = 0;
  std::vector<int> strategy_counts;
  MixedProfile target;  // over the restricted sets at this iteration
  double target_regret_full = 0.0;
  std::optional<double> ne_regret_full;
  std::vector<std::vector<int>> new_strategies;  // full indices, per player
  std::int64_t profiles_evaluated_cum = 0;
  std::optional<double> lambda_used;
};

enum class Termination { kEpsClosed, kMaxIterations };

struct RunTrace {
  std::vector<IterationRecord> records;
  Termination terminated_by = Termination::kMaxIterations;
  std::vector<std::vector<int>> final_sets;  // full indices per player
  std::vector<std::string> warnings;
};

// True iff every player's exact full-game best response to the target lies
// inside the empirical sets and the target's restricted-game regret is at
// most epsilon.
bool epsilon_closed(const Game& full, const EmpiricalGame& emp,
                    const MixedProfile& target_restricted, double epsilon);

RunTrace psro_run(const Game& full, const StrategySets& initial,
                  const PsroConfig& cfg);

}  // namespace egta
