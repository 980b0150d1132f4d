#pragma once

#include <cstdint>
#include <limits>

#include "egta/empirical.hpp"
#include "egta/game.hpp"

namespace egta {

struct RdConfig {
  double step_size = 1e-3;
  std::int64_t max_steps = 100000;
  double regret_threshold = 0.0;
  double prd_lower_bound = 1e-10;
};

struct SolverResult {
  MixedProfile profile;
  double regret_total = 0.0;
  std::int64_t steps_used = 0;
  bool hit_threshold = false;
  // logit fixed-point residual; meaningful for qre_logit only
  double residual = std::numeric_limits<double>::quiet_NaN();
};

// One discrete replicator step: every player updated simultaneously from
// the pre-step profile, then projected back onto the simplex.
MixedProfile rd_step(const Game& game, const MixedProfile& profile, double alpha);

// Replicator dynamics truncated by a regret threshold. Runs from the
// uniform profile; stops as soon as the regret of the current iterate or
// of the running trajectory average drops to the threshold (the average
// is what converges on zero-sum games whose raw iterates cycle). If
// max_steps is exhausted, returns the lowest-regret profile seen.
SolverResult rrd(const Game& game, const RdConfig& cfg);

// Replicator dynamics over the truncated simplex {sigma >= floor}: runs
// max_steps steps and returns the final iterate.
SolverResult prd(const Game& game, const RdConfig& cfg);

// Plain replicator run for an exact number of steps (no stopping rule).
MixedProfile fixed_rd(const Game& game, std::int64_t steps, double alpha);

// Logit quantal-response fixed point, damped iteration from uniform.
SolverResult qre_logit(const Game& game, double tau, std::int64_t iters,
                       double damping);

// Exact 2-player Nash equilibrium. Zero-sum games go through a minimax LP
// (dense tableau simplex, Bland's rule); otherwise support enumeration in
// increasing support size, lexicographic within a size, solving each
// candidate's indifference system. Output regret is verified <= 1e-8.
MixedProfile nash_2p(const Game& game);

// N-player equilibrium search: exhaustive pure scan, then best-of-restarts
// replicator descent with trajectory-minimum tracking, then support
// enumeration polished by damped Newton on the indifference system.
// Never throws; the caller judges quality by the achieved regret.
MixedProfile nash_np(const Game& game, int restarts = 8, std::uint64_t seed = 0);

// Minimum-regret constrained profile: minimizes the full-game regret sum
// over the restricted mixed space by multi-start projected subgradient,
// then a deterministic smoothed (log-sum-exp) annealing polish. The
// returned profile is over the restricted index space.
SolverResult mrcp(const Game& full, const StrategySets& sets, int restarts = 16,
                  std::uint64_t seed = 0);

}  // namespace egta
