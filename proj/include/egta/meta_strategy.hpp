#pragma once

#include <cstdint>
#include <string>

#include "egta/empirical.hpp"
#include "egta/solvers.hpp"

namespace egta {

enum class MssKind {
  kDoNash,
  kFpUniform,
  kPrd,
  kRrd,
  kFixedRd,
  kQre,
  kMrcpOracle,
  kLastStrategy,
  kNashUniformMix,
};

std::string mss_kind_name(MssKind kind);
MssKind mss_kind_from_name(const std::string& name);

enum class LambdaMode { kConstant, kLinearDecay, kExpDecay };

struct LambdaSchedule {
  LambdaMode mode = LambdaMode::kConstant;
  double start = 0.0;
  double end = 0.0;
  int horizon = 1;
};

double lambda_at(const LambdaSchedule& schedule, int iteration);

struct MssSpec {
  MssKind kind = MssKind::kDoNash;
  RdConfig rd;                 // PRD/RRD/FIXED_RD parameters
  LambdaSchedule lambda;       // RRD threshold schedule
  std::int64_t fixed_steps = 10000;
  double qre_tau = 1.0;
  std::int64_t qre_iters = 10000;
  double qre_damping = 0.5;
  double mix_p = 0.5;          // NASH_UNIFORM_MIX probability of the Nash target
  int restarts = 8;            // equilibrium search restarts (DO / MRCP)
  std::uint64_t seed = 0;
};

// Computes the best-response target over the current restricted sets.
// Payoff-dependent kinds need the restricted sub-box complete; MRCP_ORACLE
// additionally reads the full game's true payoffs.
MixedProfile solve_mss(const MssSpec& spec, const EmpiricalGame& emp,
                       int iteration);

// Threshold actually used by an RRD spec at a given iteration.
double rrd_lambda_used(const MssSpec& spec, int iteration);

}  // namespace egta
