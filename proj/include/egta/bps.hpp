#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egta/empirical.hpp"
#include "egta/solvers.hpp"

namespace egta {

struct Subgame {
  StrategySets sets;
  bool complete = false;
};

struct BpsResult {
  MixedProfile profile;  // over the X index space, support inside the subgame
  Subgame subgame;
  std::int64_t evaluations_this_call = 0;
  bool confirmed = false;
  std::vector<std::string> warnings;
};

// Backward profile search: confirm an equilibrium of the empirical game
// while evaluating as little of the X box as possible. Starts from the
// most recently added strategy of each player and expands the subgame by
// the most profitable outside deviation until none exceeds tol.
BpsResult bps(EmpiricalGame& emp, const PayoffEstimator& est, double tol,
              std::uint64_t seed = 0);

// bps, then regularized replicator dynamics over the (complete) support
// sub-box of the confirmed solution, embedded back into X coordinates.
MixedProfile bps_rrd_target(EmpiricalGame& emp, const PayoffEstimator& est,
                            const RdConfig& cfg, double tol,
                            std::uint64_t seed = 0);

struct SavingsReport {
  std::int64_t evaluated = 0;
  std::int64_t total_box = 0;
  double savings_fraction = 0.0;
};

SavingsReport savings_report(const EmpiricalGame& emp);

}  // namespace egta
