#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace egta {

class GameError : public std::runtime_error {
 public:
  explicit GameError(const std::string& what) : std::runtime_error(what) {}
};

// Finite normal-form game with dense payoffs. Payoffs are kept as one
// contiguous plane per player, indexed row-major over pure profiles with
// the last player's strategy varying fastest. That layout keeps the inner
// loops of deviation-payoff computation contiguous.
class Game {
 public:
  Game(std::vector<int> strategy_counts, std::vector<std::vector<double>> planes);

  // payoffs given profile-major: for each pure profile (row-major), a
  // payoff vector of length num_players.
  static Game from_profile_major(std::vector<int> strategy_counts,
                                 const std::vector<double>& payoffs);

  int num_players() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& strategy_counts() const { return counts_; }
  std::int64_t num_profiles() const { return num_profiles_; }

  double payoff(int player, std::int64_t flat) const {
    return planes_[player][flat];
  }
  double payoff(int player, std::span<const int> profile) const {
    return planes_[player][flat_index(profile)];
  }
  const std::vector<double>& plane(int player) const { return planes_[player]; }

  std::int64_t flat_index(std::span<const int> profile) const;
  std::vector<int> profile_from_flat(std::int64_t flat) const;
  std::int64_t stride(int player) const { return strides_[player]; }

 private:
  std::vector<int> counts_;
  std::vector<std::int64_t> strides_;  // strides_[i] = prod_{j>i} counts_[j]
  std::int64_t num_profiles_ = 1;
  std::vector<std::vector<double>> planes_;  // planes_[player][flat_profile]
};

// One player's mixed strategy. Entries must be non-negative and sum to 1
// within 1e-9; out-of-tolerance input is rejected rather than renormalized.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);
  static MixedStrategy uniform(int n);
  static MixedStrategy pure(int n, int index);

  const std::vector<double>& probs() const { return probs_; }
  double operator[](int k) const { return probs_[k]; }
  int size() const { return static_cast<int>(probs_.size()); }

 private:
  std::vector<double> probs_;
};

struct MixedProfile {
  std::vector<MixedStrategy> strategies;

  static MixedProfile uniform(const Game& game);
  static MixedProfile pure(const Game& game, std::span<const int> profile);
  int num_players() const { return static_cast<int>(strategies.size()); }
};

struct RegretReport {
  std::vector<double> per_player;
  double total = 0.0;
};

void check_profile_matches(const Game& game, const MixedProfile& profile);

// Expected payoff vector (one entry per player) of a mixed profile.
std::vector<double> expected_payoff(const Game& game, const MixedProfile& profile);

// Entry k: expected payoff to `player` of the pure strategy k against the
// other players' mixtures.
std::vector<double> deviation_payoffs(const Game& game, const MixedProfile& profile,
                                      int player);

// Entry k: expected payoff to value_player when axis_player is pinned to
// pure strategy k and everyone else (value_player included) mixes.
std::vector<double> cross_deviation_payoffs(const Game& game,
                                            const MixedProfile& profile,
                                            int value_player, int axis_player);

RegretReport regret(const Game& game, const MixedProfile& profile);

// Index of the best pure response; ties broken by lowest index.
int best_response(const Game& game, const MixedProfile& profile, int player);

// Expected payoff to player_i with both player_i and player_j pinned to
// pure strategies and everyone else playing their mixture.
double pair_payoff(const Game& game, const MixedProfile& profile, int player_i,
                   int strategy_i, int player_j, int strategy_j);

// Euclidean projection onto {x >= 0, sum x = mass} (sort and threshold).
std::vector<double> project_to_simplex_mass(std::span<const double> v, double mass);
MixedStrategy project_to_simplex(std::span<const double> v);

// Projection onto the truncated simplex {x >= floor, sum x = 1}.
std::vector<double> project_to_truncated_simplex(std::span<const double> v,
                                                 double floor_prob);

struct WelfareResult {
  std::vector<int> profile;
  double welfare;
};

// Pure profile maximizing the sum of all players' payoffs; the row-major
// scan order makes ties resolve to the lexicographically smallest profile.
WelfareResult max_social_welfare(const Game& game);

}  // namespace egta
