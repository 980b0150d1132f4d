#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "egta/game.hpp"

namespace egta {

// Per-player ordered subsets of the full game's strategy indices, each
// remembering the PSRO iteration that introduced it (BPS walks these
// backwards).
class StrategySets {
 public:
  StrategySets(const Game& full, const std::vector<std::vector<int>>& initial,
               int iteration = 0);

  int num_players() const { return static_cast<int>(sets_.size()); }
  int count(int player) const { return static_cast<int>(sets_[player].size()); }
  const std::vector<int>& indices(int player) const { return sets_[player]; }
  int full_index(int player, int restricted) const {
    return sets_[player][restricted];
  }
  int added_at(int player, int restricted) const {
    return added_iter_[player][restricted];
  }
  bool contains(int player, int full_index) const;
  // position within the player's list, if present
  std::optional<int> position(int player, int full_index) const;

  // returns false if the strategy was already present
  bool add(int player, int full_index, int iteration);

  // restricted index of the strategy the player added most recently
  int most_recent(int player) const;

  std::int64_t box_size() const;
  std::vector<int> to_full(std::span<const int> restricted_profile) const;

 private:
  std::vector<int> full_counts_;
  std::vector<std::vector<int>> sets_;
  std::vector<std::vector<int>> added_iter_;
};

struct PayoffEstimator {
  double noise_std = 0.0;
  int samples_per_profile = 1;
  std::uint64_t seed = 0;
};

// Restriction of a full game to growing strategy subsets, with payoff
// estimates stored sparsely (BPS leaves most of the box empty).
class EmpiricalGame {
 public:
  EmpiricalGame(const Game& full, StrategySets sets);

  const Game& full_game() const { return *full_; }
  const StrategySets& sets() const { return sets_; }
  StrategySets& sets() { return sets_; }

  bool has(std::span<const int> full_profile) const;
  // stored estimate; throws if the profile was never evaluated
  const std::vector<double>& estimate(std::span<const int> full_profile) const;

  // Mean of samples_per_profile noisy draws of the true payoff vector (one
  // independent gaussian per player per draw). A profile is simulated at
  // most once; later calls return the stored estimate.
  const std::vector<double>& evaluate_profile(const PayoffEstimator& est,
                                              std::span<const int> full_profile);

  // Evaluates every missing profile in the current sub-box; returns how
  // many were newly simulated.
  std::int64_t fill_missing(const PayoffEstimator& est);

  bool is_complete(const StrategySets& sub) const;
  bool is_complete() const { return is_complete(sets_); }

  // Standalone game over the restricted index space, payoffs from the
  // stored estimates. Throws (naming the first missing profile) if any
  // profile in the box is unevaluated.
  Game extract_restricted_game() const;
  Game extract_subgame(const StrategySets& sub) const;

  std::int64_t evaluated_count() const {
    return static_cast<std::int64_t>(tensor_.size());
  }
  int sample_count(std::span<const int> full_profile) const;

  // one line per evaluated profile, lexicographic:
  // `<i1> ... <iN> : <p1> ... <pN> : <samples>`
  std::string export_tensor() const;

 private:
  struct Entry {
    std::vector<double> payoffs;
    int samples = 0;
  };

  std::int64_t key_of(std::span<const int> full_profile) const;

  const Game* full_;
  StrategySets sets_;
  std::unordered_map<std::int64_t, Entry> tensor_;
};

// Restriction of a game to subsets using the true payoffs.
Game restrict(const Game& full, const StrategySets& sets);

// Lift a profile over restricted sets to the full strategy space (zeros on
// strategies outside the sets).
MixedProfile lift_profile(const Game& full, const StrategySets& sets,
                          const MixedProfile& restricted);

}  // namespace egta
