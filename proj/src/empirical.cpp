#include "egta/empirical.hpp"

#include <algorithm>
#include <sstream>

#include "egta/game_factory.hpp"
#include "egta/rng.hpp"

namespace egta {

StrategySets::StrategySets(const Game& full,
                           const std::vector<std::vector<int>>& initial,
                           int iteration)
    : full_counts_(full.strategy_counts()) {
  if (static_cast<int>(initial.size()) != full.num_players())
    throw GameError("strategy sets need one list per player");
  sets_.resize(initial.size());
  added_iter_.resize(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (initial[i].empty())
      throw GameError("player " + std::to_string(i) + " has an empty strategy set");
    for (int s : initial[i])
      if (!add(static_cast<int>(i), s, iteration))
        throw GameError("duplicate strategy " + std::to_string(s) +
                        " for player " + std::to_string(i));
  }
}

bool StrategySets::contains(int player, int full_index) const {
  const auto& v = sets_[player];
  return std::find(v.begin(), v.end(), full_index) != v.end();
}

std::optional<int> StrategySets::position(int player, int full_index) const {
  const auto& v = sets_[player];
  auto it = std::find(v.begin(), v.end(), full_index);
  if (it == v.end()) return std::nullopt;
  return static_cast<int>(it - v.begin());
}

bool StrategySets::add(int player, int full_index, int iteration) {
  if (full_index < 0 || full_index >= full_counts_[player])
    throw GameError("strategy index " + std::to_string(full_index) +
                    " out of range for player " + std::to_string(player));
  if (contains(player, full_index)) return false;
  sets_[player].push_back(full_index);
  added_iter_[player].push_back(iteration);
  return true;
}

int StrategySets::most_recent(int player) const {
  const auto& iters = added_iter_[player];
  int best = 0;
  for (int k = 1; k < static_cast<int>(iters.size()); ++k)
    if (iters[k] >= iters[best]) best = k;
  return best;
}

std::int64_t StrategySets::box_size() const {
  std::int64_t n = 1;
  for (const auto& v : sets_) n *= static_cast<std::int64_t>(v.size());
  return n;
}

std::vector<int> StrategySets::to_full(std::span<const int> restricted_profile) const {
  std::vector<int> full(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i)
    full[i] = sets_[i].at(restricted_profile[i]);
  return full;
}

EmpiricalGame::EmpiricalGame(const Game& full, StrategySets sets)
    : full_(&full), sets_(std::move(sets)) {}

std::int64_t EmpiricalGame::key_of(std::span<const int> full_profile) const {
  return full_->flat_index(full_profile);
}

bool EmpiricalGame::has(std::span<const int> full_profile) const {
  return tensor_.count(key_of(full_profile)) > 0;
}

const std::vector<double>& EmpiricalGame::estimate(
    std::span<const int> full_profile) const {
  auto it = tensor_.find(key_of(full_profile));
  if (it == tensor_.end())
    throw GameError("profile has not been evaluated");
  return it->second.payoffs;
}

int EmpiricalGame::sample_count(std::span<const int> full_profile) const {
  auto it = tensor_.find(key_of(full_profile));
  return it == tensor_.end() ? 0 : it->second.samples;
}

const std::vector<double>& EmpiricalGame::evaluate_profile(
    const PayoffEstimator& est, std::span<const int> full_profile) {
  for (int i = 0; i < full_->num_players(); ++i)
    if (!sets_.contains(i, full_profile[i]))
      throw GameError("profile lies outside the current strategy sets");
  std::int64_t key = key_of(full_profile);
  auto it = tensor_.find(key);
  if (it != tensor_.end()) return it->second.payoffs;

  const int n = full_->num_players();
  Entry e;
  e.payoffs.assign(n, 0.0);
  e.samples = est.samples_per_profile;
  if (est.noise_std == 0.0) {
    for (int i = 0; i < n; ++i) e.payoffs[i] = full_->payoff(i, key);
  } else {
    // stream keyed by (estimator seed, profile) so evaluation order is
    // irrelevant to the result
    Rng rng(derive_seed(est.seed, static_cast<std::uint64_t>(key), 0x45535449ULL));
    for (int s = 0; s < est.samples_per_profile; ++s)
      for (int i = 0; i < n; ++i)
        e.payoffs[i] += full_->payoff(i, key) + est.noise_std * rng.next_gaussian();
    for (int i = 0; i < n; ++i) e.payoffs[i] /= est.samples_per_profile;
  }
  return tensor_.emplace(key, std::move(e)).first->second.payoffs;
}

namespace {

template <typename Fn>
void for_each_box_profile(const StrategySets& sets, Fn&& fn) {
  const int n = sets.num_players();
  std::vector<int> idx(n, 0);
  std::vector<int> full(n);
  for (;;) {
    for (int i = 0; i < n; ++i) full[i] = sets.full_index(i, idx[i]);
    fn(full);
    int a = n - 1;
    while (a >= 0 && ++idx[a] == sets.count(a)) idx[a--] = 0;
    if (a < 0) break;
  }
}

}  // namespace

std::int64_t EmpiricalGame::fill_missing(const PayoffEstimator& est) {
  std::int64_t before = evaluated_count();
  for_each_box_profile(sets_, [&](const std::vector<int>& full) {
    evaluate_profile(est, full);
  });
  return evaluated_count() - before;
}

bool EmpiricalGame::is_complete(const StrategySets& sub) const {
  for (int i = 0; i < sub.num_players(); ++i)
    for (int s : sub.indices(i))
      if (!sets_.contains(i, s))
        throw GameError("sub-sets are not contained in the empirical sets");
  bool complete = true;
  for_each_box_profile(sub, [&](const std::vector<int>& full) {
    if (complete && !has(full)) complete = false;
  });
  return complete;
}

Game EmpiricalGame::extract_subgame(const StrategySets& sub) const {
  const int n = full_->num_players();
  std::vector<int> counts(n);
  for (int i = 0; i < n; ++i) counts[i] = sub.count(i);
  std::int64_t profiles = 1;
  for (int c : counts) profiles *= c;
  std::vector<std::vector<double>> planes(n, std::vector<double>(profiles));
  std::int64_t f = 0;
  bool missing = false;
  std::vector<int> missing_profile;
  for_each_box_profile(sub, [&](const std::vector<int>& full) {
    auto it = tensor_.find(key_of(full));
    if (it == tensor_.end()) {
      if (!missing) {
        missing = true;
        missing_profile = full;
      }
      ++f;
      return;
    }
    for (int i = 0; i < n; ++i) planes[i][f] = it->second.payoffs[i];
    ++f;
  });
  if (missing) {
    std::string s = "(";
    for (std::size_t i = 0; i < missing_profile.size(); ++i)
      s += (i ? "," : "") + std::to_string(missing_profile[i]);
    s += ")";
    throw GameError("restricted box is incomplete; first missing profile " + s);
  }
  return Game(std::move(counts), std::move(planes));
}

Game EmpiricalGame::extract_restricted_game() const {
  return extract_subgame(sets_);
}

std::string EmpiricalGame::export_tensor() const {
  std::vector<std::int64_t> keys;
  keys.reserve(tensor_.size());
  for (const auto& [k, e] : tensor_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  std::ostringstream out;
  for (std::int64_t k : keys) {
    const Entry& e = tensor_.at(k);
    std::vector<int> prof = full_->profile_from_flat(k);
    for (std::size_t i = 0; i < prof.size(); ++i) {
      if (i) out << ' ';
      out << prof[i];
    }
    out << " :";
    for (double p : e.payoffs) out << ' ' << format_payoff(p);
    out << " : " << e.samples << "\n";
  }
  return out.str();
}

Game restrict(const Game& full, const StrategySets& sets) {
  const int n = full.num_players();
  std::vector<int> counts(n);
  for (int i = 0; i < n; ++i) counts[i] = sets.count(i);
  std::int64_t profiles = 1;
  for (int c : counts) profiles *= c;
  std::vector<std::vector<double>> planes(n, std::vector<double>(profiles));
  std::vector<int> idx(n, 0);
  std::vector<int> fullprof(n);
  std::int64_t f = 0;
  for (;;) {
    for (int i = 0; i < n; ++i) fullprof[i] = sets.full_index(i, idx[i]);
    std::int64_t key = full.flat_index(fullprof);
    for (int i = 0; i < n; ++i) planes[i][f] = full.payoff(i, key);
    ++f;
    int a = n - 1;
    while (a >= 0 && ++idx[a] == counts[a]) idx[a--] = 0;
    if (a < 0) break;
  }
  return Game(std::move(counts), std::move(planes));
}

MixedProfile lift_profile(const Game& full, const StrategySets& sets,
                          const MixedProfile& restricted) {
  MixedProfile out;
  for (int i = 0; i < full.num_players(); ++i) {
    std::vector<double> probs(full.strategy_counts()[i], 0.0);
    for (int k = 0; k < sets.count(i); ++k)
      probs[sets.full_index(i, k)] = restricted.strategies[i][k];
    out.strategies.emplace_back(std::move(probs));
  }
  return out;
}

}  // namespace egta
