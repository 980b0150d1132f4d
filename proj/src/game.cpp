#include "egta/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egta/kernels.hpp"

namespace egta {

namespace {
constexpr double kNormTol = 1e-9;
constexpr double kRegretClamp = 1e-12;
}  // namespace

Game::Game(std::vector<int> strategy_counts, std::vector<std::vector<double>> planes)
    : counts_(std::move(strategy_counts)), planes_(std::move(planes)) {
  if (counts_.empty()) throw GameError("game needs at least one player");
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] <= 0)
      throw GameError("player " + std::to_string(i) + " has no strategies");
  num_profiles_ = 1;
  for (int c : counts_) num_profiles_ *= c;
  strides_.assign(counts_.size(), 1);
  for (int i = static_cast<int>(counts_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * counts_[i + 1];
  if (planes_.size() != counts_.size())
    throw GameError("expected one payoff plane per player");
  for (std::size_t i = 0; i < planes_.size(); ++i) {
    if (static_cast<std::int64_t>(planes_[i].size()) != num_profiles_)
      throw GameError("payoff plane " + std::to_string(i) + " has wrong size");
    for (double v : planes_[i])
      if (!std::isfinite(v))
        throw GameError("non-finite payoff for player " + std::to_string(i));
  }
}

Game Game::from_profile_major(std::vector<int> strategy_counts,
                              const std::vector<double>& payoffs) {
  std::int64_t profiles = 1;
  for (int c : strategy_counts) profiles *= c;
  const int n = static_cast<int>(strategy_counts.size());
  if (static_cast<std::int64_t>(payoffs.size()) != profiles * n)
    throw GameError("payoff list has wrong length");
  std::vector<std::vector<double>> planes(n, std::vector<double>(profiles));
  for (std::int64_t f = 0; f < profiles; ++f)
    for (int i = 0; i < n; ++i) planes[i][f] = payoffs[f * n + i];
  return Game(std::move(strategy_counts), std::move(planes));
}

std::int64_t Game::flat_index(std::span<const int> profile) const {
  if (profile.size() != counts_.size())
    throw GameError("profile length does not match player count");
  std::int64_t f = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= counts_[i])
      throw GameError("strategy index out of range for player " + std::to_string(i));
    f += profile[i] * strides_[i];
  }
  return f;
}

std::vector<int> Game::profile_from_flat(std::int64_t flat) const {
  std::vector<int> p(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    p[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return p;
}

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw GameError("empty mixed strategy");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < -kNormTol)
      throw GameError("mixed strategy has a negative or non-finite entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw GameError("mixed strategy does not sum to 1");
  for (double& p : probs_)
    if (p < 0.0) p = 0.0;
}

MixedStrategy MixedStrategy::uniform(int n) {
  return MixedStrategy(std::vector<double>(n, 1.0 / n));
}

MixedStrategy MixedStrategy::pure(int n, int index) {
  std::vector<double> v(n, 0.0);
  v.at(index) = 1.0;
  return MixedStrategy(std::move(v));
}

MixedProfile MixedProfile::uniform(const Game& game) {
  MixedProfile p;
  for (int c : game.strategy_counts())
    p.strategies.push_back(MixedStrategy::uniform(c));
  return p;
}

MixedProfile MixedProfile::pure(const Game& game, std::span<const int> profile) {
  MixedProfile p;
  for (int i = 0; i < game.num_players(); ++i)
    p.strategies.push_back(MixedStrategy::pure(game.strategy_counts()[i], profile[i]));
  return p;
}

void check_profile_matches(const Game& game, const MixedProfile& profile) {
  if (profile.num_players() != game.num_players())
    throw GameError("profile has " + std::to_string(profile.num_players()) +
                    " players, game has " + std::to_string(game.num_players()));
  for (int i = 0; i < game.num_players(); ++i)
    if (profile.strategies[i].size() != game.strategy_counts()[i])
      throw GameError("profile dimension mismatch for player " + std::to_string(i));
}

namespace {

// Walks all pure profiles of the players in `active` (ascending indices),
// invoking fn(weight, flat_base) with the probability weight of the combo.
// flat_base has zeros in all non-active positions.
template <typename Fn>
void for_each_weighted_combo(const Game& game, const MixedProfile& profile,
                             const std::vector<int>& active, Fn&& fn) {
  const auto& counts = game.strategy_counts();
  std::vector<int> idx(active.size(), 0);
  for (;;) {
    double w = 1.0;
    std::int64_t base = 0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      w *= profile.strategies[active[a]][idx[a]];
      base += idx[a] * game.stride(active[a]);
    }
    fn(w, base);
    int a = static_cast<int>(active.size()) - 1;
    while (a >= 0 && ++idx[a] == counts[active[a]]) idx[a--] = 0;
    if (a < 0) break;
  }
}

}  // namespace

std::vector<double> cross_deviation_payoffs(const Game& game,
                                            const MixedProfile& profile,
                                            int value_player, int axis_player) {
  check_profile_matches(game, profile);
  const int n = game.num_players();
  if (value_player < 0 || value_player >= n || axis_player < 0 || axis_player >= n)
    throw GameError("invalid player index");
  const auto& counts = game.strategy_counts();
  const int last = n - 1;
  std::vector<double> dev(counts[axis_player], 0.0);
  const double* plane = game.plane(value_player).data();

  if (axis_player == last) {
    // the swept strategies are the contiguous axis: accumulate weighted rows
    std::vector<int> others(n - 1);
    std::iota(others.begin(), others.end(), 0);
    for_each_weighted_combo(game, profile, others, [&](double w, std::int64_t base) {
      if (w == 0.0) return;
      kern::axpy(dev.data(), w, plane + base, counts[last]);
    });
  } else {
    // contiguous axis is the last player's: one dot per swept strategy
    std::vector<int> others;
    for (int j = 0; j < last; ++j)
      if (j != axis_player) others.push_back(j);
    const double* last_probs = profile.strategies[last].probs().data();
    const std::int64_t axis_stride = game.stride(axis_player);
    const int axis_count = counts[axis_player];
    const int last_count = counts[last];
    for_each_weighted_combo(game, profile, others, [&](double w, std::int64_t base) {
      if (w == 0.0) return;
      for (int k = 0; k < axis_count; ++k)
        dev[k] += w * kern::dot(plane + base + k * axis_stride, last_probs, last_count);
    });
  }
  return dev;
}

std::vector<double> deviation_payoffs(const Game& game, const MixedProfile& profile,
                                      int player) {
  return cross_deviation_payoffs(game, profile, player, player);
}

std::vector<double> expected_payoff(const Game& game, const MixedProfile& profile) {
  check_profile_matches(game, profile);
  const int n = game.num_players();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> dev = deviation_payoffs(game, profile, i);
    out[i] = kern::dot(dev.data(), profile.strategies[i].probs().data(), dev.size());
  }
  return out;
}

RegretReport regret(const Game& game, const MixedProfile& profile) {
  check_profile_matches(game, profile);
  RegretReport rep;
  rep.per_player.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    std::vector<double> dev = deviation_payoffs(game, profile, i);
    double expected =
        kern::dot(dev.data(), profile.strategies[i].probs().data(), dev.size());
    double r = kern::vmax(dev.data(), dev.size()) - expected;
    if (std::abs(r) < kRegretClamp) r = 0.0;
    if (r < 0.0) r = 0.0;  // expected <= max holds mathematically
    rep.per_player[i] = r;
    rep.total += r;
  }
  return rep;
}

int best_response(const Game& game, const MixedProfile& profile, int player) {
  std::vector<double> dev = deviation_payoffs(game, profile, player);
  int best = 0;
  for (int k = 1; k < static_cast<int>(dev.size()); ++k)
    if (dev[k] > dev[best]) best = k;
  return best;
}

double pair_payoff(const Game& game, const MixedProfile& profile, int player_i,
                   int strategy_i, int player_j, int strategy_j) {
  if (player_i == player_j) throw GameError("pair_payoff needs distinct players");
  const std::int64_t pinned = strategy_i * game.stride(player_i) +
                              strategy_j * game.stride(player_j);
  std::vector<int> others;
  for (int k = 0; k < game.num_players(); ++k)
    if (k != player_i && k != player_j) others.push_back(k);
  const double* plane = game.plane(player_i).data();
  double out = 0.0;
  for_each_weighted_combo(game, profile, others, [&](double w, std::int64_t base) {
    out += w * plane[pinned + base];
  });
  return out;
}

std::vector<double> project_to_simplex_mass(std::span<const double> v, double mass) {
  if (v.empty()) throw GameError("cannot project an empty vector");
  for (double x : v)
    if (!std::isfinite(x)) throw GameError("cannot project a non-finite vector");
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0;
  double theta = 0.0;
  int rho = 0;
  for (int k = 0; k < n; ++k) {
    css += u[k];
    double t = (css - mass) / (k + 1);
    if (u[k] - t > 0.0) {
      rho = k;
      theta = t;
    }
  }
  (void)rho;
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = std::max(v[k] - theta, 0.0);
  return out;
}

MixedStrategy project_to_simplex(std::span<const double> v) {
  std::vector<double> p = project_to_simplex_mass(v, 1.0);
  // guard against rounding drift before the invariant check
  double total = 0.0;
  for (double x : p) total += x;
  if (total > 0.0 && std::abs(total - 1.0) > 1e-15)
    for (double& x : p) x /= total;
  return MixedStrategy(std::move(p));
}

std::vector<double> project_to_truncated_simplex(std::span<const double> v,
                                                 double floor_prob) {
  const int n = static_cast<int>(v.size());
  double mass = 1.0 - floor_prob * n;
  if (mass < -1e-12) throw GameError("infeasible probability floor");
  if (mass < 0.0) mass = 0.0;
  std::vector<double> shifted(n);
  for (int k = 0; k < n; ++k) shifted[k] = v[k] - floor_prob;
  std::vector<double> p = project_to_simplex_mass(shifted, mass);
  for (int k = 0; k < n; ++k) p[k] += floor_prob;
  return p;
}

WelfareResult max_social_welfare(const Game& game) {
  const std::int64_t profiles = game.num_profiles();
  double best = -std::numeric_limits<double>::infinity();
  std::int64_t best_flat = 0;
  for (std::int64_t f = 0; f < profiles; ++f) {
    double w = 0.0;
    for (int i = 0; i < game.num_players(); ++i) w += game.payoff(i, f);
    if (w > best) {
      best = w;
      best_flat = f;
    }
  }
  return {game.profile_from_flat(best_flat), best};
}

}  // namespace egta
