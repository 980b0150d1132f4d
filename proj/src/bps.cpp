#include "egta/bps.hpp"

#include <algorithm>

#include "egta/rng.hpp"

namespace egta {

namespace {

// all pure profiles over per-player full-index lists
template <typename Fn>
void for_each_profile(const std::vector<std::vector<int>>& lists, Fn&& fn) {
  const int n = static_cast<int>(lists.size());
  std::vector<int> idx(n, 0);
  std::vector<int> prof(n);
  for (;;) {
    for (int i = 0; i < n; ++i) prof[i] = lists[i][idx[i]];
    fn(prof);
    int a = n - 1;
    while (a >= 0 && ++idx[a] == static_cast<int>(lists[a].size())) idx[a--] = 0;
    if (a < 0) break;
  }
}

}  // namespace

BpsResult bps(EmpiricalGame& emp, const PayoffEstimator& est, double tol,
              std::uint64_t seed) {
  if (tol < 0.0) throw GameError("bps tolerance must be >= 0");
  const Game& full = emp.full_game();
  const StrategySets& X = emp.sets();
  const int n = full.num_players();
  const std::int64_t evals_before = emp.evaluated_count();

  std::vector<std::vector<int>> z(n);
  for (int i = 0; i < n; ++i)
    z[i] = {X.full_index(i, X.most_recent(i))};

  BpsResult out;
  int solve_attempt = 0;
  bool resolved_once = false;

  for (;;) {
    StrategySets zsets(full, z);
    for_each_profile(z, [&](const std::vector<int>& prof) {
      emp.evaluate_profile(est, prof);
    });
    Game zgame = emp.extract_subgame(zsets);
    MixedProfile sigma_z =
        nash_np(zgame, 8, derive_seed(seed, 0x627073ULL, solve_attempt));
    double rz = regret(zgame, sigma_z).total;
    if (rz > 10.0 * tol)
      out.warnings.push_back("subgame solve regret " + std::to_string(rz) +
                             " above 10*tol on a " +
                             std::to_string(zsets.box_size()) + "-profile subgame");

    // embed into X coordinates
    MixedProfile sigma_x;
    for (int i = 0; i < n; ++i) {
      std::vector<double> v(X.count(i), 0.0);
      for (int k = 0; k < zsets.count(i); ++k) {
        int pos = *X.position(i, zsets.full_index(i, k));
        v[pos] = sigma_z.strategies[i][k];
      }
      sigma_x.strategies.push_back(MixedStrategy(v));
    }

    // support of the candidate, as full indices per player
    std::vector<std::vector<int>> support(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < X.count(i); ++k)
        if (sigma_x.strategies[i][k] > 0.0)
          support[i].push_back(X.full_index(i, k));

    bool expanded = false;
    bool inside_deviation = false;
    std::vector<std::pair<int, int>> additions;  // (player, full index)
    for (int i = 0; i < n; ++i) {
      std::vector<std::vector<int>> sweep = support;
      sweep[i] = X.indices(i);
      for_each_profile(sweep, [&](const std::vector<int>& prof) {
        emp.evaluate_profile(est, prof);
      });
      // deviation payoffs over all of X_i against the candidate's support
      std::vector<double> dev(X.count(i), 0.0);
      std::vector<std::vector<int>> others;
      std::vector<int> other_players;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          others.push_back(support[j]);
          other_players.push_back(j);
        }
      std::vector<int> prof(n);
      std::vector<int> idx(others.size(), 0);
      for (;;) {
        double w = 1.0;
        for (std::size_t a = 0; a < others.size(); ++a) {
          int j = other_players[a];
          int fidx = others[a][idx[a]];
          prof[j] = fidx;
          w *= sigma_x.strategies[j][*X.position(j, fidx)];
        }
        for (int k = 0; k < X.count(i); ++k) {
          prof[i] = X.full_index(i, k);
          dev[k] += w * emp.estimate(prof)[i];
        }
        int a = static_cast<int>(others.size()) - 1;
        while (a >= 0 && ++idx[a] == static_cast<int>(others[a].size()))
          idx[a--] = 0;
        if (a < 0) break;
      }
      double expected = 0.0;
      for (int k = 0; k < X.count(i); ++k)
        expected += sigma_x.strategies[i][k] * dev[k];
      int kstar = 0;
      for (int k = 1; k < X.count(i); ++k)
        if (dev[k] > dev[kstar]) kstar = k;
      double gain = dev[kstar] - expected;
      if (gain > tol) {
        int full_idx = X.full_index(i, kstar);
        bool in_z = std::find(z[i].begin(), z[i].end(), full_idx) != z[i].end();
        if (!in_z)
          additions.emplace_back(i, full_idx);
        else
          inside_deviation = true;
      }
    }
    for (auto& [player, idx] : additions) {
      z[player].push_back(idx);
      expanded = true;
    }
    if (expanded) continue;

    if (inside_deviation && !resolved_once) {
      // profitable deviation inside Z means the subgame solve fell short;
      // one retry with a fresh solver stream
      resolved_once = true;
      ++solve_attempt;
      out.warnings.push_back("best deviation inside the subgame; re-solving");
      continue;
    }

    out.profile = sigma_x;
    out.subgame.sets = zsets;
    out.subgame.complete = emp.is_complete(zsets);
    out.evaluations_this_call = emp.evaluated_count() - evals_before;
    out.confirmed = !inside_deviation;
    return out;
  }
}

MixedProfile bps_rrd_target(EmpiricalGame& emp, const PayoffEstimator& est,
                            const RdConfig& cfg, double tol, std::uint64_t seed) {
  BpsResult res = bps(emp, est, tol, seed);
  const Game& full = emp.full_game();
  const StrategySets& X = emp.sets();
  const int n = full.num_players();

  std::vector<std::vector<int>> support(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < X.count(i); ++k)
      if (res.profile.strategies[i][k] > 0.0)
        support[i].push_back(X.full_index(i, k));
  StrategySets ssets(full, support);
  Game sub = emp.extract_subgame(ssets);
  SolverResult r = rrd(sub, cfg);

  MixedProfile target;
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(X.count(i), 0.0);
    for (int k = 0; k < ssets.count(i); ++k)
      v[*X.position(i, ssets.full_index(i, k))] = r.profile.strategies[i][k];
    target.strategies.push_back(MixedStrategy(v));
  }
  return target;
}

SavingsReport savings_report(const EmpiricalGame& emp) {
  SavingsReport rep;
  rep.evaluated = emp.evaluated_count();
  rep.total_box = emp.sets().box_size();
  rep.savings_fraction =
      1.0 - static_cast<double>(rep.evaluated) / static_cast<double>(rep.total_box);
  return rep;
}

}  // namespace egta
