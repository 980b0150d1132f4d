#include <cmath>

#include "egta/kernels.hpp"
#include "egta/solvers.hpp"

namespace egta {

namespace {

struct DevState {
  std::vector<std::vector<double>> dev;
  std::vector<double> expected;
  double regret_total = 0.0;

  void compute(const Game& game, const MixedProfile& p) {
    const int n = game.num_players();
    dev.resize(n);
    expected.resize(n);
    regret_total = 0.0;
    for (int i = 0; i < n; ++i) {
      dev[i] = deviation_payoffs(game, p, i);
      expected[i] =
          kern::dot(dev[i].data(), p.strategies[i].probs().data(), dev[i].size());
      double r = kern::vmax(dev[i].data(), dev[i].size()) - expected[i];
      if (r < 0.0) r = 0.0;
      regret_total += r;
    }
  }
};

MixedProfile step_from(const Game& game, const MixedProfile& p,
                       const DevState& st, double alpha) {
  MixedProfile next;
  for (int i = 0; i < game.num_players(); ++i) {
    const auto& probs = p.strategies[i].probs();
    std::vector<double> moved(probs.size());
    kern::replicator(moved.data(), probs.data(), st.dev[i].data(), st.expected[i],
                     alpha, probs.size());
    next.strategies.push_back(project_to_simplex(moved));
  }
  return next;
}

}  // namespace

MixedProfile rd_step(const Game& game, const MixedProfile& profile, double alpha) {
  check_profile_matches(game, profile);
  DevState st;
  st.compute(game, profile);
  return step_from(game, profile, st, alpha);
}

SolverResult rrd(const Game& game, const RdConfig& cfg) {
  if (cfg.step_size <= 0.0) throw GameError("rd step size must be positive");
  if (cfg.max_steps < 1) throw GameError("rd max_steps must be >= 1");
  if (cfg.regret_threshold < 0.0) throw GameError("regret threshold must be >= 0");

  const int n = game.num_players();
  MixedProfile cur = MixedProfile::uniform(game);
  std::vector<std::vector<double>> sums(n);
  for (int i = 0; i < n; ++i) sums[i].assign(game.strategy_counts()[i], 0.0);

  MixedProfile best = cur;
  double best_regret = std::numeric_limits<double>::infinity();
  DevState st;

  for (std::int64_t t = 0;; ++t) {
    st.compute(game, cur);
    if (st.regret_total <= cfg.regret_threshold)
      return {cur, st.regret_total, t, true};
    if (st.regret_total < best_regret) {
      best_regret = st.regret_total;
      best = cur;
    }

    for (int i = 0; i < n; ++i)
      kern::axpy(sums[i].data(), 1.0, cur.strategies[i].probs().data(),
                 sums[i].size());
    if (t > 0) {
      MixedProfile avg;
      const double inv = 1.0 / static_cast<double>(t + 1);
      for (int i = 0; i < n; ++i) {
        std::vector<double> a(sums[i].size());
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = sums[i][k] * inv;
        avg.strategies.push_back(project_to_simplex(a));
      }
      RegretReport ra = regret(game, avg);
      if (ra.total <= cfg.regret_threshold) return {avg, ra.total, t, true};
      if (ra.total < best_regret) {
        best_regret = ra.total;
        best = avg;
      }
    }

    if (t == cfg.max_steps) break;
    cur = step_from(game, cur, st, cfg.step_size);
  }
  return {best, best_regret, cfg.max_steps, false};
}

SolverResult prd(const Game& game, const RdConfig& cfg) {
  if (cfg.step_size <= 0.0) throw GameError("rd step size must be positive");
  const double floor_prob = cfg.prd_lower_bound;
  if (floor_prob < 0.0) throw GameError("prd floor must be >= 0");
  for (int c : game.strategy_counts())
    if (floor_prob * c > 1.0 + 1e-12)
      throw GameError("prd floor " + std::to_string(floor_prob) +
                      " is infeasible for " + std::to_string(c) + " strategies");

  MixedProfile cur;
  for (int c : game.strategy_counts()) {
    std::vector<double> u(c, 1.0 / c);
    cur.strategies.push_back(
        MixedStrategy(project_to_truncated_simplex(u, floor_prob)));
  }
  DevState st;
  for (std::int64_t t = 0; t < cfg.max_steps; ++t) {
    st.compute(game, cur);
    MixedProfile next;
    for (int i = 0; i < game.num_players(); ++i) {
      const auto& probs = cur.strategies[i].probs();
      std::vector<double> moved(probs.size());
      kern::replicator(moved.data(), probs.data(), st.dev[i].data(),
                       st.expected[i], cfg.step_size, probs.size());
      next.strategies.push_back(
          MixedStrategy(project_to_truncated_simplex(moved, floor_prob)));
    }
    cur = std::move(next);
  }
  RegretReport r = regret(game, cur);
  return {cur, r.total, cfg.max_steps, false};
}

MixedProfile fixed_rd(const Game& game, std::int64_t steps, double alpha) {
  MixedProfile cur = MixedProfile::uniform(game);
  DevState st;
  for (std::int64_t t = 0; t < steps; ++t) {
    st.compute(game, cur);
    cur = step_from(game, cur, st, alpha);
  }
  return cur;
}

SolverResult qre_logit(const Game& game, double tau, std::int64_t iters,
                       double damping) {
  if (tau < 0.0) throw GameError("qre tau must be >= 0");
  if (damping <= 0.0 || damping > 1.0) throw GameError("qre damping in (0,1]");
  MixedProfile cur = MixedProfile::uniform(game);
  double residual = 0.0;
  std::int64_t used = 0;
  for (std::int64_t t = 0; t <= iters; ++t) {
    // logit response per player, max-shifted for overflow safety
    MixedProfile resp;
    residual = 0.0;
    for (int i = 0; i < game.num_players(); ++i) {
      std::vector<double> dev = deviation_payoffs(game, cur, i);
      double m = kern::vmax(dev.data(), dev.size());
      std::vector<double> e(dev.size());
      double z = 0.0;
      for (std::size_t k = 0; k < dev.size(); ++k) {
        e[k] = std::exp(tau * (dev[k] - m));
        z += e[k];
      }
      for (auto& x : e) x /= z;
      for (std::size_t k = 0; k < e.size(); ++k)
        residual = std::max(residual, std::abs(cur.strategies[i][k] - e[k]));
      resp.strategies.push_back(MixedStrategy(std::move(e)));
    }
    if (residual < 1e-8 || t == iters) {
      used = t;
      break;
    }
    for (int i = 0; i < game.num_players(); ++i) {
      std::vector<double> mixed(cur.strategies[i].size());
      for (std::size_t k = 0; k < mixed.size(); ++k)
        mixed[k] = (1.0 - damping) * cur.strategies[i][k] +
                   damping * resp.strategies[i][k];
      cur.strategies[i] = project_to_simplex(mixed);
    }
  }
  SolverResult out;
  out.profile = cur;
  out.regret_total = regret(game, cur).total;
  out.steps_used = used;
  out.hit_threshold = residual < 1e-8;
  out.residual = residual;
  return out;
}

}  // namespace egta
