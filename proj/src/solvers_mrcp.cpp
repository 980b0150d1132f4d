#include <algorithm>
#include <cmath>
#include <numeric>

#include "egta/kernels.hpp"
#include "egta/rng.hpp"
#include "egta/solvers.hpp"

namespace egta {

namespace {

double payoff_scale(const Game& game) {
  double s = 0.0;
  for (int i = 0; i < game.num_players(); ++i)
    for (double v : game.plane(i)) s = std::max(s, std::abs(v));
  return std::max(s, 1e-9);
}

// Work state for minimizing the full-game regret sum over Delta(X).
struct RegretObjective {
  const Game& full;
  const StrategySets& sets;
  int n;

  explicit RegretObjective(const Game& f, const StrategySets& s)
      : full(f), sets(s), n(f.num_players()) {}

  MixedProfile lift(const MixedProfile& restricted) const {
    return lift_profile(full, sets, restricted);
  }

  double value(const MixedProfile& restricted) const {
    return regret(full, lift(restricted)).total;
  }

  // Subgradient using the lowest-index argmax of each player's deviation
  // vector. Returned per player over restricted coordinates.
  std::vector<std::vector<double>> subgradient(const MixedProfile& restricted,
                                               double* value_out) const {
    MixedProfile lifted = lift(restricted);
    std::vector<std::vector<double>> dev(n);
    std::vector<int> argmax(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      dev[i] = deviation_payoffs(full, lifted, i);
      int best = 0;
      for (int k = 1; k < static_cast<int>(dev[i].size()); ++k)
        if (dev[i][k] > dev[i][best]) best = k;
      argmax[i] = best;
      double expected = kern::dot(dev[i].data(),
                                  lifted.strategies[i].probs().data(),
                                  dev[i].size());
      total += std::max(0.0, dev[i][best] - expected);
    }
    if (value_out) *value_out = total;

    std::vector<std::vector<double>> grad(n);
    for (int j = 0; j < n; ++j) {
      grad[j].assign(sets.count(j), 0.0);
      for (int t = 0; t < sets.count(j); ++t)
        grad[j][t] = -dev[j][sets.full_index(j, t)];
    }
    for (int i = 0; i < n; ++i) {
      // d rho_i / d sigma_j(t) = u_i(argmax_i, t, .) - u_i(sigma_i, t, .)
      MixedProfile pinned = lifted;
      pinned.strategies[i] =
          MixedStrategy::pure(full.strategy_counts()[i], argmax[i]);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        std::vector<double> br_term = cross_deviation_payoffs(full, pinned, i, j);
        std::vector<double> mix_term = cross_deviation_payoffs(full, lifted, i, j);
        for (int t = 0; t < sets.count(j); ++t) {
          int ft = sets.full_index(j, t);
          grad[j][t] += br_term[ft] - mix_term[ft];
        }
      }
    }
    return grad;
  }

  // Smoothed objective: per player, log-sum-exp over deviations at
  // temperature tau instead of the max.
  double smoothed_value(const MixedProfile& restricted, double tau) const {
    MixedProfile lifted = lift(restricted);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      std::vector<double> dev = deviation_payoffs(full, lifted, i);
      double m = kern::vmax(dev.data(), dev.size());
      double z = 0.0;
      for (double d : dev) z += std::exp((d - m) / tau);
      double expected = kern::dot(dev.data(),
                                  lifted.strategies[i].probs().data(), dev.size());
      total += m + tau * std::log(z) - expected;
    }
    return total;
  }

  std::vector<std::vector<double>> smoothed_gradient(
      const MixedProfile& restricted, double tau) const {
    MixedProfile lifted = lift(restricted);
    std::vector<std::vector<double>> dev(n);
    std::vector<std::vector<double>> weights(n);
    for (int i = 0; i < n; ++i) {
      dev[i] = deviation_payoffs(full, lifted, i);
      double m = kern::vmax(dev[i].data(), dev[i].size());
      weights[i].resize(dev[i].size());
      double z = 0.0;
      for (std::size_t k = 0; k < dev[i].size(); ++k) {
        weights[i][k] = std::exp((dev[i][k] - m) / tau);
        z += weights[i][k];
      }
      for (auto& w : weights[i]) w /= z;
    }
    std::vector<std::vector<double>> grad(n);
    for (int j = 0; j < n; ++j) {
      grad[j].assign(sets.count(j), 0.0);
      for (int t = 0; t < sets.count(j); ++t)
        grad[j][t] = -dev[j][sets.full_index(j, t)];
    }
    for (int i = 0; i < n; ++i) {
      MixedProfile weighted = lifted;
      weighted.strategies[i] = MixedStrategy(weights[i]);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        std::vector<double> soft_term =
            cross_deviation_payoffs(full, weighted, i, j);
        std::vector<double> mix_term = cross_deviation_payoffs(full, lifted, i, j);
        for (int t = 0; t < sets.count(j); ++t) {
          int ft = sets.full_index(j, t);
          grad[j][t] += soft_term[ft] - mix_term[ft];
        }
      }
    }
    return grad;
  }
};

MixedProfile project_profile(const std::vector<std::vector<double>>& raw) {
  MixedProfile p;
  for (const auto& v : raw) p.strategies.push_back(project_to_simplex(v));
  return p;
}

}  // namespace

SolverResult mrcp(const Game& full, const StrategySets& sets, int restarts,
                  std::uint64_t seed) {
  RegretObjective obj(full, sets);
  const int n = full.num_players();
  const double scale = payoff_scale(full);

  MixedProfile best = [&] {
    MixedProfile u;
    for (int i = 0; i < n; ++i)
      u.strategies.push_back(MixedStrategy::uniform(sets.count(i)));
    return u;
  }();
  double best_f = obj.value(best);

  auto consider = [&](const MixedProfile& p) {
    double f = obj.value(p);
    if (f < best_f) {
      best_f = f;
      best = p;
    }
    return f;
  };

  // the restricted-game equilibrium is always feasible; keep it as both a
  // candidate and the cap the final answer must not exceed
  Game restricted = restrict(full, sets);
  MixedProfile ne = nash_np(restricted, 8, derive_seed(seed, 0x6d4e45ULL));
  double ne_f = consider(ne);

  if (sets.box_size() <= 4096) {
    std::vector<int> idx(n, 0);
    for (;;) {
      MixedProfile p;
      for (int i = 0; i < n; ++i)
        p.strategies.push_back(MixedStrategy::pure(sets.count(i), idx[i]));
      consider(p);
      int a = n - 1;
      while (a >= 0 && ++idx[a] == sets.count(a)) idx[a--] = 0;
      if (a < 0) break;
    }
  }

  std::int64_t iterations = 0;
  const int per_restart = 300;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    MixedProfile cur;
    if (r == 0) {
      for (int i = 0; i < n; ++i)
        cur.strategies.push_back(MixedStrategy::uniform(sets.count(i)));
    } else {
      Rng rng(derive_seed(seed, 0x6d7263ULL, static_cast<std::uint64_t>(r)));
      for (int i = 0; i < n; ++i)
        cur.strategies.push_back(MixedStrategy(rng.next_dirichlet(sets.count(i))));
    }
    for (int t = 0; t < per_restart; ++t, ++iterations) {
      double f;
      auto grad = obj.subgradient(cur, &f);
      if (f < best_f) {
        best_f = f;
        best = cur;
      }
      double eta = 0.3 / (scale * std::sqrt(static_cast<double>(t + 1)));
      std::vector<std::vector<double>> moved(n);
      for (int i = 0; i < n; ++i) {
        moved[i] = cur.strategies[i].probs();
        for (int k = 0; k < sets.count(i); ++k) moved[i][k] -= eta * grad[i][k];
      }
      cur = project_profile(moved);
    }
    consider(cur);
  }

  // Deterministic annealed polish: minimizing the log-sum-exp smoothed
  // objective settles on the shallow side of non-smooth minima, which
  // pins down the tie-breaking behaviour of downstream best responses.
  MixedProfile polish = best;
  for (int stage = 1; stage <= 9; ++stage) {
    double tau = scale * std::pow(10.0, -stage);
    double fs = obj.smoothed_value(polish, tau);
    double eta = tau / (scale * scale);
    for (int t = 0; t < 200; ++t) {
      auto grad = obj.smoothed_gradient(polish, tau);
      bool moved_ok = false;
      for (int ls = 0; ls < 30; ++ls) {
        std::vector<std::vector<double>> moved(n);
        for (int i = 0; i < n; ++i) {
          moved[i] = polish.strategies[i].probs();
          for (int k = 0; k < sets.count(i); ++k) moved[i][k] -= eta * grad[i][k];
        }
        MixedProfile cand = project_profile(moved);
        double fc = obj.smoothed_value(cand, tau);
        if (fc < fs - 1e-18) {
          polish = std::move(cand);
          fs = fc;
          moved_ok = true;
          eta *= 2.0;
          break;
        }
        eta *= 0.5;
      }
      if (!moved_ok) break;
    }
  }
  double polish_f = obj.value(polish);
  SolverResult out;
  if (polish_f <= best_f + 1e-9 && polish_f <= ne_f) {
    out.profile = polish;
    out.regret_total = polish_f;
  } else {
    out.profile = best;
    out.regret_total = best_f;
  }
  out.steps_used = iterations;
  out.hit_threshold = false;
  return out;
}

}  // namespace egta
