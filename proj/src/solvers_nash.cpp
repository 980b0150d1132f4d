#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

#include "egta/kernels.hpp"
#include "egta/rng.hpp"
#include "egta/solvers.hpp"

namespace egta {

namespace {

constexpr double kNashTol = 1e-8;

// dense linear solve with partial pivoting; empty result on singularity
std::optional<std::vector<double>> gauss_solve(std::vector<double> a,
                                               std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-12) return std::nullopt;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  return x;
}

MixedStrategy clamp_normalize(std::vector<double> v) {
  double total = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (total <= 0.0) throw GameError("degenerate strategy vector");
  for (double& x : v) x /= total;
  return MixedStrategy(std::move(v));
}

// ---- zero-sum minimax LP ----
//
// With payoffs shifted positive, the column player's LP
//   max sum(s)  s.t.  U s <= 1, s >= 0
// yields y = s / sum(s) and, through the duals on the row constraints,
// x = lambda / sum(lambda). Tableau simplex with Bland-style tie-breaks.
std::optional<std::pair<std::vector<double>, std::vector<double>>> zero_sum_lp(
    const Game& game) {
  const int m = game.strategy_counts()[0];
  const int n = game.strategy_counts()[1];
  const double* u1 = game.plane(0).data();
  double lo = u1[0];
  for (std::int64_t f = 1; f < game.num_profiles(); ++f) lo = std::min(lo, u1[f]);
  const double shift = 1.0 - lo;

  const int cols = n + m + 1;
  std::vector<double> t(static_cast<std::size_t>(m) * cols, 0.0);
  std::vector<double> cost(cols, 0.0);
  std::vector<int> basis(m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < n; ++b) t[a * cols + b] = u1[a * n + b] + shift;
    t[a * cols + n + a] = 1.0;
    t[a * cols + cols - 1] = 1.0;
    basis[a] = n + a;
  }
  for (int b = 0; b < n; ++b) cost[b] = -1.0;

  for (std::int64_t iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int c = 0; c < cols - 1; ++c)
      if (cost[c] < -1e-12) {
        enter = c;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      double coef = t[r * cols + enter];
      if (coef > 1e-12) {
        double ratio = t[r * cols + cols - 1] / coef;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return std::nullopt;  // unbounded: cannot happen here
    double piv = t[leave * cols + enter];
    for (int c = 0; c < cols; ++c) t[leave * cols + c] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      double f = t[r * cols + enter];
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) t[r * cols + c] -= f * t[leave * cols + c];
    }
    double fc = cost[enter];
    if (fc != 0.0)
      for (int c = 0; c < cols; ++c) cost[c] -= fc * t[leave * cols + c];
    basis[leave] = enter;
  }

  std::vector<double> y(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) y[basis[r]] = t[r * cols + cols - 1];
  std::vector<double> x(m, 0.0);
  for (int a = 0; a < m; ++a) x[a] = cost[n + a];  // duals on row constraints
  double sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sx = std::accumulate(x.begin(), x.end(), 0.0);
  if (sy <= 0.0 || sx <= 0.0) return std::nullopt;
  for (double& v : y) v /= sy;
  for (double& v : x) v /= sx;
  return std::make_pair(std::move(x), std::move(y));
}

// next size-k combination in lexicographic order; false when exhausted
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::optional<MixedProfile> try_support_2p(const Game& game,
                                           const std::vector<int>& t0,
                                           const std::vector<int>& t1) {
  const int n0 = game.strategy_counts()[0];
  const int n1 = game.strategy_counts()[1];
  const double* u0 = game.plane(0).data();
  const double* u1 = game.plane(1).data();
  const int k = static_cast<int>(t0.size());

  // player 0 indifferent across t0 -> opponent mix y and value v0
  std::vector<double> a(static_cast<std::size_t>(k + 1) * (k + 1), 0.0);
  std::vector<double> b(k + 1, 0.0);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a[r * (k + 1) + c] = u0[t0[r] * n1 + t1[c]];
    a[r * (k + 1) + k] = -1.0;
  }
  for (int c = 0; c < k; ++c) a[k * (k + 1) + c] = 1.0;
  b[k] = 1.0;
  auto soly = gauss_solve(a, b);
  if (!soly) return std::nullopt;
  double v0 = (*soly)[k];
  for (int c = 0; c < k; ++c)
    if ((*soly)[c] < -1e-9) return std::nullopt;

  std::fill(a.begin(), a.end(), 0.0);
  std::fill(b.begin(), b.end(), 0.0);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a[r * (k + 1) + c] = u1[t0[c] * n1 + t1[r]];
    a[r * (k + 1) + k] = -1.0;
  }
  for (int c = 0; c < k; ++c) a[k * (k + 1) + c] = 1.0;
  b[k] = 1.0;
  auto solx = gauss_solve(a, b);
  if (!solx) return std::nullopt;
  double v1 = (*solx)[k];
  for (int c = 0; c < k; ++c)
    if ((*solx)[c] < -1e-9) return std::nullopt;

  std::vector<double> x(n0, 0.0), y(n1, 0.0);
  for (int c = 0; c < k; ++c) {
    x[t0[c]] = std::max(0.0, (*solx)[c]);
    y[t1[c]] = std::max(0.0, (*soly)[c]);
  }
  for (int s = 0; s < n0; ++s)
    if (kern::dot(u0 + static_cast<std::int64_t>(s) * n1, y.data(), n1) > v0 + 1e-9)
      return std::nullopt;
  for (int s = 0; s < n1; ++s) {
    double d = 0.0;
    for (int r = 0; r < n0; ++r) d += x[r] * u1[r * n1 + s];
    if (d > v1 + 1e-9) return std::nullopt;
  }
  MixedProfile p;
  p.strategies.push_back(clamp_normalize(std::move(x)));
  p.strategies.push_back(clamp_normalize(std::move(y)));
  return p;
}

}  // namespace

MixedProfile nash_2p(const Game& game) {
  if (game.num_players() != 2) throw GameError("nash_2p needs exactly 2 players");
  const int n0 = game.strategy_counts()[0];
  const int n1 = game.strategy_counts()[1];
  const double* u0 = game.plane(0).data();
  const double* u1 = game.plane(1).data();

  double scale = 0.0, askew = 0.0;
  for (std::int64_t f = 0; f < game.num_profiles(); ++f) {
    scale = std::max(scale, std::max(std::abs(u0[f]), std::abs(u1[f])));
    askew = std::max(askew, std::abs(u0[f] + u1[f]));
  }
  if (askew <= 1e-9 * (1.0 + scale)) {
    auto lp = zero_sum_lp(game);
    if (lp) {
      MixedProfile p;
      p.strategies.push_back(clamp_normalize(std::move(lp->first)));
      p.strategies.push_back(clamp_normalize(std::move(lp->second)));
      if (regret(game, p).total <= kNashTol) return p;
    }
  }

  // pure equilibria (support size 1+1): O(1) per pair after precomputing
  // the per-column / per-row maxima
  std::vector<double> colmax0(n1, -std::numeric_limits<double>::infinity());
  std::vector<double> rowmax1(n0, -std::numeric_limits<double>::infinity());
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) {
      colmax0[b] = std::max(colmax0[b], u0[a * n1 + b]);
      rowmax1[a] = std::max(rowmax1[a], u1[a * n1 + b]);
    }
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b)
      if (u0[a * n1 + b] >= colmax0[b] && u1[a * n1 + b] >= rowmax1[a]) {
        MixedProfile p;
        p.strategies.push_back(MixedStrategy::pure(n0, a));
        p.strategies.push_back(MixedStrategy::pure(n1, b));
        if (regret(game, p).total <= kNashTol) return p;
      }

  for (int k = 2; k <= std::min(n0, n1); ++k) {
    std::vector<int> t0(k);
    std::iota(t0.begin(), t0.end(), 0);
    do {
      std::vector<int> t1(k);
      std::iota(t1.begin(), t1.end(), 0);
      do {
        auto cand = try_support_2p(game, t0, t1);
        if (cand && regret(game, *cand).total <= kNashTol) return *cand;
      } while (next_combination(t1, n1));
    } while (next_combination(t0, n0));
  }
  throw GameError("nash_2p: no equilibrium survived the support scan");
}

namespace {

std::optional<std::vector<int>> pure_ne_scan(const Game& game) {
  const int n = game.num_players();
  for (std::int64_t f = 0; f < game.num_profiles(); ++f) {
    std::vector<int> prof = game.profile_from_flat(f);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const std::int64_t base = f - prof[i] * game.stride(i);
      const double own = game.payoff(i, f);
      for (int k = 0; k < game.strategy_counts()[i]; ++k)
        if (game.payoff(i, base + k * game.stride(i)) > own) {
          ok = false;
          break;
        }
    }
    if (ok) return prof;
  }
  return std::nullopt;
}

double payoff_scale(const Game& game) {
  double s = 0.0;
  for (int i = 0; i < game.num_players(); ++i)
    for (double v : game.plane(i)) s = std::max(s, std::abs(v));
  return std::max(s, 1e-9);
}

struct Candidate {
  MixedProfile profile;
  double regret_total;
};

void rd_descent(const Game& game, int restarts, std::uint64_t seed,
                std::int64_t steps, Candidate& best) {
  const double alpha = 0.05 / payoff_scale(game);
  for (int r = 0; r < restarts; ++r) {
    MixedProfile cur;
    if (r == 0) {
      cur = MixedProfile::uniform(game);
    } else {
      Rng rng(derive_seed(seed, 0x4e505244ULL, static_cast<std::uint64_t>(r)));
      for (int c : game.strategy_counts())
        cur.strategies.push_back(MixedStrategy(rng.next_dirichlet(c)));
    }
    for (std::int64_t t = 0; t < steps; ++t) {
      RegretReport rep = regret(game, cur);
      if (rep.total < best.regret_total) {
        best.regret_total = rep.total;
        best.profile = cur;
      }
      if (rep.total <= 1e-10) return;
      cur = rd_step(game, cur, alpha);
    }
  }
}

// Indifference system of a fixed support tuple: variables are the raw
// support probabilities plus one value per player; equations are the
// deviation payoffs on the support minus the value, and the per-player
// normalizations. Solved by Newton with step-halving.
class SupportSystem {
 public:
  SupportSystem(const Game& game, std::vector<std::vector<int>> supports)
      : game_(game), supports_(std::move(supports)) {
    const int n = game_.num_players();
    sizes_.resize(n);
    vars_ = n;
    for (int i = 0; i < n; ++i) {
      sizes_[i] = static_cast<int>(supports_[i].size());
      vars_ += sizes_[i];
    }
  }

  int vars() const { return vars_; }

  // dev payoff of supports_[i][k] against the raw (unnormalized) support
  // probabilities in z, with an optional extra pinned player
  double dev_term(const std::vector<double>& z, int i, int k, int pin_player,
                  int pin_strategy) const {
    const int n = game_.num_players();
    double val = 0.0;
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != i && j != pin_player) others.push_back(j);
    std::vector<int> idx(others.size(), 0);
    std::int64_t pinned = supports_[i][k] * game_.stride(i);
    if (pin_player >= 0) pinned += pin_strategy * game_.stride(pin_player);
    for (;;) {
      double w = 1.0;
      std::int64_t flat = pinned;
      for (std::size_t a = 0; a < others.size(); ++a) {
        int j = others[a];
        w *= z[offset(j) + idx[a]];
        flat += supports_[j][idx[a]] * game_.stride(j);
      }
      val += w * game_.payoff(i, flat);
      int a = static_cast<int>(others.size()) - 1;
      while (a >= 0 && ++idx[a] == sizes_[others[a]]) idx[a--] = 0;
      if (a < 0) break;
    }
    return val;
  }

  int offset(int player) const {
    int o = 0;
    for (int j = 0; j < player; ++j) o += sizes_[j];
    return o;
  }

  double residual(const std::vector<double>& z, std::vector<double>& F) const {
    const int n = game_.num_players();
    F.clear();
    double worst = 0.0;
    const int voff = vars_ - n;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < sizes_[i]; ++k) {
        F.push_back(dev_term(z, i, k, -1, 0) - z[voff + i]);
        worst = std::max(worst, std::abs(F.back()));
      }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = 0; k < sizes_[i]; ++k) s += z[offset(i) + k];
      F.push_back(s - 1.0);
      worst = std::max(worst, std::abs(F.back()));
    }
    return worst;
  }

  void jacobian(const std::vector<double>& z, std::vector<double>& J) const {
    const int n = game_.num_players();
    const int m = vars_;
    J.assign(static_cast<std::size_t>(m) * m, 0.0);
    int row = 0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < sizes_[i]; ++k, ++row) {
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          for (int t = 0; t < sizes_[j]; ++t)
            J[row * m + offset(j) + t] = dev_term(z, i, k, j, supports_[j][t]);
        }
        J[row * m + (m - n) + i] = -1.0;
      }
    for (int i = 0; i < n; ++i, ++row)
      for (int k = 0; k < sizes_[i]; ++k) J[row * m + offset(i) + k] = 1.0;
  }

  std::optional<Candidate> solve(const std::vector<std::vector<double>>& start) {
    const int n = game_.num_players();
    std::vector<double> z;
    z.reserve(vars_);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < sizes_[i]; ++k) z.push_back(start[i][supports_[i][k]]);
    for (int i = 0; i < n; ++i) z.push_back(0.0);
    // seed values with the mean on-support deviation payoff
    for (int i = 0; i < n; ++i) {
      double mean = 0.0;
      for (int k = 0; k < sizes_[i]; ++k) mean += dev_term(z, i, k, -1, 0);
      z[vars_ - n + i] = mean / std::max(1, sizes_[i]);
    }

    std::vector<double> F, J;
    double fnorm = residual(z, F);
    for (int iter = 0; iter < 60 && fnorm > 1e-12; ++iter) {
      jacobian(z, J);
      std::vector<double> negF(vars_);
      for (int r = 0; r < vars_; ++r) negF[r] = -F[r];
      auto dz = gauss_solve(J, negF);
      if (!dz) return std::nullopt;
      double lam = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 40; ++ls) {
        std::vector<double> z2(vars_);
        for (int r = 0; r < vars_; ++r) z2[r] = z[r] + lam * (*dz)[r];
        std::vector<double> F2;
        double f2 = residual(z2, F2);
        if (f2 < fnorm) {
          z = std::move(z2);
          F = std::move(F2);
          fnorm = f2;
          improved = true;
          break;
        }
        lam *= 0.5;
      }
      if (!improved) break;
    }
    if (fnorm > 1e-10) return std::nullopt;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < sizes_[i]; ++k)
        if (z[offset(i) + k] < -1e-9) return std::nullopt;

    MixedProfile p;
    for (int i = 0; i < n; ++i) {
      std::vector<double> v(game_.strategy_counts()[i], 0.0);
      for (int k = 0; k < sizes_[i]; ++k)
        v[supports_[i][k]] = std::max(0.0, z[offset(i) + k]);
      p.strategies.push_back(clamp_normalize(std::move(v)));
    }
    double rtot = regret(game_, p).total;
    if (rtot <= 1e-9) return Candidate{p, rtot};
    return std::nullopt;
  }

 private:
  const Game& game_;
  std::vector<std::vector<int>> supports_;
  std::vector<int> sizes_;
  int vars_;
};

// support tuples ordered by total size, then lexicographically; fn returns
// false to stop the scan
template <typename Fn>
void for_each_support_tuple(const std::vector<int>& counts, std::int64_t budget,
                            Fn&& fn) {
  const int n = static_cast<int>(counts.size());
  const int total_max = std::accumulate(counts.begin(), counts.end(), 0);
  std::int64_t used = 0;
  std::vector<int> sizes(n, 1);
  for (int total = n + 1; total <= total_max && used < budget; ++total) {
    std::function<bool(int, int)> assign = [&](int player, int remaining) -> bool {
      if (player == n) {
        if (remaining != 0) return true;
        std::vector<std::vector<int>> cs(n);
        for (int i = 0; i < n; ++i) {
          cs[i].resize(sizes[i]);
          std::iota(cs[i].begin(), cs[i].end(), 0);
        }
        for (;;) {
          if (used++ >= budget) return false;
          if (!fn(cs)) return false;
          int i = n - 1;
          while (i >= 0 && !next_combination(cs[i], counts[i])) {
            cs[i].resize(sizes[i]);
            std::iota(cs[i].begin(), cs[i].end(), 0);
            --i;
          }
          if (i < 0) break;
        }
        return true;
      }
      const int hi = std::min(counts[player], remaining - (n - player - 1));
      for (int s = 1; s <= hi; ++s) {
        sizes[player] = s;
        if (!assign(player + 1, remaining - s)) return false;
      }
      return true;
    };
    if (!assign(0, total)) break;
  }
}

}  // namespace

MixedProfile nash_np(const Game& game, int restarts, std::uint64_t seed) {
  if (game.num_players() == 2) {
    try {
      return nash_2p(game);
    } catch (const GameError&) {
      // fall through to the heuristic path
    }
  }

  if (auto pure = pure_ne_scan(game)) return MixedProfile::pure(game, *pure);

  Candidate best{MixedProfile::uniform(game),
                 regret(game, MixedProfile::uniform(game)).total};
  rd_descent(game, std::max(1, restarts), seed, 4000, best);
  if (best.regret_total <= 1e-9) return best.profile;

  // Newton from the supports suggested by the replicator minimum
  for (double thr : {1e-2, 1e-3}) {
    std::vector<std::vector<int>> supports(game.num_players());
    std::vector<std::vector<double>> start(game.num_players());
    bool ok = true;
    for (int i = 0; i < game.num_players(); ++i) {
      start[i] = best.profile.strategies[i].probs();
      for (int k = 0; k < game.strategy_counts()[i]; ++k)
        if (start[i][k] > thr) supports[i].push_back(k);
      if (supports[i].empty()) ok = false;
    }
    if (!ok) continue;
    SupportSystem sys(game, supports);
    if (auto cand = sys.solve(start)) {
      if (cand->regret_total < best.regret_total) best = *cand;
      if (best.regret_total <= 1e-9) return best.profile;
    }
  }

  // systematic support scan with uniform plus seeded dirichlet starts
  Rng rng(derive_seed(seed, 0x4e455753ULL));
  for_each_support_tuple(
      game.strategy_counts(), 20000,
      [&](const std::vector<std::vector<int>>& supports) -> bool {
        SupportSystem sys(game, supports);
        std::vector<std::vector<double>> start(game.num_players());
        for (int i = 0; i < game.num_players(); ++i) {
          start[i].assign(game.strategy_counts()[i], 0.0);
          for (int s : supports[i])
            start[i][s] = 1.0 / static_cast<double>(supports[i].size());
        }
        if (auto cand = sys.solve(start)) {
          if (cand->regret_total < best.regret_total) best = *cand;
          if (best.regret_total <= 1e-9) return false;
        }
        for (int extra = 0; extra < 2; ++extra) {
          for (int i = 0; i < game.num_players(); ++i) {
            auto d = rng.next_dirichlet(supports[i].size());
            start[i].assign(game.strategy_counts()[i], 0.0);
            for (std::size_t k = 0; k < supports[i].size(); ++k)
              start[i][supports[i][k]] = d[k];
          }
          if (auto cand = sys.solve(start)) {
            if (cand->regret_total < best.regret_total) best = *cand;
            if (best.regret_total <= 1e-9) return false;
          }
        }
        return true;
      });
  return best.profile;
}

}  // namespace egta
