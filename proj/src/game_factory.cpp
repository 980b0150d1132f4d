#include "egta/game_factory.hpp"

#include <algorithm>
#include <cmath>

#include "egta/rng.hpp"

namespace egta {

Game make_mrcp_closed_game() {
  // row payoffs for player 1; zero-sum and symmetric (u2(a,b) = -u1(a,b))
  const double u1[3][3] = {{0.0, -1.0, -0.5}, {1.0, 0.0, -5.0}, {0.5, 5.0, 0.0}};
  std::vector<double> p0(9), p1(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      p0[a * 3 + b] = u1[a][b];
      p1[a * 3 + b] = -u1[a][b];
    }
  return Game({3, 3}, {std::move(p0), std::move(p1)});
}

Game make_long_path_game(int n) {
  if (n < 4) throw GameError("long-path game needs at least 4 strategies");
  // u1 entries, 0-indexed (strategy s_k of the construction is index k-1);
  // u2 follows by symmetry u2(a,b) = u1(b,a).
  std::vector<double> u1(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int row, int col) -> double& { return u1[row * n + col]; };
  for (int k = 2; k <= n - 1; ++k) {
    at(k - 1, k - 1) = 0.1 * (k - 1);      // diagonal ramp
    at(k, k - 1) = 0.1 * k;                // response to s_k is s_{k+1}
    at(k - 1, k) = 0.1 * (k - 1);
  }
  at(n - 1, n - 1) = 100.0;
  int mid = (n + 1) / 2;                   // ceil(n/2), 1-indexed
  at(mid - 1, 0) = 0.01;
  at(1, 0) = 0.011;                        // takes precedence over mid for n=4
  at(n - 1, 0) = 0.005;
  at(n - 1, 1) = 0.199;
  std::vector<double> p0(u1);
  std::vector<double> p1(u1.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p1[a * n + b] = u1[b * n + a];
  return Game({n, n}, {std::move(p0), std::move(p1)});
}

namespace {

double draw(Rng& rng, PayoffDistribution dist) {
  return dist == PayoffDistribution::kUniform01 ? rng.next_double()
                                                : rng.next_gaussian();
}

double symmetric_entry(const RandomGameSpec& spec, int own,
                       std::vector<int> others) {
  std::sort(others.begin(), others.end());
  std::uint64_t key = 1469598103934665603ULL;
  for (int s : others) key = mix64(key ^ static_cast<std::uint64_t>(s + 1));
  Rng rng(derive_seed(spec.seed, 0x53594dULL, static_cast<std::uint64_t>(own), key));
  return draw(rng, spec.distribution);
}

}  // namespace

Game make_random_game(const RandomGameSpec& spec) {
  if (spec.num_players < 2) throw GameError("random game needs >= 2 players");
  if (static_cast<int>(spec.sizes.size()) != spec.num_players)
    throw GameError("random game spec: sizes length != num_players");
  if (spec.zero_sum && spec.num_players != 2)
    throw GameError("zero-sum random games are 2-player only");
  if (spec.symmetric)
    for (int c : spec.sizes)
      if (c != spec.sizes[0])
        throw GameError("symmetric random games need equal strategy counts");

  const int n = spec.num_players;
  std::int64_t profiles = 1;
  for (int c : spec.sizes) profiles *= c;
  std::vector<std::vector<double>> planes(n, std::vector<double>(profiles));

  std::vector<std::int64_t> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * spec.sizes[i + 1];
  auto unflatten = [&](std::int64_t f) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) {
      p[i] = static_cast<int>(f / strides[i]);
      f %= strides[i];
    }
    return p;
  };

  if (spec.zero_sum && spec.symmetric) {
    // both constraints force a skew-symmetric player-1 plane
    const int m = spec.sizes[0];
    Rng rng(derive_seed(spec.seed, 0x5a53ULL));
    std::vector<double> u1(static_cast<std::size_t>(m) * m, 0.0);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        double v = draw(rng, spec.distribution);
        u1[a * m + b] = v;
        u1[b * m + a] = -v;
      }
    for (std::int64_t f = 0; f < profiles; ++f) {
      planes[0][f] = u1[f];
      planes[1][f] = -u1[f];
    }
  } else if (spec.symmetric) {
    for (std::int64_t f = 0; f < profiles; ++f) {
      std::vector<int> prof = unflatten(f);
      for (int i = 0; i < n; ++i) {
        std::vector<int> others;
        for (int j = 0; j < n; ++j)
          if (j != i) others.push_back(prof[j]);
        planes[i][f] = symmetric_entry(spec, prof[i], std::move(others));
      }
    }
  } else if (spec.zero_sum) {
    Rng rng(derive_seed(spec.seed, 0x5a30ULL));
    for (std::int64_t f = 0; f < profiles; ++f) {
      planes[0][f] = draw(rng, spec.distribution);
      planes[1][f] = -planes[0][f];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Rng rng(derive_seed(spec.seed, 0x504cULL, static_cast<std::uint64_t>(i)));
      for (std::int64_t f = 0; f < profiles; ++f)
        planes[i][f] = draw(rng, spec.distribution);
    }
  }
  return Game(spec.sizes, std::move(planes));
}

}  // namespace egta
