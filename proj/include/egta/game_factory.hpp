#pragma once

#include <cstdint>
#include <string>

#include "egta/game.hpp"

namespace egta {

enum class PayoffDistribution { kUniform01, kGaussian };

struct RandomGameSpec {
  int num_players = 2;
  std::vector<int> sizes;
  PayoffDistribution distribution = PayoffDistribution::kUniform01;
  bool zero_sum = false;
  bool symmetric = false;
  std::uint64_t seed = 0;
};

// The 3x3 symmetric zero-sum game whose two-strategy face is closed under
// best response to its minimum-regret profile.
Game make_mrcp_closed_game();

// Symmetric n x n game with a best-response chain along the diagonal
// (response to s_k is s_{k+1}) ending in the unique pure equilibrium
// (s_n, s_n), plus low-payoff shortcut entries against s1/s2 that let a
// mixed target jump straight to s_n.
Game make_long_path_game(int n);

Game make_random_game(const RandomGameSpec& spec);

// Text format: `players N`, `shape k1 .. kN`, then one line of N payoffs
// per pure profile in row-major order (last player fastest), 17
// significant digits. Lines starting with '#' are comments.
Game load_game(const std::string& path);
void save_game(const Game& game, const std::string& path);

std::string format_payoff(double v);

}  // namespace egta
