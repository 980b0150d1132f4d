#include <cstdio>
#include <fstream>
#include <sstream>

#include "egta/game_factory.hpp"

namespace egta {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
  throw GameError(path + ":" + std::to_string(line) + ": " + msg);
}

bool parse_double(const std::string& tok, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(tok, &pos);
    return pos == tok.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

std::string format_payoff(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void save_game(const Game& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GameError("cannot open " + path + " for writing");
  out << "players " << game.num_players() << "\n";
  out << "shape";
  for (int c : game.strategy_counts()) out << ' ' << c;
  out << "\n";
  for (std::int64_t f = 0; f < game.num_profiles(); ++f) {
    for (int i = 0; i < game.num_players(); ++i) {
      if (i) out << ' ';
      out << format_payoff(game.payoff(i, f));
    }
    out << "\n";
  }
  if (!out) throw GameError("write failure on " + path);
}

Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open " + path);
  std::string line;
  int lineno = 0;

  auto next_content_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      return true;
    }
    if (required) fail(path, lineno, "unexpected end of file");
    return false;
  };

  next_content_line(true);
  std::istringstream hdr(line);
  std::string kw;
  int players = 0;
  if (!(hdr >> kw >> players) || kw != "players" || players < 1)
    fail(path, lineno, "malformed header, expected 'players <N>'");

  next_content_line(true);
  std::istringstream sh(line);
  std::vector<int> counts;
  if (!(sh >> kw) || kw != "shape")
    fail(path, lineno, "malformed header, expected 'shape <k1> ... <kN>'");
  int c;
  while (sh >> c) counts.push_back(c);
  if (static_cast<int>(counts.size()) != players)
    fail(path, lineno, "shape lists " + std::to_string(counts.size()) +
                           " counts, expected " + std::to_string(players));
  for (int k : counts)
    if (k < 1) fail(path, lineno, "strategy counts must be positive");

  std::int64_t profiles = 1;
  for (int k : counts) profiles *= k;
  std::vector<std::vector<double>> planes(players,
                                          std::vector<double>(profiles));
  for (std::int64_t f = 0; f < profiles; ++f) {
    if (!next_content_line(false))
      fail(path, lineno,
           "truncated payoff table: expected " + std::to_string(profiles) +
               " profiles, found " + std::to_string(f));
    std::istringstream row(line);
    std::string tok;
    for (int i = 0; i < players; ++i) {
      if (!(row >> tok))
        fail(path, lineno, "expected " + std::to_string(players) +
                               " payoffs on this line, found " + std::to_string(i));
      double v;
      if (!parse_double(tok, v))
        fail(path, lineno, "non-numeric payoff token '" + tok + "'");
      planes[i][f] = v;
    }
    std::string extra;
    if (row >> extra)
      fail(path, lineno, "trailing token '" + extra + "' after " +
                             std::to_string(players) + " payoffs");
  }
  if (next_content_line(false))
    fail(path, lineno, "extra payoff line beyond " + std::to_string(profiles) +
                           " profiles");
  return Game(std::move(counts), std::move(planes));
}

}  // namespace egta
