#include "egta/psro.hpp"

#include <algorithm>

#include "egta/bps.hpp"
#include "egta/rng.hpp"

namespace egta {

namespace {

// restricted-game regret computed from the partial tensor; every profile
// it touches must have been evaluated (the BPS deviation pass guarantees
// that for its own targets)
double restricted_regret_partial(const EmpiricalGame& emp,
                                 const MixedProfile& target) {
  const StrategySets& X = emp.sets();
  const int n = X.num_players();
  std::vector<std::vector<int>> support(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < X.count(i); ++k)
      if (target.strategies[i][k] > 0.0) support[i].push_back(k);

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> dev(X.count(i), 0.0);
    std::vector<int> other_players;
    for (int j = 0; j < n; ++j)
      if (j != i) other_players.push_back(j);
    std::vector<int> idx(other_players.size(), 0);
    std::vector<int> prof(n);
    for (;;) {
      double w = 1.0;
      for (std::size_t a = 0; a < other_players.size(); ++a) {
        int j = other_players[a];
        int rk = support[j][idx[a]];
        prof[j] = X.full_index(j, rk);
        w *= target.strategies[j][rk];
      }
      for (int k = 0; k < X.count(i); ++k) {
        prof[i] = X.full_index(i, k);
        dev[k] += w * emp.estimate(prof)[i];
      }
      int a = static_cast<int>(other_players.size()) - 1;
      while (a >= 0 &&
             ++idx[a] == static_cast<int>(support[other_players[a]].size()))
        idx[a--] = 0;
      if (a < 0) break;
    }
    double expected = 0.0;
    double mx = dev[0];
    for (int k = 0; k < X.count(i); ++k) {
      expected += target.strategies[i][k] * dev[k];
      mx = std::max(mx, dev[k]);
    }
    total += std::max(0.0, mx - expected);
  }
  return total;
}

}  // namespace

bool epsilon_closed(const Game& full, const EmpiricalGame& emp,
                    const MixedProfile& target_restricted, double epsilon) {
  MixedProfile lifted = lift_profile(full, emp.sets(), target_restricted);
  for (int i = 0; i < full.num_players(); ++i) {
    int br = best_response(full, lifted, i);
    if (!emp.sets().contains(i, br)) return false;
  }
  double r = emp.is_complete()
                 ? regret(emp.extract_restricted_game(), target_restricted).total
                 : restricted_regret_partial(emp, target_restricted);
  return r <= epsilon;
}

RunTrace psro_run(const Game& full, const StrategySets& initial,
                  const PsroConfig& cfg) {
  if (cfg.max_iterations < 1) throw GameError("max_iterations must be >= 1");
  EmpiricalGame emp(full, initial);
  RunTrace trace;

  if (!cfg.bps_enabled) emp.fill_missing(cfg.estimator);

  // Alg. 1 initializes the target uniform over the initial sets
  MixedProfile target;
  for (int i = 0; i < full.num_players(); ++i)
    target.strategies.push_back(MixedStrategy::uniform(emp.sets().count(i)));

  trace.terminated_by = Termination::kMaxIterations;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    IterationRecord rec;
    rec.iteration = iter;
    rec.new_strategies.resize(full.num_players());

    // exact best-response oracle against the current target
    MixedProfile respond_to = lift_profile(full, emp.sets(), target);
    if (cfg.oracle == OracleMode::kSample) {
      for (int j = 0; j < full.num_players(); ++j) {
        Rng rng(derive_seed(cfg.seed, 0x73616d70ULL, iter, j));
        double u = rng.next_double();
        double acc = 0.0;
        int pick = 0;
        const auto& probs = respond_to.strategies[j].probs();
        for (int k = 0; k < static_cast<int>(probs.size()); ++k) {
          acc += probs[k];
          if (u <= acc) {
            pick = k;
            break;
          }
        }
        respond_to.strategies[j] =
            MixedStrategy::pure(static_cast<int>(probs.size()), pick);
      }
    }
    for (int i = 0; i < full.num_players(); ++i) {
      std::vector<double> dev = deviation_payoffs(full, respond_to, i);
      int br = 0;
      for (int k = 1; k < static_cast<int>(dev.size()); ++k)
        if (dev[k] > dev[br]) br = k;
      if (cfg.force_outside_x && emp.sets().contains(i, br)) {
        br = -1;
        for (int k = 0; k < static_cast<int>(dev.size()); ++k) {
          if (emp.sets().contains(i, k)) continue;
          if (br < 0 || dev[k] > dev[br]) br = k;
        }
        if (br < 0) continue;  // X_i already covers the full space
      }
      if (emp.sets().add(i, br, iter)) rec.new_strategies[i].push_back(br);
    }

    // model update and new best-response target
    std::optional<MixedProfile> bps_candidate;
    if (cfg.bps_enabled) {
      std::uint64_t bseed = derive_seed(cfg.seed, 0x62707352ULL, iter);
      if (cfg.mss.kind == MssKind::kRrd) {
        BpsResult res = bps(emp, cfg.estimator, cfg.bps_tol, bseed);
        for (auto& w : res.warnings)
          trace.warnings.push_back("iter " + std::to_string(iter) + ": " + w);
        bps_candidate = res.profile;
        RdConfig rd = cfg.mss.rd;
        rd.regret_threshold = rrd_lambda_used(cfg.mss, iter);
        // regularize over the support sub-box of the confirmed solution
        StrategySets ssets = [&] {
          std::vector<std::vector<int>> support(full.num_players());
          for (int i = 0; i < full.num_players(); ++i)
            for (int k = 0; k < emp.sets().count(i); ++k)
              if (res.profile.strategies[i][k] > 0.0)
                support[i].push_back(emp.sets().full_index(i, k));
          return StrategySets(full, support);
        }();
        SolverResult rr = rrd(emp.extract_subgame(ssets), rd);
        MixedProfile t;
        for (int i = 0; i < full.num_players(); ++i) {
          std::vector<double> v(emp.sets().count(i), 0.0);
          for (int k = 0; k < ssets.count(i); ++k)
            v[*emp.sets().position(i, ssets.full_index(i, k))] =
                rr.profile.strategies[i][k];
          t.strategies.push_back(MixedStrategy(v));
        }
        target = std::move(t);
      } else if (cfg.mss.kind == MssKind::kDoNash) {
        BpsResult res = bps(emp, cfg.estimator, cfg.bps_tol, bseed);
        for (auto& w : res.warnings)
          trace.warnings.push_back("iter " + std::to_string(iter) + ": " + w);
        bps_candidate = res.profile;
        target = res.profile;
      } else {
        throw GameError("bps-driven runs support the RRD and DO solvers only");
      }
    } else {
      emp.fill_missing(cfg.estimator);
      target = solve_mss(cfg.mss, emp, iter);
    }

    // instrumentation against the true game
    MixedProfile lifted = lift_profile(full, emp.sets(), target);
    rec.target = target;
    rec.target_regret_full = regret(full, lifted).total;
    if (cfg.track_ne_regret) {
      if (cfg.mss.kind == MssKind::kDoNash && !cfg.bps_enabled) {
        rec.ne_regret_full = rec.target_regret_full;  // the target is the NE
      } else if (bps_candidate) {
        rec.ne_regret_full =
            regret(full, lift_profile(full, emp.sets(), *bps_candidate)).total;
      } else {
        Game restricted_game = emp.extract_restricted_game();
        MixedProfile ne = nash_np(restricted_game, cfg.mss.restarts,
                                  derive_seed(cfg.seed, 0x6e65ULL, iter));
        rec.ne_regret_full =
            regret(full, lift_profile(full, emp.sets(), ne)).total;
      }
    }
    if (cfg.mss.kind == MssKind::kRrd)
      rec.lambda_used = rrd_lambda_used(cfg.mss, iter);
    rec.profiles_evaluated_cum = emp.evaluated_count();
    rec.strategy_counts.resize(full.num_players());
    for (int i = 0; i < full.num_players(); ++i)
      rec.strategy_counts[i] = emp.sets().count(i);
    trace.records.push_back(std::move(rec));

    if (epsilon_closed(full, emp, target, cfg.epsilon_stop)) {
      trace.terminated_by = Termination::kEpsClosed;
      break;
    }
  }

  trace.final_sets.resize(full.num_players());
  for (int i = 0; i < full.num_players(); ++i)
    trace.final_sets[i] = emp.sets().indices(i);
  return trace;
}

}  // namespace egta
