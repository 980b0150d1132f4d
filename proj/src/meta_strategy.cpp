#include "egta/meta_strategy.hpp"

#include <cmath>

#include "egta/rng.hpp"

namespace egta {

std::string mss_kind_name(MssKind kind) {
  switch (kind) {
    case MssKind::kDoNash: return "do";
    case MssKind::kFpUniform: return "fp";
    case MssKind::kPrd: return "prd";
    case MssKind::kRrd: return "rrd";
    case MssKind::kFixedRd: return "fixed_rd";
    case MssKind::kQre: return "qre";
    case MssKind::kMrcpOracle: return "mrcp";
    case MssKind::kLastStrategy: return "last";
    case MssKind::kNashUniformMix: return "nash_uniform_mix";
  }
  return "?";
}

MssKind mss_kind_from_name(const std::string& name) {
  if (name == "do" || name == "nash") return MssKind::kDoNash;
  if (name == "fp" || name == "uniform") return MssKind::kFpUniform;
  if (name == "prd") return MssKind::kPrd;
  if (name == "rrd") return MssKind::kRrd;
  if (name == "fixed_rd") return MssKind::kFixedRd;
  if (name == "qre") return MssKind::kQre;
  if (name == "mrcp") return MssKind::kMrcpOracle;
  if (name == "last") return MssKind::kLastStrategy;
  if (name == "nash_uniform_mix" || name == "mix") return MssKind::kNashUniformMix;
  throw GameError("unknown meta-strategy solver '" + name + "'");
}

double lambda_at(const LambdaSchedule& schedule, int iteration) {
  if (iteration < 0) throw GameError("negative iteration");
  switch (schedule.mode) {
    case LambdaMode::kConstant:
      return schedule.start;
    case LambdaMode::kLinearDecay: {
      double frac = std::min(1.0, static_cast<double>(iteration) / schedule.horizon);
      return schedule.start + (schedule.end - schedule.start) * frac;
    }
    case LambdaMode::kExpDecay:
      return schedule.end + (schedule.start - schedule.end) *
                                std::exp(-3.0 * iteration / schedule.horizon);
  }
  return schedule.start;
}

double rrd_lambda_used(const MssSpec& spec, int iteration) {
  return lambda_at(spec.lambda, iteration);
}

namespace {

MixedProfile uniform_target(const EmpiricalGame& emp) {
  MixedProfile p;
  for (int i = 0; i < emp.sets().num_players(); ++i)
    p.strategies.push_back(MixedStrategy::uniform(emp.sets().count(i)));
  return p;
}

MixedProfile nash_target(const MssSpec& spec, const EmpiricalGame& emp) {
  Game g = emp.extract_restricted_game();
  return nash_np(g, spec.restarts, derive_seed(spec.seed, 0x646f4e45ULL));
}

}  // namespace

MixedProfile solve_mss(const MssSpec& spec, const EmpiricalGame& emp,
                       int iteration) {
  switch (spec.kind) {
    case MssKind::kFpUniform:
      return uniform_target(emp);
    case MssKind::kLastStrategy: {
      MixedProfile p;
      for (int i = 0; i < emp.sets().num_players(); ++i)
        p.strategies.push_back(
            MixedStrategy::pure(emp.sets().count(i), emp.sets().most_recent(i)));
      return p;
    }
    case MssKind::kDoNash:
      return nash_target(spec, emp);
    case MssKind::kRrd: {
      RdConfig cfg = spec.rd;
      cfg.regret_threshold = lambda_at(spec.lambda, iteration);
      return rrd(emp.extract_restricted_game(), cfg).profile;
    }
    case MssKind::kPrd:
      return prd(emp.extract_restricted_game(), spec.rd).profile;
    case MssKind::kFixedRd:
      return fixed_rd(emp.extract_restricted_game(), spec.fixed_steps,
                      spec.rd.step_size);
    case MssKind::kQre:
      return qre_logit(emp.extract_restricted_game(), spec.qre_tau,
                       spec.qre_iters, spec.qre_damping)
          .profile;
    case MssKind::kMrcpOracle:
      return mrcp(emp.full_game(), emp.sets(), spec.restarts,
                  derive_seed(spec.seed, 0x6d726370ULL))
          .profile;
    case MssKind::kNashUniformMix: {
      Rng rng(derive_seed(spec.seed, 0x6d6978ULL,
                          static_cast<std::uint64_t>(iteration)));
      if (rng.next_double() < spec.mix_p) return nash_target(spec, emp);
      return uniform_target(emp);
    }
  }
  throw GameError("unhandled meta-strategy solver kind");
}

}  // namespace egta
