#ifndef VFOG_BENCH_ALGORITHMS_HPP
#define VFOG_BENCH_ALGORITHMS_HPP

#include "vfog/baselines/baselines.hpp"
#include "vfog/bench/config.hpp"
#include "vfog/solver/vfog.hpp"

#include <algorithm>
#include <memory>

namespace vfog::bench {

/// Stepsize, probability and batch after applying defaults and scales.
struct ResolvedAlgo {
  std::string name;
  double s = 3.0;
  double eta = 0.0;
  double p = 1.0;
  Index b = 1;
};

namespace detail {

inline BatchProb default_bp(const std::string& name, Index n) {
  if (name == "vfog-sarah") return practical_sarah(n);
  if (name == "vfog-saga") return {practical_saga(n), 1.0};
  if (name == "vfog-svrg" || name == "vreg" || name == "vrfrbs") return practical_svrg(n);
  return {n, 1.0};
}

/// Divisor applied to the game-family stepsize on the MDP family.
inline double mdp_divisor(const std::string& name) {
  if (name == "og" || name == "vrfrbs") return 1e2;
  return 1e3;
}

}  // namespace detail

inline ResolvedAlgo resolve_algo(const AlgoSpec& a, Family family, Index n, double L) {
  ResolvedAlgo r;
  r.name = a.name;
  const BatchProb bp = detail::default_bp(a.name, n);
  r.p = std::min(1.0, (a.p ? *a.p : bp.p) * a.p_scale);
  const double b_raw = static_cast<double>(a.b ? *a.b : bp.b) * a.b_scale;
  r.b = static_cast<Index>(std::clamp(floor_tol(b_raw), 1.0, static_cast<double>(n)));
  r.s = a.s ? *a.s : 3.0;

  double eta;
  if (a.name == "og")
    eta = og_stepsize(L);
  else if (a.name == "vreg")
    eta = vreg_stepsize(r.p, L);
  else if (a.name == "vrfrbs")
    eta = vrfrbs_stepsize(r.p, L);
  else
    eta = 1.0 / (8.0 * L);
  if (family == Family::Mdp) {
    eta = a.name.rfind("vfog", 0) == 0 ? 1.0 / (1e3 * L) : eta / detail::mdp_divisor(a.name);
  }
  if (a.eta_mult) eta = *a.eta_mult / L;
  if (a.eta) eta = *a.eta;
  if (!(eta > 0.0)) throw ConfigError("algorithm " + a.name + ": stepsize must be positive");
  r.eta = eta;
  return r;
}

inline std::unique_ptr<IterativeMethod> make_method(const AlgoSpec& a, Family family, const Problem& problem) {
  const Index n = problem.n();
  const ResolvedAlgo r = resolve_algo(a, family, n, problem.meta.L);
  if (a.name == "og") return std::make_unique<PegMethod>(a.name, r.eta);
  if (a.name == "vreg") return std::make_unique<VrEgMethod>(a.name, LooplessParams{r.eta, r.p, r.b, a.sampling});
  if (a.name == "vrfrbs")
    return std::make_unique<VrFrbsMethod>(a.name, LooplessParams{r.eta, r.p, r.b, a.sampling});

  ScheduleParams sp;
  sp.s = r.s;
  sp.eta = r.eta;
  sp.rho_n = a.rho_n;
  sp.rho_c = a.rho_c;
  EstimatorConfig ec;
  ec.sampling = a.sampling;
  ec.snapshot = a.snapshot;
  ec.s = r.s;
  ec.sigma2 = problem.meta.sigma2;
  if (a.name == "vfog-exact") {
    ec.kind = EstimatorKind::Exact;
  } else if (a.name == "vfog-sgd") {
    ec.kind = EstimatorKind::MiniBatch;
    if (a.b) {
      ec.schedule = constant_schedule(r.b);
    } else {
      const double scale = a.b_scale;
      ec.schedule = [n, scale](Index, Index epoch) {
        const double b = floor_tol(static_cast<double>(practical_sgd_batch(n, epoch)) * scale);
        return BatchProb{static_cast<Index>(std::clamp(b, 1.0, static_cast<double>(n))), 1.0};
      };
    }
  } else if (a.name == "vfog-svrg") {
    ec.kind = EstimatorKind::LSvrg;
    ec.schedule = constant_schedule(r.b, r.p);
  } else if (a.name == "vfog-saga") {
    ec.kind = EstimatorKind::Saga;
    ec.schedule = constant_schedule(r.b);
  } else if (a.name == "vfog-sarah") {
    ec.kind = EstimatorKind::LSarah;
    ec.schedule = constant_schedule(r.b, r.p);
  } else {
    throw ConfigError("unknown algorithm '" + a.name + "'");
  }
  return std::make_unique<VfogMethod>(a.name, sp, std::move(ec));
}

}  // namespace vfog::bench

#endif
