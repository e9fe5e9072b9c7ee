#ifndef VFOG_TESTS_MC_CHECKS_HPP
#define VFOG_TESTS_MC_CHECKS_HPP

// Monte-Carlo checks of the estimators shared by unit and acceptance tests.

#include "test_util.hpp"

#include <cmath>

namespace vfog::testing {

struct Band {
  double value = 0.0;  // empirical mean (or worst z-score for unbiasedness)
  double se = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Worst per-coordinate |mean - G y| / SE over `draws` replications of one
/// estimate at y from a fixed estimator state. Coordinates with zero sample
/// spread must match to 1e-12.
inline Band unbiasedness(const FiniteSumOperator& op, const Estimator& state, const RealVec& y,
                         const RealVec& y_prev, Index draws, std::uint64_t seed) {
  const RealVec exact = op.eval_full(y);
  const auto p = exact.size();
  RealVec sum = RealVec::Zero(p), sq = RealVec::Zero(p);
  Rng rng(seed);
  for (Index r = 0; r < draws; ++r) {
    Estimator e = state;
    const RealVec g = e.estimate(op, y, y_prev, rng) - exact;
    sum += g;
    sq += g.cwiseProduct(g);
  }
  const double N = static_cast<double>(draws);
  Band out;
  out.pass = true;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double mean = sum[i] / N;
    const double var = std::max(0.0, sq[i] / N - mean * mean);
    const double se = std::sqrt(var / (N - 1.0));
    if (se == 0.0) {
      if (std::abs(mean) > 1e-12) out.pass = false;
      continue;
    }
    const double z = std::abs(mean) / se;
    if (z > out.value) {
      out.value = z;
      out.se = se;
    }
  }
  out.bound = 4.0;
  out.pass = out.pass && out.value <= out.bound;
  return out;
}

/// (1/n) sum_i ||G_i a - G_i b||^2
inline double component_gap(const FiniteSumOperator& op, const RealVec& a, const RealVec& b) {
  double acc = 0.0;
  for (Index i = 0; i < op.size(); ++i) acc += (op.eval_component(i, a) - op.eval_component(i, b)).squaredNorm();
  return acc / static_cast<double>(op.size());
}

/// One-step check of E[Delta_k] <= (1 - kappa) Delta_{k-1} + Theta D_k with
/// D_k = (1/n) sum ||G_i y^k - G_i y^{k-1}||^2, replicated from `state`.
///
/// `state` holds the memory in force at iteration k-1 (Delta_{k-1} is its
/// tracker at y^{k-1}). SAGA refreshes its table during the estimate at
/// y^{k-1}, the others during the estimate at y^k; the matching estimate is
/// replicated and Delta_k is read from the resulting memory at y^k.
inline Band vr_recursion(const FiniteSumOperator& op, const Estimator& state, const RealVec& y_km1,
                         const RealVec& y_k, const RealVec& y_km2, Index draws, std::uint64_t seed) {
  const VrConstants c = state.vr_constants(state.iteration());
  const double delta_prev = state.mse_tracker(op, y_km1);
  const double D = component_gap(op, y_k, y_km1);
  Rng rng(seed);
  double sum = 0.0, sq = 0.0;
  for (Index r = 0; r < draws; ++r) {
    Estimator e = state;
    if (e.kind() == EstimatorKind::Saga)
      e.estimate(op, y_km1, y_km2, rng);
    else
      e.estimate(op, y_k, y_km1, rng);
    const double d = e.mse_tracker(op, y_k);
    sum += d;
    sq += d * d;
  }
  const double N = static_cast<double>(draws);
  Band out;
  out.value = sum / N;
  out.se = std::sqrt(std::max(0.0, sq / N - out.value * out.value) / (N - 1.0));
  out.bound = (1.0 - c.kappa) * delta_prev + c.theta * D;
  out.pass = out.value <= out.bound + 4.0 * out.se;
  return out;
}

/// Mean L-SVRG oracle cost per iteration over `iters` estimates against
/// n p + 2 (1 - p) b.
struct CostCheck {
  double empirical = 0.0;
  double expected = 0.0;
  double rel_error = 0.0;
};

inline CostCheck svrg_cost(const FiniteSumOperator& op, Index b, double p, Index iters, std::uint64_t seed) {
  EstimatorConfig cfg;
  cfg.kind = EstimatorKind::LSvrg;
  cfg.schedule = constant_schedule(b, p);
  Estimator e(cfg);
  Rng rng(seed);
  RealVec y = random_vec(op.dim(), rng);
  e.init_full_pass(op, y);
  const std::uint64_t start = e.oracle_calls();
  for (Index k = 0; k < iters; ++k) {
    const RealVec y_next = y + 0.1 * random_vec(op.dim(), rng);
    e.estimate(op, y_next, y, rng);
    y = y_next;
  }
  CostCheck out;
  out.empirical = static_cast<double>(e.oracle_calls() - start) / static_cast<double>(iters);
  const double n = static_cast<double>(op.size());
  out.expected = n * p + 2.0 * (1.0 - p) * static_cast<double>(b);
  out.rel_error = std::abs(out.empirical - out.expected) / out.expected;
  return out;
}

/// Estimator of `kind` initialised at y0 with constant (b, p).
inline Estimator make_estimator(EstimatorKind kind, const FiniteSumOperator& op, const RealVec& y0, Index b,
                                double p) {
  EstimatorConfig cfg;
  cfg.kind = kind;
  cfg.schedule = constant_schedule(b, p);
  Estimator e(cfg);
  e.init_full_pass(op, y0);
  return e;
}

/// L-SARAH after one non-refreshing estimate at y1 from y0, so the running
/// value carries a nonzero error into the recursion check.
inline Estimator sarah_after_one_step(const FiniteSumOperator& op, const RealVec& y0, const RealVec& y1, Index b,
                                      double p) {
  for (std::uint64_t seed = 1;; ++seed) {
    Estimator e = make_estimator(EstimatorKind::LSarah, op, y0, b, p);
    Rng rng(seed);
    e.estimate(op, y1, y0, rng);
    if (e.mse_tracker(op, y1) > 0.0) return e;
  }
}

}  // namespace vfog::testing

#endif
