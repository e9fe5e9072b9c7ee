#ifndef VFOG_ESTIMATORS_SCHEDULES_HPP
#define VFOG_ESTIMATORS_SCHEDULES_HPP

#include "vfog/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vfog {

/// Batch size and switching/snapshot probability for one iteration.
struct BatchProb {
  Index b = 1;
  double p = 1.0;
};

enum class MiniBatchGrowth { Power, LogPower };

namespace detail {
inline Index to_batch(double value) {
  constexpr double cap = 1e18;
  if (!(value < cap)) return static_cast<Index>(cap);
  return static_cast<Index>(std::max(1.0, floor_tol(value)));
}
}  // namespace detail

/// Increasing mini-batch size floor(sigma2 (k+s)^{3+nu} / delta), or
/// floor(sigma2 (k+s)^3 log(k+s) / delta) for the log variant; at least 1.
inline Index minibatch_schedule(double sigma2, double delta, double nu, double s, Index k,
                                MiniBatchGrowth variant) {
  if (!(delta > 0.0)) throw ConfigError("minibatch schedule: delta must be positive");
  if (!(sigma2 > 0.0)) throw ConfigError("minibatch schedule: sigma2 must be positive");
  if (s < 2.0) throw ConfigError("minibatch schedule: s must be at least 2");
  const double ks = static_cast<double>(k) + s;
  double value;
  if (variant == MiniBatchGrowth::Power) {
    if (!(nu > 0.0)) throw ConfigError("minibatch schedule: nu must be positive");
    value = sigma2 * std::pow(ks, 3.0 + nu) / delta;
  } else {
    value = sigma2 * ks * ks * ks * std::log(ks) / delta;
  }
  return detail::to_batch(value);
}

/// Batch rule used by the mini-batch experiments:
/// b = max{5, min{0.05 (l+1)^3, n}} with l the epoch counter.
inline Index practical_sgd_batch(Index n, Index epoch) {
  const double l1 = static_cast<double>(epoch) + 1.0;
  const double grow = std::min(0.05 * l1 * l1 * l1, static_cast<double>(n));
  return static_cast<Index>(std::max(5.0, std::floor(grow)));
}

/// Practical L-SVRG constants: p = 0.5 n^{-1/3}, b = floor(0.5 n^{2/3}).
inline BatchProb practical_svrg(Index n) {
  const double c = std::cbrt(static_cast<double>(n));
  return {static_cast<Index>(floor_tol(0.5 * c * c)), 0.5 / c};
}

/// Practical SAGA batch: b = floor(0.5 n^{2/3}).
inline Index practical_saga(Index n) {
  const double c = std::cbrt(static_cast<double>(n));
  return static_cast<Index>(floor_tol(0.5 * c * c));
}

/// Practical L-SARAH constants: p = 0.5 n^{-1/2}, b = floor(0.5 n^{1/2}).
inline BatchProb practical_sarah(Index n) {
  const double r = std::sqrt(static_cast<double>(n));
  return {static_cast<Index>(floor_tol(0.5 * r)), 0.5 / r};
}

/// Theoretical L-SVRG schedule for the control-variate regime.
/// Throws when n is below the size the schedule needs; callers may then fall
/// back to practical_svrg().
inline BatchProb schedule_svrg(Index n, double nu, double c2, double Gamma, double eta, double rho_c,
                               double s, Index k) {
  if (!(nu > 0.0 && nu < 0.5)) throw ConfigError("svrg schedule: nu must lie in (0, 1/2)");
  if (!(c2 > 0.0 && rho_c > 0.0 && eta > 0.0 && Gamma > 0.0))
    throw ConfigError("svrg schedule: c2, rho_c, eta, Gamma must be positive");
  const double nd = static_cast<double>(n);
  const double ratio = 8.0 * Gamma * eta / (c2 * c2 * rho_c);
  const double n_min = std::max(std::pow(2.0 * c2, 1.0 / nu), std::pow(ratio, 1.0 / (1.0 - 2.0 * nu)));
  if (nd < n_min)
    throw ConfigError("n too small for theoretical SVRG schedule (need n >= " + std::to_string(n_min) +
                      "); use the practical values instead");
  const double nnu = std::pow(nd, nu);
  const double b = floor_tol(ratio * nnu * nnu);
  if (b < 1.0 || b > nd) throw ConfigError("svrg schedule: batch size outside [1, n]");
  const double switch_k = std::floor(4.0 * nnu / c2 - s);
  const double kd = static_cast<double>(k);
  double p = (kd <= switch_k) ? c2 / nnu + 4.0 / (kd + s + 1.0) : 2.0 * c2 / nnu;
  p = std::min(p, 1.0);
  return {static_cast<Index>(b), p};
}

/// Theoretical SAGA batch schedule. Requires n >= 80 Gamma eta / rho_c.
inline Index schedule_saga(Index n, double Gamma, double eta, double rho_c, double s, Index k) {
  if (!(rho_c > 0.0 && eta > 0.0 && Gamma > 0.0))
    throw ConfigError("saga schedule: rho_c, eta, Gamma must be positive");
  const double nd = static_cast<double>(n);
  if (nd < 80.0 * Gamma * eta / rho_c)
    throw ConfigError("n too small for theoretical SAGA schedule (need n >= 80 Gamma eta / rho_c); "
                      "use the practical value instead");
  const double c = std::cbrt(10.0 * Gamma * eta / rho_c);
  const double n23 = std::cbrt(nd) * std::cbrt(nd);
  const double switch_k = std::floor(4.0 * std::cbrt(nd) / c - s);
  const double kd = static_cast<double>(k);
  const double b = (kd <= switch_k) ? floor_tol(c * n23 + 4.0 * nd / (kd + s + 1.0)) : floor_tol(2.0 * c * n23);
  return static_cast<Index>(std::clamp(b, 1.0, nd));
}

/// Theoretical L-SARAH schedule, or the fixed-probability variant
/// p = Gamma eta / (c1 rho_c sqrt(n)) + 2/(s+1) when `fixed` is set.
inline BatchProb schedule_sarah(Index n, double nu, double c1, double Gamma, double eta, double rho_c,
                                double s, Index k, bool fixed) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw ConfigError("sarah schedule: nu must lie in [0, 1]");
  if (!(c1 > 0.0 && rho_c > 0.0 && eta > 0.0 && Gamma > 0.0))
    throw ConfigError("sarah schedule: c1, rho_c, eta, Gamma must be positive");
  const double nd = static_cast<double>(n);
  if (c1 > std::pow(nd, 1.0 - nu) * (1.0 + 1e-12)) throw ConfigError("sarah schedule: need c1 <= n^(1-nu)");
  const double ratio = Gamma * eta / (c1 * rho_c);
  const double nnu = std::pow(nd, nu);
  if (nnu < 2.0 * ratio * (1.0 - 1e-12))
    throw ConfigError("n too small for theoretical SARAH schedule (need n >= (2 Gamma eta/(c1 rho_c))^(1/nu)); "
                      "use the practical values instead");
  const double b = floor_tol(c1 * nnu);
  if (b < 1.0 || b > nd) throw ConfigError("sarah schedule: batch size outside [1, n]");
  double p;
  if (fixed) {
    p = ratio / std::sqrt(nd) + 2.0 / (s + 1.0);
  } else {
    const double switch_k = std::floor(2.0 * nnu / ratio - s);
    const double kd = static_cast<double>(k);
    p = (kd <= switch_k) ? ratio / nnu + 2.0 / (kd + s + 1.0) : 2.0 * ratio / nnu;
  }
  return {static_cast<Index>(b), std::min(p, 1.0)};
}

}  // namespace vfog

#endif
