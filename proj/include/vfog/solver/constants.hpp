#ifndef VFOG_SOLVER_CONSTANTS_HPP
#define VFOG_SOLVER_CONSTANTS_HPP

#include "vfog/core/types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace vfog {

enum class Regime { General, ControlVariate };

struct ConstantsBundle {
  Regime regime = Regime::General;
  double s = 0.0;
  // general regime
  double Lambda0 = 0.0;
  double omega = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  // control-variate regime
  double omega_hat = 0.0;
  double lambda_hat = 0.0;
  double mu_hat = 0.0;
  double Gamma = 0.0;
  double Lambda0_hat = 0.0;
  double c_bar = 0.0;
  std::vector<std::string> warnings;

  /// lambda or lambda_hat, whichever the regime uses for eta < lambda / L.
  double lambda_active() const { return regime == Regime::General ? lambda : lambda_hat; }
  double mu_active() const { return regime == Regime::General ? mu : mu_hat; }
};

/// Constants for the mini-batch / general estimator regime with VR pair
/// (kappa, Theta).
inline ConstantsBundle constants_general(double s, double kappa, double Theta) {
  if (!(s > 2.0)) throw ConfigError("constants: s must exceed 2");
  if (!(kappa <= 1.0) || Theta < 0.0) throw ConfigError("constants: need kappa <= 1 and Theta >= 0");
  const double s1 = s + 1.0;
  if (!(kappa > (2.0 * s + 1.0) / (s1 * s1)))
    throw ConfigError("constants: denominator nonpositive, kappa must exceed (2s+1)/(s+1)^2");
  ConstantsBundle c;
  c.regime = Regime::General;
  c.s = s;
  c.Lambda0 = s * s * (16.0 * s - 18.0) / ((s - 2.0) * (s * s - (1.0 - kappa) * s1 * s1));
  c.omega = 1.0 + 2.0 * (11.0 * s - 13.0) / (s - 2.0) + 2.0 * c.Lambda0 * Theta * s1 * s1 / (s * s);
  c.lambda = 1.0 / std::sqrt(2.0 * (1.0 + c.omega) * s1);
  c.mu = (3.0 * s - 2.0) * c.lambda / (8.0 * (s - 1.0));
  if (s <= 7.0) c.warnings.push_back("s <= 7 lies outside the regime of the rate theorem for this bundle");
  return c;
}

/// Integer offsets inside the control-variate constants. The defaults give
/// omega_hat = 29.625 at s = 5, alpha = 0; `omega_offset = 12` and
/// `gamma_offset = 18` select the alternative readings.
struct VrFactors {
  double omega_offset = 13.0;  // 2(11s - omega_offset)/(s-2)
  double gamma_offset = 19.0;  // 3s^2(16s - gamma_offset)/((s-2)(s+1))
};

inline ConstantsBundle constants_vr(double s, double alpha, double c_bar, VrFactors factors = {}) {
  if (!(s > 2.0)) throw ConfigError("constants: s must exceed 2");
  if (alpha >= 1.0) throw ConfigError("constants: alpha = 1 divides by zero; use the General regime");
  if (alpha < 0.0) throw ConfigError("constants: alpha must lie in [0, 1)");
  if (!(c_bar > 0.0)) throw ConfigError("constants: c_bar must be positive");
  ConstantsBundle c;
  c.regime = Regime::ControlVariate;
  c.s = s;
  c.c_bar = c_bar;
  c.omega_hat = (3.0 * s - 2.0) / (2.0 * (1.0 - alpha) * (s - 1.0)) +
                2.0 * (11.0 * s - factors.omega_offset) / (s - 2.0);
  c.lambda_hat = 1.0 / std::sqrt(2.0 * (s + 1.0) * (1.0 + c.omega_hat));
  c.mu_hat = c.lambda_hat * (3.0 * s - 2.0) / (8.0 * (s - 1.0));
  c.Gamma = 3.0 * s * s * (16.0 * s - factors.gamma_offset) / ((s - 2.0) * (s + 1.0));
  c.Lambda0_hat = (16.0 * s - factors.gamma_offset) / (c_bar * (s - 2.0));
  return c;
}

struct StepsizeRange {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = false;  // collapsed to a single point within rounding
};

/// [8(s-1) rho_n / (3s-2), lambda / L).
inline StepsizeRange stepsize_range(double s, double L, double rho_n, double lambda_active) {
  if (!(L > 0.0)) throw ConfigError("stepsize range: L must be positive");
  if (rho_n < 0.0) throw ConfigError("stepsize range: rho_n must be nonnegative");
  StepsizeRange r;
  r.lo = 8.0 * (s - 1.0) * rho_n / (3.0 * s - 2.0);
  r.hi = lambda_active / L;
  if (r.lo > r.hi * (1.0 + 1e-12))
    throw ConfigError("empty stepsize range: L * rho_n exceeds mu (lower bound " + std::to_string(r.lo) +
                      " > upper bound " + std::to_string(r.hi) + ")");
  r.empty = r.lo >= r.hi * (1.0 - 1e-12);
  return r;
}

/// (s, eta, rho_n) and the per-iteration coefficients of the method.
struct ScheduleParams {
  double s = 5.0;
  double eta = 0.0;
  double rho_n = 0.0;
  double rho_c = 0.0;

  void validate() const {
    if (!(s > 2.0)) throw ConfigError("schedule: s must exceed 2");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("schedule: eta must be positive");
    if (rho_n < 0.0 || rho_c < 0.0) throw ConfigError("schedule: rho must be nonnegative");
  }

  double t(Index k) const { return static_cast<double>(k) + s + 1.0; }

  double gamma(Index k) const {
    const double kd = static_cast<double>(k);
    return eta * (kd + s) / ((s - 2.0) * (kd + s + 1.0));
  }

  /// May be negative for small k when rho_n = 0; used as is.
  double beta(Index k) const {
    const double kd = static_cast<double>(k);
    const double tk = kd + s + 1.0;
    return ((s - 2.0) * eta / (4.0 * (s - 1.0)) + 2.0 * rho_n) * (kd + 1.0) / tk - gamma(k) / tk;
  }
};

/// C_0 = 16(s-1)(s-2) eta / ((3s^2-8s-1) eta - 8(s-1)(s-2) rho_n).
inline double rate_C0(double s, double eta, double rho_n) {
  const double den = (3.0 * s * s - 8.0 * s - 1.0) * eta - 8.0 * (s - 1.0) * (s - 2.0) * rho_n;
  if (!(den > 0.0)) throw ConfigError("rate constant: denominator nonpositive");
  return 16.0 * (s - 1.0) * (s - 2.0) * eta / den;
}

/// R_0^2 from ||G x0 + v0||^2 and ||x0 - x*||^2.
inline double rate_R0_sq(double s, double eta, double res0_sq, double dist0_sq) {
  const double a = ((3.0 * s - 2.0) * (s - 2.0) * s * s - 4.0 * (s - 1.0) * (s - 1.0)) / (8.0 * (s - 1.0));
  const double b = s * (s * s - 1.0) * (s - 2.0) / (2.0 * eta * eta);
  return a * res0_sq + b * dist0_sq;
}

/// C_0 (R_0^2 + Lambda0 S_k) / (k+s)^2.
inline double rate_bound(double C0, double R0_sq, double Lambda0, double S_k, Index k, double s) {
  const double ks = static_cast<double>(k) + s;
  return C0 * (R0_sq + Lambda0 * S_k) / (ks * ks);
}

}  // namespace vfog

#endif
