#ifndef VFOG_PROBLEMS_NORM_HPP
#define VFOG_PROBLEMS_NORM_HPP

#include "vfog/core/rng.hpp"
#include "vfog/core/types.hpp"

#include <cmath>
#include <functional>

namespace vfog {

struct NormEstimate {
  double value = 0.0;
  bool converged = false;
  Index iterations = 0;
};

using LinearMap = std::function<RealVec(const RealVec&)>;

/// ||A||_2 by power iteration on A^T A from a fixed pseudo-random start.
/// Stops when successive estimates agree to `tol` relative; otherwise
/// returns the last estimate with converged = false.
inline NormEstimate spectral_norm(const LinearMap& apply, const LinearMap& apply_t, Index dim, Index iters = 10000,
                                  double tol = 1e-9) {
  if (dim == 0) throw ConfigError("spectral_norm: zero dimension");
  if (iters < 10) throw ConfigError("spectral_norm: need at least 10 iterations");
  Rng rng(0x5eed);
  RealVec v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  v.normalize();

  NormEstimate est;
  double prev = 0.0;
  for (Index it = 1; it <= iters; ++it) {
    const RealVec av = apply(v);
    RealVec w = apply_t(av);
    const double sigma = av.norm();
    est.value = sigma;
    est.iterations = it;
    const double wn = w.norm();
    if (wn == 0.0) {
      est.converged = true;  // v in the null space; A is zero along every iterate
      return est;
    }
    if (it > 1 && std::abs(sigma - prev) <= tol * sigma) {
      est.converged = true;
      return est;
    }
    prev = sigma;
    v = w / wn;
  }
  return est;
}

inline NormEstimate spectral_norm(const Matrix& A, Index iters = 10000, double tol = 1e-9) {
  return spectral_norm([&](const RealVec& x) -> RealVec { return A * x; },
                       [&](const RealVec& y) -> RealVec { return A.transpose() * y; },
                       static_cast<Index>(A.cols()), iters, tol);
}

}  // namespace vfog

#endif
