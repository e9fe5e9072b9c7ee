#ifndef VFOG_PROBLEMS_PROJECTIONS_HPP
#define VFOG_PROBLEMS_PROJECTIONS_HPP

#include "vfog/core/types.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace vfog {

/// Euclidean projection onto {x >= 0, sum x = 1} by sort-and-threshold.
inline RealVec project_simplex(const RealVec& y) {
  const Eigen::Index d = y.size();
  if (d == 0) throw ConfigError("project_simplex: empty vector");
  std::vector<double> u(y.data(), y.data() + d);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    cum += u[static_cast<std::size_t>(j)];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
  }
  return (y.array() - theta).max(0.0).matrix();
}

/// Projection onto {x >= 0, ||x|| <= R}: clamp, then shrink onto the ball.
inline RealVec project_nonneg_ball(const RealVec& y, double R) {
  if (!(R > 0.0)) throw ConfigError("project_nonneg_ball: R must be positive");
  RealVec x = y.cwiseMax(0.0);
  const double nrm = x.norm();
  if (nrm > R) x *= R / nrm;
  return x;
}

inline bool in_simplex(const RealVec& x, double tol = 1e-9) {
  return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol * std::max<double>(1.0, static_cast<double>(x.size()));
}

inline bool in_nonneg_ball(const RealVec& x, double R, double tol = 1e-9) {
  return x.minCoeff() >= -tol && x.norm() <= R * (1.0 + tol);
}

}  // namespace vfog

#endif
