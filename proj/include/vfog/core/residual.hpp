#ifndef VFOG_CORE_RESIDUAL_HPP
#define VFOG_CORE_RESIDUAL_HPP

#include "vfog/core/operator.hpp"

namespace vfog {

/// ||G x + v|| with v the algorithm-maintained element of T x.
inline double natural_residual(const FiniteSumOperator& op, const RealVec& x, const RealVec& v) {
  require_finite(x);
  require_finite(v);
  return (op.eval_full(x) + v).norm();
}

inline double natural_residual(const Problem& problem, const RealVec& x, const RealVec& v) {
  return natural_residual(*problem.op, x, v);
}

/// Forward-backward residual ||x - J_{lambda T}(x - lambda G x)|| / lambda.
/// Never exceeds natural_residual(x, v) for v in T x.
inline double fb_residual(const FiniteSumOperator& op, const ResolventMap& resolvent,
                          const RealVec& x, double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("fb_residual: lambda must be positive");
  require_finite(x);
  const RealVec gx = op.eval_full(x);
  return (x - resolvent.apply(lambda, x - lambda * gx)).norm() / lambda;
}

inline double fb_residual(const Problem& problem, const RealVec& x, double lambda) {
  return fb_residual(*problem.op, *problem.resolvent, x, lambda);
}

}  // namespace vfog

#endif
