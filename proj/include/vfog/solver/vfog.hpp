#ifndef VFOG_SOLVER_VFOG_HPP
#define VFOG_SOLVER_VFOG_HPP

#include "vfog/core/operator.hpp"
#include "vfog/estimators/estimator.hpp"
#include "vfog/solver/constants.hpp"
#include "vfog/solver/method.hpp"

#include <string>
#include <vector>

namespace vfog {

struct SolverState {
  RealVec x, y_prev, z, v;
  RealVec g_tilde_prev;  // G~y^{k-1}
  Index k = 0;
};

/// x = z = y^{-1} = x0, v = 0, G~y^{-1} = G x0 through one full pass.
inline SolverState vfog_init(const Problem& problem, const RealVec& x0, const ScheduleParams& params,
                             Estimator& estimator) {
  params.validate();
  require_finite(x0);
  if (static_cast<Index>(x0.size()) != problem.dim()) throw ConfigError("x0 has the wrong dimension");
  if (!problem.resolvent->contains_zero_at(x0))
    throw ConfigError("infeasible start: 0 is not in T x0, so v0 = 0 is not admissible");
  SolverState st;
  st.x = x0;
  st.z = x0;
  st.y_prev = x0;
  st.v = RealVec::Zero(x0.size());
  st.g_tilde_prev = estimator.init_full_pass(*problem.op, x0);
  return st;
}

/// One iteration in resolvent form:
///   xh = (s/t) z + ((t-s)/t) x,   d = G~y^{k-1} + v
///   y  = xh - (eta - beta) d
///   x+ = J(xh - eta G~y + beta d),   z+ = z - (gamma/s) d
///   v+ = (xh - x+ + beta d)/eta - G~y
inline void vfog_step(SolverState& st, Estimator& estimator, const Problem& problem, const ScheduleParams& params,
                      Rng& rng) {
  const double s = params.s;
  const double eta = params.eta;
  const double t = params.t(st.k);
  const double beta = params.beta(st.k);
  const double gamma = params.gamma(st.k);

  const RealVec x_hat = (s / t) * st.z + ((t - s) / t) * st.x;
  const RealVec d = st.g_tilde_prev + st.v;
  RealVec y = x_hat - (eta - beta) * d;
  require_finite(y);

  RealVec g = estimator.estimate(*problem.op, y, st.y_prev, rng);
  const RealVec u = x_hat - eta * g + beta * d;
  RealVec x_next = problem.resolvent->apply(eta, u);
  if (problem.resolvent->is_zero())
    st.v.setZero();
  else
    st.v = (u - x_next) / eta;
  st.z -= (gamma / s) * d;
  st.x = std::move(x_next);
  st.y_prev = std::move(y);
  st.g_tilde_prev = std::move(g);
  ++st.k;
}

/// VFOG with a chosen estimator, driven by the run loop.
class VfogMethod final : public IterativeMethod {
 public:
  VfogMethod(std::string name, ScheduleParams params, EstimatorConfig estimator)
      : name_(std::move(name)), params_(params), estimator_(std::move(estimator)) {}

  std::string name() const override { return name_; }

  void init(const Problem& problem, Rng&) override {
    state_ = vfog_init(problem, problem.x0, params_, estimator_);
  }

  void step(const Problem& problem, Rng& rng) override {
    if (!warned_beta_ && params_.beta(state_.k) < 0.0) {
      warnings_.push_back("beta_k < 0 at k = " + std::to_string(state_.k) + "; applied as given");
      warned_beta_ = true;
    }
    vfog_step(state_, estimator_, problem, params_, rng);
  }

  const RealVec& x() const override { return state_.x; }
  const RealVec& v() const override { return state_.v; }
  Index iteration() const override { return state_.k; }
  std::uint64_t oracle_calls() const override { return estimator_.oracle_calls(); }
  const std::vector<std::string>& warnings() const override { return warnings_; }

  const SolverState& state() const { return state_; }
  const Estimator& estimator() const { return estimator_; }
  const ScheduleParams& params() const { return params_; }

 private:
  std::string name_;
  ScheduleParams params_;
  Estimator estimator_;
  SolverState state_;
  bool warned_beta_ = false;
  std::vector<std::string> warnings_;
};

}  // namespace vfog

#endif
