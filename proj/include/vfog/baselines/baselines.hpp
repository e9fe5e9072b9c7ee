#ifndef VFOG_BASELINES_BASELINES_HPP
#define VFOG_BASELINES_BASELINES_HPP

#include "vfog/core/sampling.hpp"
#include "vfog/solver/method.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace vfog {

inline double og_stepsize(double L) { return 1.0 / L; }
inline double vreg_stepsize(double p, double L) { return 0.95 * std::sqrt(p) / L; }
inline double vrfrbs_stepsize(double p, double L) { return 0.95 * (1.0 - std::sqrt(1.0 - p)) / (2.0 * L); }

struct LooplessParams {
  double eta = 0.0;
  double p = 1.0;
  Index b = 1;
  Sampling sampling = Sampling::WithReplacement;
};

namespace detail {

class BaselineBase : public IterativeMethod {
 public:
  explicit BaselineBase(std::string name) : name_(std::move(name)) {}
  std::string name() const override { return name_; }
  const RealVec& x() const override { return x_; }
  const RealVec& v() const override { return v_; }
  Index iteration() const override { return k_; }
  std::uint64_t oracle_calls() const override { return counter_.calls(); }
  const std::vector<std::string>& warnings() const override { return warnings_; }

 protected:
  void start(const Problem& problem) {
    require_finite(problem.x0);
    if (!problem.resolvent->contains_zero_at(problem.x0))
      throw ConfigError("infeasible start: 0 is not in T x0");
    x_ = problem.x0;
    v_ = RealVec::Zero(x_.size());
    k_ = 0;
  }
  /// x+ = J(u) and the matching v+ = (u - x+)/eta in T x+.
  void resolve(const Problem& problem, double eta, const RealVec& u) {
    x_ = problem.resolvent->apply(eta, u);
    if (problem.resolvent->is_zero())
      v_.setZero();
    else
      v_ = (u - x_) / eta;
    require_finite(x_);
  }

  std::string name_;
  OracleCounter counter_;
  RealVec x_, v_;
  Index k_ = 0;
  std::vector<std::string> warnings_;
};

inline void check_loopless(const LooplessParams& prm, Index n) {
  if (!(prm.eta > 0.0)) throw ConfigError("baseline: eta must be positive");
  if (!(prm.p > 0.0 && prm.p <= 1.0)) throw ConfigError("baseline: p must lie in (0, 1]");
  if (prm.b == 0 || prm.b > n) throw ConfigError("baseline: need 1 <= b <= n");
}

}  // namespace detail

/// Past-extragradient / optimistic gradient:
///   y^k = J(x^k - eta G y^{k-1}),  x^{k+1} = J(x^k - eta G y^k).
/// One full pass per iteration; y^{-1} = x^0 costs one pass at start.
class PegMethod final : public detail::BaselineBase {
 public:
  PegMethod(std::string name, double eta) : BaselineBase(std::move(name)), eta_(eta) {
    if (!(eta > 0.0)) throw ConfigError("peg: eta must be positive");
  }

  void init(const Problem& problem, Rng&) override {
    start(problem);
    g_prev_ = counter_.full(*problem.op, x_);
  }

  void step(const Problem& problem, Rng&) override {
    const RealVec y = problem.resolvent->apply(eta_, x_ - eta_ * g_prev_);
    g_prev_ = counter_.full(*problem.op, y);
    resolve(problem, eta_, x_ - eta_ * g_prev_);
    ++k_;
  }

  const RealVec& g_prev() const { return g_prev_; }

 private:
  double eta_;
  RealVec g_prev_;
};

/// Loopless SVRG extragradient with anchor w:
///   xbar  = a x + (1-a) w,            a = 1 - p
///   xh    = J(xbar - eta G w)
///   g     = G w + G_B xh - G_B w
///   x+    = J(xbar - eta g)
///   w+    = x+ with probability p (full pass for G w+), else w.
/// Start: w = x0, G w through one full pass.
class VrEgMethod final : public detail::BaselineBase {
 public:
  VrEgMethod(std::string name, LooplessParams prm) : BaselineBase(std::move(name)), prm_(prm) {}

  void init(const Problem& problem, Rng&) override {
    detail::check_loopless(prm_, problem.n());
    start(problem);
    w_ = x_;
    gw_ = counter_.full(*problem.op, w_);
  }

  void step(const Problem& problem, Rng& rng) override {
    const auto& op = *problem.op;
    const double a = 1.0 - prm_.p;
    const RealVec xbar = a * x_ + (1.0 - a) * w_;
    const RealVec xh = problem.resolvent->apply(prm_.eta, xbar - prm_.eta * gw_);
    RealVec g;
    if (covers_all(op.size(), prm_.b, prm_.sampling)) {
      g = counter_.full(op, xh);
    } else {
      const auto batch = draw_batch(op.size(), prm_.b, prm_.sampling, rng);
      g = gw_ + counter_.batch_mean(op, batch, xh) - counter_.batch_mean(op, batch, w_);
    }
    resolve(problem, prm_.eta, xbar - prm_.eta * g);
    if (rng.bernoulli(prm_.p)) {
      w_ = x_;
      gw_ = counter_.full(op, w_);
    }
    ++k_;
  }

 private:
  LooplessParams prm_;
  RealVec w_, gw_;
};

/// Forward-reflected-backward with a loopless SVRG estimator:
///   x+ = J(x - eta [G w_k + G_B x_k - G_B w_{k-1}])
///   w_{k+1} = x+ with probability p (full pass), else w_k.
/// Start: w_0 = w_{-1} = x0.
class VrFrbsMethod final : public detail::BaselineBase {
 public:
  VrFrbsMethod(std::string name, LooplessParams prm) : BaselineBase(std::move(name)), prm_(prm) {}

  void init(const Problem& problem, Rng&) override {
    detail::check_loopless(prm_, problem.n());
    start(problem);
    w_ = x_;
    w_prev_ = x_;
    gw_ = counter_.full(*problem.op, w_);
  }

  void step(const Problem& problem, Rng& rng) override {
    const auto& op = *problem.op;
    RealVec g;
    if (covers_all(op.size(), prm_.b, prm_.sampling)) {
      g = gw_ + counter_.full(op, x_) - counter_.full(op, w_prev_);
    } else {
      const auto batch = draw_batch(op.size(), prm_.b, prm_.sampling, rng);
      g = gw_ + counter_.batch_mean(op, batch, x_) - counter_.batch_mean(op, batch, w_prev_);
    }
    resolve(problem, prm_.eta, x_ - prm_.eta * g);
    w_prev_ = w_;
    if (rng.bernoulli(prm_.p)) {
      w_ = x_;
      gw_ = counter_.full(op, w_);
    }
    ++k_;
  }

 private:
  LooplessParams prm_;
  RealVec w_, w_prev_, gw_;
};

}  // namespace vfog

#endif
