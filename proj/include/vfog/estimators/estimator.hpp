#ifndef VFOG_ESTIMATORS_ESTIMATOR_HPP
#define VFOG_ESTIMATORS_ESTIMATOR_HPP

#include "vfog/core/operator.hpp"
#include "vfog/core/rng.hpp"
#include "vfog/core/sampling.hpp"
#include "vfog/estimators/schedules.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vfog {

enum class EstimatorKind { Exact, MiniBatch, LSvrg, Saga, LSarah };

inline const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Exact: return "exact";
    case EstimatorKind::MiniBatch: return "minibatch";
    case EstimatorKind::LSvrg: return "l-svrg";
    case EstimatorKind::Saga: return "saga";
    case EstimatorKind::LSarah: return "l-sarah";
  }
  return "?";
}

/// Where a successful L-SVRG coin flip moves the snapshot.
///  - Current: snapshot := y^k; the full pass then is the estimate itself, so
///    an iteration costs n with probability p and 2b otherwise.
///  - Previous: snapshot := y^{k-1} and the batch correction is always
///    formed, costing n + 2b on refresh.
enum class SvrgSnapshot { Current, Previous };

/// Per-iteration (b_k, p_k). `k` is the estimator's iteration index,
/// `epoch` the completed oracle epochs floor(calls / n).
using ScheduleFn = std::function<BatchProb(Index k, Index epoch)>;

inline ScheduleFn constant_schedule(Index b, double p = 1.0) {
  return [b, p](Index, Index) { return BatchProb{b, p}; };
}

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Exact;
  ScheduleFn schedule = constant_schedule(1, 1.0);
  Sampling sampling = Sampling::WithReplacement;
  SvrgSnapshot snapshot = SvrgSnapshot::Current;
  // mini-batch only: variance bound and s, giving delta_k = sigma2 t_k^2 / b_k
  double sigma2 = 0.0;
  double s = 3.0;
};

/// Constants of the recursive variance bound
///   E_k[Delta_k] <= (1 - kappa) Delta_{k-1} + Theta E||G_xi y^k - G_xi y^{k-1}||^2 + delta_k / t_k^2.
struct VrConstants {
  double kappa = 1.0;
  double theta = 0.0;
  double delta = 0.0;
  std::string tracker;
};

/// kappa_k >= eta Gamma Theta_k / rho_c + 2/(k+s+1), up to a relative 1e-12
/// so schedules built to meet it with equality are not rejected by rounding.
inline bool check_kappa_theta(const VrConstants& vrc, double eta, double rho_c, double Gamma, Index k, double s) {
  if (!(rho_c > 0.0))
    throw ConfigError("kappa/theta condition undefined for rho_c = 0; use the general (mini-batch) regime");
  const double rhs = eta * Gamma * vrc.theta / rho_c + 2.0 / (static_cast<double>(k) + s + 1.0);
  return vrc.kappa >= rhs * (1.0 - 1e-12);
}

/// Stochastic estimate of G y^k with its own memory and oracle accounting.
/// Value type: copies are independent (used for Monte-Carlo replication).
class Estimator {
 public:
  explicit Estimator(EstimatorConfig config) : config_(std::move(config)) {}

  EstimatorKind kind() const { return config_.kind; }
  const EstimatorConfig& config() const { return config_; }
  std::uint64_t oracle_calls() const { return counter_.calls(); }
  Index iteration() const { return k_; }
  BatchProb last_schedule() const { return last_; }

  const RealVec& snapshot() const { return snapshot_; }
  const RealVec& snapshot_value() const { return snapshot_value_; }
  const Matrix& table() const { return table_; }
  const RealVec& table_sum() const { return table_sum_; }
  const RealVec& running() const { return running_; }

  /// One full pass at y0 seeding every memory slot; returns G y0.
  RealVec init_full_pass(const FiniteSumOperator& op, const RealVec& y0) {
    require_finite(y0);
    n_ = op.size();
    const RealVec g0 = counter_.full(op, y0);
    switch (config_.kind) {
      case EstimatorKind::LSvrg:
        snapshot_ = y0;
        snapshot_value_ = g0;
        break;
      case EstimatorKind::Saga: {
        // row values G_xi y0 are charged to the pass above
        table_.resize(static_cast<Eigen::Index>(op.dim()), static_cast<Eigen::Index>(n_));
        for (Index i = 0; i < n_; ++i) table_.col(static_cast<Eigen::Index>(i)) = op.eval_component(i, y0);
        table_sum_ = table_.rowwise().sum();
        break;
      }
      case EstimatorKind::LSarah:
        running_ = g0;
        break;
      default:
        break;
    }
    initialized_ = true;
    return g0;
  }

  /// G~y^k. `y_prev` is the previous query point, used by L-SARAH's
  /// difference term and by the Previous snapshot mode of L-SVRG.
  RealVec estimate(const FiniteSumOperator& op, const RealVec& y, const RealVec& y_prev, Rng& rng) {
    if (!initialized_) throw ConfigError("estimator used before init_full_pass");
    last_ = current_schedule();
    if (last_.b == 0) throw ConfigError("empty mini-batch");
    if (!(last_.p > 0.0 && last_.p <= 1.0)) throw ConfigError("probability p_k outside (0, 1]");
    last_.b = std::min(last_.b, n_);
    RealVec out;
    switch (config_.kind) {
      case EstimatorKind::Exact:
        out = counter_.full(op, y);
        break;
      case EstimatorKind::MiniBatch:
        out = minibatch(op, y, rng);
        break;
      case EstimatorKind::LSvrg:
        out = svrg(op, y, y_prev, rng);
        break;
      case EstimatorKind::Saga:
        out = saga(op, y, rng);
        break;
      case EstimatorKind::LSarah:
        out = sarah(op, y, y_prev, rng);
        break;
    }
    ++k_;
    return out;
  }

  /// Closed-form constants at iteration k for the active estimator.
  VrConstants vr_constants(Index k) const {
    const BatchProb bp = schedule_at(k);
    const double b = static_cast<double>(std::min(bp.b, n_ == 0 ? bp.b : n_));
    const double n = static_cast<double>(n_);
    switch (config_.kind) {
      case EstimatorKind::LSvrg:
        return {bp.p / 2.0, 4.0 / (b * bp.p), 0.0, "(1/b_k) E_xi ||G_xi y^k - G_xi ybar^k||^2"};
      case EstimatorKind::Saga:
        return {b / (2.0 * n), 5.0 * n / (b * b), 0.0, "(1/(n b_k)) sum_xi ||G_xi y^k - Ghat_xi y^k||^2"};
      case EstimatorKind::LSarah:
        return {bp.p, 1.0 / b, 0.0, "||G~y^k - G y^k||^2"};
      case EstimatorKind::MiniBatch: {
        const double t = static_cast<double>(k) + config_.s + 1.0;
        return {1.0, 0.0, config_.sigma2 * t * t / b, "sigma^2 / b_k"};
      }
      case EstimatorKind::Exact:
        break;
    }
    return {1.0, 0.0, 0.0, "0"};
  }

  /// The quantity Delta bounding the estimator MSE, evaluated at y with the
  /// current memory (snapshot, table, or running value).
  double mse_tracker(const FiniteSumOperator& op, const RealVec& y) const {
    // batch size of the latest estimate, or of the first one before any
    const double b = static_cast<double>(k_ == 0 ? std::min(schedule_at(0).b, n_) : last_.b);
    const double n = static_cast<double>(n_);
    switch (config_.kind) {
      case EstimatorKind::LSvrg: {
        double acc = 0.0;
        for (Index i = 0; i < n_; ++i) acc += (op.eval_component(i, y) - op.eval_component(i, snapshot_)).squaredNorm();
        return acc / (n * b);
      }
      case EstimatorKind::Saga: {
        double acc = 0.0;
        for (Index i = 0; i < n_; ++i)
          acc += (op.eval_component(i, y) - table_.col(static_cast<Eigen::Index>(i))).squaredNorm();
        return acc / (n * b);
      }
      case EstimatorKind::LSarah:
        return (running_ - op.eval_full(y)).squaredNorm();
      case EstimatorKind::MiniBatch:
        return config_.sigma2 / b;
      case EstimatorKind::Exact:
        break;
    }
    return 0.0;
  }

 private:
  BatchProb schedule_at(Index k) const {
    const Index epoch = n_ == 0 ? 0 : static_cast<Index>(counter_.calls() / n_);
    return config_.schedule(k, epoch);
  }
  BatchProb current_schedule() const { return schedule_at(k_); }

  RealVec minibatch(const FiniteSumOperator& op, const RealVec& y, Rng& rng) {
    if (covers_all(n_, last_.b, config_.sampling)) return counter_.full(op, y);
    const auto batch = draw_batch(n_, last_.b, config_.sampling, rng);
    return counter_.batch_mean(op, batch, y);
  }

  RealVec svrg(const FiniteSumOperator& op, const RealVec& y, const RealVec& y_prev, Rng& rng) {
    const bool refresh = rng.bernoulli(last_.p);
    if (config_.snapshot == SvrgSnapshot::Current) {
      if (refresh) {
        snapshot_ = y;
        snapshot_value_ = counter_.full(op, y);
        return snapshot_value_;
      }
    } else if (refresh) {
      snapshot_ = y_prev;
      snapshot_value_ = counter_.full(op, y_prev);
    }
    // control variate cancels exactly when the batch is all of [n]
    if (covers_all(n_, last_.b, config_.sampling)) return counter_.full(op, y);
    const auto batch = draw_batch(n_, last_.b, config_.sampling, rng);
    return snapshot_value_ + counter_.batch_mean(op, batch, y) - counter_.batch_mean(op, batch, snapshot_);
  }

  RealVec saga(const FiniteSumOperator& op, const RealVec& y, Rng& rng) {
    const auto batch = draw_batch(n_, last_.b, config_.sampling, rng);
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    RealVec out = table_sum_ / static_cast<double>(n_);
    std::vector<RealVec> fresh;
    fresh.reserve(batch.size());
    for (Index i : batch) {
      fresh.push_back(counter_.component(op, i, y));
      out += inv_b * (fresh.back() - table_.col(static_cast<Eigen::Index>(i)));
    }
    // rows of this batch now hold G_xi y^k, the "previous point" values of
    // the next iteration
    for (std::size_t j = 0; j < batch.size(); ++j) {
      auto col = table_.col(static_cast<Eigen::Index>(batch[j]));
      table_sum_ += fresh[j] - col;
      col = fresh[j];
    }
    if (++updates_since_resum_ >= n_) {
      table_sum_ = table_.rowwise().sum();
      updates_since_resum_ = 0;
    }
    return out;
  }

  RealVec sarah(const FiniteSumOperator& op, const RealVec& y, const RealVec& y_prev, Rng& rng) {
    if (rng.bernoulli(last_.p)) {
      running_ = counter_.full(op, y);
      return running_;
    }
    const auto batch = draw_batch(n_, last_.b, config_.sampling, rng);
    running_ += counter_.batch_mean(op, batch, y) - counter_.batch_mean(op, batch, y_prev);
    return running_;
  }

  EstimatorConfig config_;
  OracleCounter counter_;
  Index n_ = 0;
  Index k_ = 0;
  bool initialized_ = false;
  BatchProb last_{};
  RealVec snapshot_, snapshot_value_;
  Matrix table_;
  RealVec table_sum_;
  Index updates_since_resum_ = 0;
  RealVec running_;
};

}  // namespace vfog

#endif
