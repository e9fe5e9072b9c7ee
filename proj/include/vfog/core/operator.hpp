#ifndef VFOG_CORE_OPERATOR_HPP
#define VFOG_CORE_OPERATOR_HPP

#include "vfog/core/types.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>

namespace vfog {

/// G x = (1/n) sum_i G_i x. Implementations are immutable after
/// construction and may be shared between concurrent runs.
///
/// Oracle calls are not counted here; callers (estimators, baselines) own
/// the accounting.
class FiniteSumOperator {
 public:
  virtual ~FiniteSumOperator() = default;

  /// Number of components n.
  virtual Index size() const = 0;
  /// Dimension p of x and of every G_i x.
  virtual Index dim() const = 0;

  /// out += scale * G_i x
  virtual void add_component(Index i, const RealVec& x, double scale, RealVec& out) const = 0;

  RealVec eval_component(Index i, const RealVec& x) const {
    RealVec out = RealVec::Zero(static_cast<Eigen::Index>(dim()));
    add_component(i, x, 1.0, out);
    return out;
  }

  /// Mean over all n components. Overrides must agree with the component
  /// average to rounding.
  virtual RealVec eval_full(const RealVec& x) const {
    RealVec out = RealVec::Zero(static_cast<Eigen::Index>(dim()));
    const double w = 1.0 / static_cast<double>(size());
    for (Index i = 0; i < size(); ++i) add_component(i, x, w, out);
    return out;
  }

  /// (1/b) sum_{i in batch} G_i x, duplicates counted with multiplicity.
  virtual RealVec eval_batch_mean(std::span<const Index> batch, const RealVec& x) const {
    RealVec out = RealVec::Zero(static_cast<Eigen::Index>(dim()));
    const double w = 1.0 / static_cast<double>(batch.size());
    for (Index i : batch) add_component(i, x, w, out);
    return out;
  }
};

/// Resolvent J_{eta T} of the set-valued part T.
class ResolventMap {
 public:
  virtual ~ResolventMap() = default;

  virtual RealVec apply(double eta, const RealVec& u) const = 0;

  /// Whether 0 is in T x; decides whether v^0 = 0 is an admissible start.
  virtual bool contains_zero_at(const RealVec& x) const = 0;

  /// True when T = 0, so J is the identity and v stays 0.
  virtual bool is_zero() const { return false; }
};

/// T = 0.
class ZeroResolvent final : public ResolventMap {
 public:
  RealVec apply(double, const RealVec& u) const override { return u; }
  bool contains_zero_at(const RealVec&) const override { return true; }
  bool is_zero() const override { return true; }
};

/// Operator-class constants. Only L is used by the methods; the rest are
/// certificates consumed by parameter rules and diagnostics.
struct AssumptionMeta {
  double L = 1.0;
  double alpha = 1.0;
  double rho_n = 0.0;
  double rho_c = 0.0;
  double rho_star = 0.0;
  double sigma2 = 0.0;

  void validate() const {
    if (!(L > 0.0)) throw ConfigError("assumption meta: L must be positive");
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("assumption meta: alpha must lie in [0,1]");
    if (rho_c < 0.0 || rho_n < rho_c) throw ConfigError("assumption meta: need rho_n >= rho_c >= 0");
    if (rho_star < 0.0 || sigma2 < 0.0) throw ConfigError("assumption meta: negative constant");
  }
};

/// A generalized equation 0 in G x + T x together with its start point.
struct Problem {
  std::string name;
  std::shared_ptr<const FiniteSumOperator> op;
  std::shared_ptr<const ResolventMap> resolvent;
  AssumptionMeta meta;
  RealVec x0;
  std::optional<RealVec> x_star;

  Index n() const { return op->size(); }
  Index dim() const { return op->dim(); }
};

}  // namespace vfog

#endif
