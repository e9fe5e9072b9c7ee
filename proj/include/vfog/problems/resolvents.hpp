#ifndef VFOG_PROBLEMS_RESOLVENTS_HPP
#define VFOG_PROBLEMS_RESOLVENTS_HPP

#include "vfog/core/operator.hpp"
#include "vfog/problems/projections.hpp"

#include <vector>

namespace vfog {

/// Normal cone of a product of unit simplices; J is the blockwise
/// projection for every eta.
class SimplexProductResolvent final : public ResolventMap {
 public:
  explicit SimplexProductResolvent(std::vector<Index> blocks) : blocks_(std::move(blocks)) {
    for (Index b : blocks_) {
      if (b == 0) throw ConfigError("simplex block of size 0");
      dim_ += b;
    }
  }

  RealVec apply(double, const RealVec& u) const override {
    check(u);
    RealVec out(u.size());
    Eigen::Index off = 0;
    for (Index b : blocks_) {
      const auto len = static_cast<Eigen::Index>(b);
      out.segment(off, len) = project_simplex(u.segment(off, len));
      off += len;
    }
    return out;
  }

  bool contains_zero_at(const RealVec& x) const override {
    check(x);
    Eigen::Index off = 0;
    for (Index b : blocks_) {
      const auto len = static_cast<Eigen::Index>(b);
      if (!in_simplex(x.segment(off, len))) return false;
      off += len;
    }
    return true;
  }

  const std::vector<Index>& blocks() const { return blocks_; }

 private:
  void check(const RealVec& u) const {
    if (static_cast<Index>(u.size()) != dim_) throw ConfigError("resolvent: dimension mismatch");
  }
  std::vector<Index> blocks_;
  Index dim_ = 0;
};

/// Normal cone of {v >= 0, ||v|| <= R} x (unit simplex).
class BallSimplexResolvent final : public ResolventMap {
 public:
  BallSimplexResolvent(Index n_ball, double R, Index n_simplex) : n_ball_(n_ball), R_(R), n_simplex_(n_simplex) {
    if (!(R > 0.0)) throw ConfigError("ball radius must be positive");
  }

  RealVec apply(double, const RealVec& u) const override {
    check(u);
    RealVec out(u.size());
    const auto nb = static_cast<Eigen::Index>(n_ball_);
    const auto ns = static_cast<Eigen::Index>(n_simplex_);
    out.head(nb) = project_nonneg_ball(u.head(nb), R_);
    out.tail(ns) = project_simplex(u.tail(ns));
    return out;
  }

  bool contains_zero_at(const RealVec& x) const override {
    check(x);
    return in_nonneg_ball(x.head(static_cast<Eigen::Index>(n_ball_)), R_) &&
           in_simplex(x.tail(static_cast<Eigen::Index>(n_simplex_)));
  }

  double radius() const { return R_; }

 private:
  void check(const RealVec& u) const {
    if (static_cast<Index>(u.size()) != n_ball_ + n_simplex_) throw ConfigError("resolvent: dimension mismatch");
  }
  Index n_ball_;
  double R_;
  Index n_simplex_;
};

/// T x = Ghat x for a linear Ghat; J_{eta T} = (I + eta Ghat)^{-1}.
class LinearResolvent final : public ResolventMap {
 public:
  explicit LinearResolvent(Matrix Ghat) : Ghat_(std::move(Ghat)) {
    if (Ghat_.rows() != Ghat_.cols()) throw ConfigError("linear T must be square");
  }

  RealVec apply(double eta, const RealVec& u) const override {
    if (u.size() != Ghat_.rows()) throw ConfigError("resolvent: dimension mismatch");
    const Matrix M = Matrix::Identity(Ghat_.rows(), Ghat_.cols()) + eta * Ghat_;
    Eigen::PartialPivLU<Matrix> lu(M);
    if (std::abs(lu.determinant()) < 1e-300) throw NumericError("I + eta T is singular");
    return lu.solve(u);
  }

  bool contains_zero_at(const RealVec& x) const override {
    return (Ghat_ * x).norm() <= 1e-12 * std::max(1.0, x.norm());
  }

  const Matrix& matrix() const { return Ghat_; }

 private:
  Matrix Ghat_;
};

}  // namespace vfog

#endif
