#ifndef VFOG_PROBLEMS_MATRIX_GAME_HPP
#define VFOG_PROBLEMS_MATRIX_GAME_HPP

#include "vfog/core/operator.hpp"
#include "vfog/core/rng.hpp"
#include "vfog/problems/norm.hpp"
#include "vfog/problems/resolvents.hpp"

#include <cmath>
#include <memory>

namespace vfog {

struct GameSpec {
  Index m = 10;     // houses on an m x m grid, p1 = m^2
  Index n = 1000;   // noisy wealth observations
  double theta = 0.8;
  double noise_sigma2 = 0.05;
  std::uint64_t seed = 0;
};

/// Bilinear game min_u max_v <L u, v> over two simplices with
/// L^(i) = diag(what_i) D, D_jk = 1 - exp(-theta |j - k|), and
/// G_i x = [L^(i)T v; -L^(i) u].
///
/// Every component shares D, so a batch mean is one matvec pair with the
/// batch-averaged wealth vector.
class MatrixGameOperator final : public FiniteSumOperator {
 public:
  MatrixGameOperator(Matrix D, Matrix wealth) : D_(std::move(D)), W_(std::move(wealth)) {
    if (D_.rows() != D_.cols() || W_.rows() != D_.rows() || W_.cols() == 0)
      throw ConfigError("matrix game: inconsistent payoff data");
    w_mean_ = W_.rowwise().mean();
  }

  Index size() const override { return static_cast<Index>(W_.cols()); }
  Index dim() const override { return 2 * static_cast<Index>(D_.rows()); }
  Index p1() const { return static_cast<Index>(D_.rows()); }

  void add_component(Index i, const RealVec& x, double scale, RealVec& out) const override {
    apply_weights(W_.col(static_cast<Eigen::Index>(i)), x, scale, out);
  }

  RealVec eval_full(const RealVec& x) const override {
    RealVec out = RealVec::Zero(x.size());
    apply_weights(w_mean_, x, 1.0, out);
    return out;
  }

  RealVec eval_batch_mean(std::span<const Index> batch, const RealVec& x) const override {
    RealVec w = RealVec::Zero(D_.rows());
    for (Index i : batch) w += W_.col(static_cast<Eigen::Index>(i));
    w /= static_cast<double>(batch.size());
    RealVec out = RealVec::Zero(x.size());
    apply_weights(w, x, 1.0, out);
    return out;
  }

  const Matrix& distance_kernel() const { return D_; }
  const Matrix& wealth() const { return W_; }
  const RealVec& mean_wealth() const { return w_mean_; }
  /// Averaged payoff L = diag(mean wealth) D.
  Matrix payoff_mean() const { return w_mean_.asDiagonal() * D_; }

 private:
  template <class W>
  void apply_weights(const W& w, const RealVec& x, double scale, RealVec& out) const {
    const auto p = D_.rows();
    const auto u = x.head(p);
    const auto v = x.tail(p);
    const RealVec wv = w.cwiseProduct(v);
    out.head(p).noalias() += scale * (D_.transpose() * wv);
    const RealVec Du = D_ * u;
    out.tail(p) -= scale * w.cwiseProduct(Du);
  }

  Matrix D_;
  Matrix W_;  // p1 x n, column i = what^(i)
  RealVec w_mean_;
};

inline Problem build_matrix_game(const GameSpec& spec) {
  if (spec.m < 2 || spec.n < 1) throw ConfigError("matrix game needs m >= 2 and n >= 1");
  if (!(spec.noise_sigma2 >= 0.0) || !(spec.theta > 0.0)) throw ConfigError("matrix game: bad theta or noise");
  Rng rng = Rng::derive(spec.seed, 0);
  const auto p1 = static_cast<Eigen::Index>(spec.m * spec.m);
  Matrix D(p1, p1);
  for (Eigen::Index j = 0; j < p1; ++j)
    for (Eigen::Index k = 0; k < p1; ++k)
      D(j, k) = 1.0 - std::exp(-spec.theta * std::abs(static_cast<double>(j - k)));

  RealVec w(p1);
  for (Eigen::Index j = 0; j < p1; ++j) w[j] = std::abs(rng.normal());
  const double sd = std::sqrt(spec.noise_sigma2);
  Matrix W(p1, static_cast<Eigen::Index>(spec.n));
  for (Eigen::Index i = 0; i < W.cols(); ++i)
    for (Eigen::Index j = 0; j < p1; ++j) W(j, i) = std::abs(w[j] + sd * rng.normal());

  auto op = std::make_shared<MatrixGameOperator>(std::move(D), std::move(W));
  Problem pr;
  pr.name = "matrix-game";
  const Matrix Lbar = op->payoff_mean();
  const NormEstimate L = spectral_norm(Lbar);
  pr.meta.L = L.value;
  pr.meta.alpha = 1.0;
  pr.op = op;
  pr.resolvent = std::make_shared<SimplexProductResolvent>(std::vector<Index>{spec.m * spec.m, spec.m * spec.m});
  pr.x0 = RealVec::Constant(2 * p1, 1.0 / static_cast<double>(p1));
  return pr;
}

}  // namespace vfog

#endif
