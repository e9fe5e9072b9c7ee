#ifndef VFOG_PROBLEMS_LINEAR_HPP
#define VFOG_PROBLEMS_LINEAR_HPP

#include "vfog/core/operator.hpp"
#include "vfog/core/rng.hpp"
#include "vfog/problems/resolvents.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <memory>
#include <optional>
#include <vector>

namespace vfog {

/// G_i x = A_i x + a_i, optionally with a linear T x = Ghat x.
struct LinearData {
  std::vector<Matrix> A;
  std::vector<RealVec> a;
  std::optional<Matrix> G_hat;

  Index n() const { return A.size(); }
  Index dim() const { return A.empty() ? 0 : static_cast<Index>(A.front().rows()); }

  void validate() const {
    if (A.empty()) throw ConfigError("linear problem needs at least one component");
    if (a.size() != A.size()) throw ConfigError("linear problem: offsets and matrices differ in count");
    const auto p = A.front().rows();
    for (std::size_t i = 0; i < A.size(); ++i)
      if (A[i].rows() != p || A[i].cols() != p || a[i].size() != p)
        throw ConfigError("linear problem: dimension mismatch");
    if (G_hat && (G_hat->rows() != p || G_hat->cols() != p)) throw ConfigError("linear problem: dimension mismatch");
  }

  Matrix mean_matrix() const {
    Matrix m = Matrix::Zero(A.front().rows(), A.front().cols());
    for (const auto& Ai : A) m += Ai;
    return m / static_cast<double>(A.size());
  }
  RealVec mean_offset() const {
    RealVec m = RealVec::Zero(a.front().size());
    for (const auto& ai : a) m += ai;
    return m / static_cast<double>(a.size());
  }
  /// G + Ghat, the matrix of G + T.
  Matrix phi() const { return G_hat ? Matrix(mean_matrix() + *G_hat) : mean_matrix(); }
};

class LinearOperator final : public FiniteSumOperator {
 public:
  explicit LinearOperator(std::shared_ptr<const LinearData> data) : data_(std::move(data)) {
    data_->validate();
    mean_A_ = data_->mean_matrix();
    mean_a_ = data_->mean_offset();
  }

  Index size() const override { return data_->n(); }
  Index dim() const override { return data_->dim(); }

  void add_component(Index i, const RealVec& x, double scale, RealVec& out) const override {
    out.noalias() += scale * (data_->A[i] * x);
    out += scale * data_->a[i];
  }

  RealVec eval_full(const RealVec& x) const override { return mean_A_ * x + mean_a_; }

  const LinearData& data() const { return *data_; }

 private:
  std::shared_ptr<const LinearData> data_;
  Matrix mean_A_;
  RealVec mean_a_;
};

struct LinearProblem {
  std::shared_ptr<const LinearData> data;
  Problem problem;
};

/// Minimal L with L^2 = lambda_max(alpha G^T G + ((1-alpha)/n) sum A_i^T A_i).
inline double lipschitz_bound_linear(const LinearData& d, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("lipschitz bound: alpha must lie in [0,1]");
  d.validate();
  const Matrix G = d.mean_matrix();
  Matrix M = alpha * G.transpose() * G;
  Matrix S = Matrix::Zero(G.rows(), G.cols());
  for (const auto& Ai : d.A) S += Ai.transpose() * Ai;
  M += (1.0 - alpha) / static_cast<double>(d.n()) * S;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Wraps linear data as a problem with start x0 and L from the alpha = 1 bound.
inline LinearProblem make_linear_problem(std::string name, LinearData data, RealVec x0,
                                         std::optional<RealVec> x_star = std::nullopt) {
  auto shared = std::make_shared<const LinearData>(std::move(data));
  LinearProblem lp;
  lp.data = shared;
  lp.problem.name = std::move(name);
  lp.problem.op = std::make_shared<LinearOperator>(shared);
  if (shared->G_hat)
    lp.problem.resolvent = std::make_shared<LinearResolvent>(*shared->G_hat);
  else
    lp.problem.resolvent = std::make_shared<ZeroResolvent>();
  lp.problem.meta.L = lipschitz_bound_linear(*shared, 1.0);
  lp.problem.meta.alpha = 1.0;
  if (static_cast<Index>(x0.size()) != shared->dim()) throw ConfigError("x0 has the wrong dimension");
  lp.problem.x0 = std::move(x0);
  lp.problem.x_star = std::move(x_star);
  return lp;
}

/// The two-component nonmonotone 2x2 system with linear T.
inline LinearProblem build_linear_example1() {
  LinearData d;
  Matrix G1(2, 2), G2(2, 2), Gh(2, 2);
  G1 << -2.0, 0.0, 0.0, 0.0;
  G2 << 0.0, 0.0, 0.0, 1.0;
  Gh << 0.0, 0.0, 0.0, 0.5;
  RealVec g1(2), g2(2);
  g1 << 0.0, 1.0;
  g2 << -1.0, 1.0;
  d.A = {G1, G2};
  d.a = {g1, g2};
  d.G_hat = Gh;
  RealVec x0(2);
  x0 << 1.0, 0.0;  // T x0 = 0, so v0 = 0 is admissible
  const Matrix phi = d.phi();
  const RealVec x_star = phi.partialPivLu().solve(-d.mean_offset());
  auto lp = make_linear_problem("linear-exam1", std::move(d), x0, x_star);
  lp.problem.meta.rho_n = 1.2;
  lp.problem.meta.rho_c = 0.1;
  return lp;
}

/// n copies of the p x p identity with zero offsets.
inline LinearProblem build_linear_identity(Index p = 2, Index n = 2) {
  if (p == 0 || n == 0) throw ConfigError("identity problem needs p, n >= 1");
  LinearData d;
  for (Index i = 0; i < n; ++i) {
    d.A.push_back(Matrix::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
    d.a.push_back(RealVec::Zero(static_cast<Eigen::Index>(p)));
  }
  RealVec x0 = RealVec::Ones(static_cast<Eigen::Index>(p));
  auto lp = make_linear_problem("linear-identity", std::move(d), x0, RealVec::Zero(static_cast<Eigen::Index>(p)));
  lp.problem.meta.rho_c = 1.0;
  lp.problem.meta.rho_n = 1.0;
  return lp;
}

struct LinearRandomSpec {
  Index p = 50;
  Index n = 20;
  double noise = 0.1;  // scale of the centered component perturbations
  std::uint64_t seed = 0;
};

namespace detail {
inline Matrix gaussian_matrix(Index r, Index c, Rng& rng) {
  Matrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.normal();
  return m;
}
}  // namespace detail

/// Monotone affine instance with known solution. In a random orthonormal
/// basis the mean matrix is block diagonal: a skew block on the first half
/// of the coordinates, and skew plus rank-deficient PSD on the second half.
/// Components add centered Gaussian perturbations; every component vanishes
/// at x*, so G x* = 0 exactly up to rounding.
inline LinearProblem build_linear_random(const LinearRandomSpec& spec) {
  if (spec.p < 4 || spec.n == 0) throw ConfigError("linear-random needs p >= 4 and n >= 1");
  Rng rng = Rng::derive(spec.seed, 0);
  const Index p = spec.p;
  const Index h = p / 2;
  const Index r = p - h;
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));

  Matrix core = Matrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  const Matrix K1 = scale * detail::gaussian_matrix(h, h, rng);
  core.topLeftCorner(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(h)) = K1 - K1.transpose();
  const Matrix K2 = scale * detail::gaussian_matrix(r, r, rng);
  const Matrix B = scale * detail::gaussian_matrix(r, std::max<Index>(1, r / 2), rng);
  core.bottomRightCorner(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) =
      K2 - K2.transpose() + B * B.transpose();

  const Matrix Q = Eigen::HouseholderQR<Matrix>(detail::gaussian_matrix(p, p, rng)).householderQ();
  const Matrix A = Q * core * Q.transpose();

  RealVec x_star(static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < x_star.size(); ++i) x_star[i] = rng.normal();

  std::vector<Matrix> E;
  Matrix E_mean = Matrix::Zero(A.rows(), A.cols());
  for (Index i = 0; i < spec.n; ++i) {
    E.push_back(spec.noise * scale * detail::gaussian_matrix(p, p, rng));
    E_mean += E.back();
  }
  E_mean /= static_cast<double>(spec.n);

  LinearData d;
  for (Index i = 0; i < spec.n; ++i) {
    Matrix Ai = A + (E[i] - E_mean);
    d.a.push_back(-(Ai * x_star));
    d.A.push_back(std::move(Ai));
  }
  RealVec x0(static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = rng.normal();
  return make_linear_problem("linear-random", std::move(d), x0, x_star);
}

}  // namespace vfog

#endif
