#include "oracles.hpp"
#include "vfog/bench/presets.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <limits>

using namespace vfog;
using vfog::testing::random_vec;
using vfog::testing::nonneg_ball_by_dykstra;
using vfog::testing::simplex_by_enumeration;

TEST(Projection, SimplexMatchesEnumeration) {
  Rng r(10);
  for (int t = 0; t < 50; ++t) {
    const RealVec y = random_vec(6, r, 1.5);
    const RealVec x = project_simplex(y);
    EXPECT_LE((x - simplex_by_enumeration(y)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_TRUE(in_simplex(x, 1e-12));
  }
}

TEST(Projection, NonnegBallMatchesDykstra) {
  Rng r(11);
  for (int t = 0; t < 50; ++t) {
    const RealVec y = random_vec(5, r, 2.0);
    const double R = 0.2 + 2.0 * r.uniform();
    const RealVec x = project_nonneg_ball(y, R);
    EXPECT_LE((x - nonneg_ball_by_dykstra(y, R)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_TRUE(in_nonneg_ball(x, R, 1e-12));
  }
}

TEST(Projection, EdgeCases) {
  RealVec e(3);
  e << 0.2, 0.3, 0.5;
  EXPECT_LE((project_simplex(e) - e).norm(), 1e-15);
  EXPECT_LE((project_simplex(RealVec::Constant(4, -7.0)) - RealVec::Constant(4, 0.25)).norm(), 1e-15);
  EXPECT_EQ(project_nonneg_ball(-RealVec::Ones(3), 1.0), RealVec::Zero(3));
  EXPECT_THROW(project_nonneg_ball(e, 0.0), ConfigError);
}

TEST(Norm, PowerIterationMatchesSvd) {
  Rng r(12);
  for (int t = 0; t < 5; ++t) {
    const Matrix A = vfog::testing::random_mat(8, 6, r);
    const double svd = Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    const auto est = spectral_norm(A);
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.value, svd, 1e-6 * svd);
  }
  EXPECT_EQ(spectral_norm(Matrix::Zero(3, 3)).value, 0.0);
}

TEST(MatrixGame, ComponentsMatchDenseFormula) {
  GameSpec g;
  g.m = 3;
  g.n = 12;
  g.seed = 4;
  const Problem pr = build_matrix_game(g);
  const auto& op = dynamic_cast<const MatrixGameOperator&>(*pr.op);
  const Index p1 = 9;
  Matrix D(9, 9);
  for (int j = 0; j < 9; ++j)
    for (int k = 0; k < 9; ++k) D(j, k) = 1.0 - std::exp(-0.8 * std::abs(j - k));
  EXPECT_LE((op.distance_kernel() - D).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GE(op.wealth().minCoeff(), 0.0);
  Rng r(2);
  for (Index i = 0; i < g.n; ++i) {
    const RealVec x = random_vec(2 * p1, r);
    const Matrix Li = op.wealth().col(static_cast<Eigen::Index>(i)).asDiagonal() * D;
    RealVec expect(2 * p1);
    expect.head(p1) = Li.transpose() * x.tail(p1);
    expect.tail(p1) = -Li * x.head(p1);
    EXPECT_LE((op.eval_component(i, x) - expect).norm(), 1e-12);
  }
  EXPECT_EQ(pr.dim(), 18u);
  EXPECT_TRUE(in_simplex(pr.x0.head(9)) && in_simplex(pr.x0.tail(9)));
}

TEST(MatrixGame, LipschitzIsMeanPayoffNorm) {
  GameSpec g;
  g.m = 5;
  g.n = 30;
  g.seed = 1;
  const Problem pr = build_matrix_game(g);
  const auto& op = dynamic_cast<const MatrixGameOperator&>(*pr.op);
  const double svd = Eigen::JacobiSVD<Matrix>(op.payoff_mean()).singularValues()(0);
  EXPECT_NEAR(pr.meta.L, svd, 1e-6 * svd);
  // the full operator is the skew map [0 L^T; -L 0], whose norm is ||L||
  Matrix full = Matrix::Zero(50, 50);
  for (Eigen::Index j = 0; j < 50; ++j) {
    RealVec e = RealVec::Zero(50);
    e[j] = 1.0;
    full.col(j) = op.eval_full(e);
  }
  EXPECT_NEAR(Eigen::JacobiSVD<Matrix>(full).singularValues()(0), svd, 1e-10 * svd);
  EXPECT_NEAR((full + full.transpose()).norm(), 0.0, 1e-12);
}

TEST(MatrixGame, PresetDimensions) {
  const Problem pr = bench::build_problem(bench::preset_spec("game-exp1"), 0);
  EXPECT_EQ(pr.dim(), 200u);
  EXPECT_EQ(pr.n(), 1000u);
  const Problem again = bench::build_problem(bench::preset_spec("game-exp1"), 0);
  EXPECT_EQ(pr.meta.L, again.meta.L);
}

namespace {
// Dense operator of the MDP from its explicit blocks, for small instances.
RealVec mdp_dense_component(const GarnetMdp& g, Index s, const RealVec& x) {
  const Index n = g.n, m = g.m;
  const double nd = static_cast<double>(n);
  Matrix B(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Index a = 0; a < m; ++a) {
    RealVec col = g.gamma * g.dense_row(s, a);
    col[static_cast<Eigen::Index>(s)] -= 1.0;
    B.col(static_cast<Eigen::Index>(a)) = col;
  }
  const RealVec v = x.head(static_cast<Eigen::Index>(n));
  const RealVec mu = x.segment(static_cast<Eigen::Index>(n + s * m), static_cast<Eigen::Index>(m));
  RealVec out = RealVec::Zero(x.size());
  RealVec top = nd * B * mu;
  top[static_cast<Eigen::Index>(s)] += nd * (1.0 - g.gamma) * g.p0[static_cast<Eigen::Index>(s)];
  out.head(static_cast<Eigen::Index>(n)) = top;
  out.segment(static_cast<Eigen::Index>(n + s * m), static_cast<Eigen::Index>(m)) =
      -nd * g.reward.row(static_cast<Eigen::Index>(s)).transpose() - nd * B.transpose() * v;
  return out;
}
}  // namespace

TEST(Mdp, GarnetIsStochastic) {
  Rng r = Rng::derive(3, 0);
  const GarnetMdp g = generate_garnet(20, 3, 5, 0.9, r);
  for (Index s = 0; s < 20; ++s)
    for (Index a = 0; a < 3; ++a) {
      const RealVec row = g.dense_row(s, a);
      EXPECT_NEAR(row.sum(), 1.0, 1e-12);
      EXPECT_EQ((row.array() > 0.0).count(), 5);
    }
  EXPECT_NEAR(g.p0.sum(), 1.0, 1e-12);
  EXPECT_GE(g.reward.minCoeff(), 0.0);
  EXPECT_LT(g.reward.maxCoeff(), 1.0);
}

TEST(Mdp, ComponentsMatchDenseBlocks) {
  MdpSpec spec{12, 3, 4, 0.9, 2, BlockNorm::MaxBlock};
  const Problem pr = build_mdp(spec);
  const auto& op = dynamic_cast<const MdpOperator&>(*pr.op);
  Rng r(5);
  for (Index s = 0; s < 12; ++s) {
    const RealVec x = random_vec(pr.dim(), r);
    EXPECT_LE((op.eval_component(s, x) - mdp_dense_component(op.mdp(), s, x)).norm(), 1e-11);
  }
}

TEST(Mdp, BlockNormsMatchDense) {
  Rng r = Rng::derive(4, 0);
  const GarnetMdp g = generate_garnet(15, 3, 6, 0.9, r);
  double max_block = 0.0;
  Matrix full(15, 45);
  for (Index s = 0; s < 15; ++s) {
    Matrix B(15, 3);
    for (Index a = 0; a < 3; ++a) {
      RealVec col = g.gamma * g.dense_row(s, a);
      col[static_cast<Eigen::Index>(s)] -= 1.0;
      B.col(static_cast<Eigen::Index>(a)) = col;
    }
    full.middleCols(static_cast<Eigen::Index>(3 * s), 3) = B;
    max_block = std::max(max_block, Eigen::JacobiSVD<Matrix>(B).singularValues()(0));
  }
  EXPECT_NEAR(mdp_max_block_norm(g), max_block, 1e-10);
  const double full_norm = Eigen::JacobiSVD<Matrix>(full).singularValues()(0);
  EXPECT_NEAR(mdp_full_block_norm(g).value, full_norm, 1e-5 * full_norm);
}

TEST(Mdp, StartAndRadius) {
  MdpSpec spec{10, 2, 3, 0.9, 1, BlockNorm::MaxBlock};
  const Problem pr = build_mdp(spec);
  const auto& op = dynamic_cast<const MdpOperator&>(*pr.op);
  const double R = std::sqrt(10.0) * op.mdp().r_inf() / 0.1;
  const auto& J = dynamic_cast<const BallSimplexResolvent&>(*pr.resolvent);
  EXPECT_NEAR(J.radius(), R, 1e-12);
  EXPECT_TRUE(J.contains_zero_at(pr.x0));
  EXPECT_NEAR(pr.x0[0], 0.1 / op.mdp().r_inf(), 1e-15);
  EXPECT_NEAR(pr.x0.tail(20).sum(), 1.0, 1e-12);
  EXPECT_THROW(build_mdp(MdpSpec{10, 2, 11, 0.9, 1, BlockNorm::MaxBlock}), ConfigError);
}

TEST(Mdp, PresetDimension) {
  const auto spec = bench::preset_spec("mdp-exp1");
  EXPECT_EQ(spec.mdp.states * (spec.mdp.actions + 1), 12000u);
}

TEST(Linear, ExampleOneSolution) {
  const LinearProblem lp = build_linear_example1();
  RealVec xs(2);
  xs << -0.5, -1.0;
  EXPECT_LE((*lp.problem.x_star - xs).norm(), 1e-15);
  // G x* + Ghat x* = 0
  EXPECT_LE((lp.problem.op->eval_full(xs) + *lp.data->G_hat * xs).norm(), 1e-15);
  EXPECT_EQ(lp.problem.meta.rho_n, 1.2);
  EXPECT_EQ(lp.problem.meta.rho_c, 0.1);
}

TEST(Linear, RandomInstanceProperties) {
  const LinearProblem lp = build_linear_random({50, 20, 0.1, 7});
  const LinearData& d = *lp.data;
  EXPECT_EQ(d.dim(), 50u);
  EXPECT_EQ(d.n(), 20u);
  EXPECT_LE(lp.problem.op->eval_full(*lp.problem.x_star).norm(), 1e-12);
  for (Index i = 0; i < d.n(); ++i)
    EXPECT_LE(lp.problem.op->eval_component(i, *lp.problem.x_star).norm(), 1e-12);
  const Matrix G = d.mean_matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (G + G.transpose()));
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  const double svd = Eigen::JacobiSVD<Matrix>(G).singularValues()(0);
  EXPECT_NEAR(lp.problem.meta.L, svd, 1e-10 * svd);
  const LinearProblem again = build_linear_random({50, 20, 0.1, 7});
  EXPECT_EQ(again.data->A[3], d.A[3]);
}

TEST(Linear, LipschitzBoundAlpha) {
  const LinearProblem lp = vfog::testing::random_linear_toy(4, 3, 9);
  const LinearData& d = *lp.data;
  double worst = 0.0;
  Matrix S = Matrix::Zero(3, 3);
  for (const auto& Ai : d.A) S += Ai.transpose() * Ai;
  Eigen::SelfAdjointEigenSolver<Matrix> es(S / 4.0);
  worst = std::sqrt(es.eigenvalues().maxCoeff());
  EXPECT_NEAR(lipschitz_bound_linear(d, 0.0), worst, 1e-12);
  EXPECT_LE(lipschitz_bound_linear(d, 1.0), worst + 1e-12);
  EXPECT_THROW(lipschitz_bound_linear(d, 1.5), ConfigError);
}

TEST(Resolvent, LinearSolvesImplicitStep) {
  const LinearProblem lp = build_linear_example1();
  Rng r(3);
  for (int t = 0; t < 20; ++t) {
    const RealVec u = random_vec(2, r);
    const double eta = 0.1 + r.uniform();
    const RealVec x = lp.problem.resolvent->apply(eta, u);
    EXPECT_LE((x + eta * (*lp.data->G_hat * x) - u).norm(), 1e-14);
  }
}
