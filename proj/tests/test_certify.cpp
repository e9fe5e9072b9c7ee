#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace vfog;

TEST(Certify, ExampleOneClaims) {
  const LinearProblem lp = build_linear_example1();
  const auto ok = verify_cohypo_linear(*lp.data, 1.2, 0.1);
  EXPECT_TRUE(ok.ok) << ok.min_eigenvalue;
  const auto bad = verify_cohypo_linear(*lp.data, 0.0, 0.0);
  EXPECT_FALSE(bad.ok);
  EXPECT_NEAR(bad.min_eigenvalue, -1.0, 1e-14);
}

TEST(Certify, ExampleOneHandComputedMatrix) {
  // Phi = diag(-1, 1), sum A_i^T A_i = diag(4, 1), n = 2:
  // M = diag(-1 + rho_n - 2 rho_c, 1 + rho_n - rho_c / 2)
  const LinearProblem lp = build_linear_example1();
  for (double rn : {0.0, 0.5, 1.0, 1.2, 2.0})
    for (double rc : {0.0, 0.1, 0.3}) {
      const double expect = std::min(-1.0 + rn - 2.0 * rc, 1.0 + rn - 0.5 * rc);
      const auto r = verify_cohypo_linear(*lp.data, rn, rc);
      EXPECT_NEAR(r.min_eigenvalue, expect, 1e-13);
      EXPECT_EQ(r.ok, expect >= -1e-12) << rn << " " << rc;
    }
  EXPECT_FALSE(verify_cohypo_linear(*lp.data, 1.2, 0.11).ok);
}

TEST(Certify, SuggestionsAreVerified) {
  const LinearProblem ex = build_linear_example1();
  const auto s = suggest_rho(*ex.data);
  ASSERT_TRUE(s.feasible);
  EXPECT_NEAR(s.rho_n, 1.0, 1e-14);
  EXPECT_NEAR(s.rho_c, 0.0, 1e-14);
  EXPECT_TRUE(verify_cohypo_linear(*ex.data, s.rho_n, s.rho_c).ok);

  const LinearProblem id = build_linear_identity(2, 2);
  const auto t = suggest_rho(*id.data);
  ASSERT_TRUE(t.feasible);
  EXPECT_EQ(t.rho_n, 0.0);
  EXPECT_NEAR(t.rho_c, 1.0, 1e-14);
  EXPECT_TRUE(verify_cohypo_linear(*id.data, t.rho_n, t.rho_c).ok);
}

TEST(Certify, RankDeficientIsInfeasible) {
  // the odd-sized skew block of the random instance is singular
  const LinearProblem lp = build_linear_random({10, 5, 0.1, 1});
  const auto s = suggest_rho(*lp.data);
  EXPECT_FALSE(s.feasible);
  EXPECT_FALSE(s.reason.empty());
  EXPECT_TRUE(verify_cohypo_linear(*lp.data, 0.0, 0.0).ok);
}

TEST(Certify, RandomFullRankSuggestionHolds) {
  Rng r(3);
  for (int t = 0; t < 10; ++t) {
    LinearData d;
    for (int i = 0; i < 4; ++i) {
      d.A.push_back(vfog::testing::random_mat(5, 5, r));
      d.a.push_back(RealVec::Zero(5));
    }
    const auto s = suggest_rho(d);
    ASSERT_TRUE(s.feasible);
    EXPECT_TRUE(verify_cohypo_linear(d, s.rho_n, s.rho_c).ok) << "trial " << t;
  }
}

TEST(Certify, NegativeRhoRejected) {
  const LinearProblem lp = build_linear_example1();
  EXPECT_THROW(verify_cohypo_linear(*lp.data, -1.0, 0.0), ConfigError);
}
