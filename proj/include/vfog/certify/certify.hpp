#ifndef VFOG_CERTIFY_CERTIFY_HPP
#define VFOG_CERTIFY_CERTIFY_HPP

#include "vfog/problems/linear.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <string>

namespace vfog {

struct CertifyResult {
  bool ok = false;
  double min_eigenvalue = 0.0;  // witness
  double tolerance = 0.0;
};

namespace detail {
inline double min_eig(const Matrix& S) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}
inline double max_eig(const Matrix& S) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}
}  // namespace detail

/// Checks sym(Phi) + rho_n Phi^T Phi - (rho_c/n) sum A_i^T A_i >= -tol I with
/// Phi = G + Ghat (G alone when T = 0) and tol = 1e-10 ||M||.
inline CertifyResult verify_cohypo_linear(const LinearData& d, double rho_n, double rho_c) {
  if (rho_n < 0.0 || rho_c < 0.0) throw ConfigError("certify: rho_n and rho_c must be nonnegative");
  d.validate();
  const Matrix phi = d.phi();
  Matrix S = Matrix::Zero(phi.rows(), phi.cols());
  for (const auto& Ai : d.A) S += Ai.transpose() * Ai;
  const Matrix M = 0.5 * (phi + phi.transpose()) + rho_n * phi.transpose() * phi -
                   (rho_c / static_cast<double>(d.n())) * S;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  CertifyResult r;
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.tolerance = 1e-10 * es.eigenvalues().cwiseAbs().maxCoeff();
  r.ok = r.min_eigenvalue >= -r.tolerance;
  return r;
}

struct RhoSuggestion {
  bool feasible = false;
  double rho_n = 0.0;
  double rho_c = 0.0;
  std::string reason;
};

/// rho_n = max(0, -lmin(sym Phi) / lmin(Phi^T Phi)),
/// rho_c = max(0, n (lmin(sym Phi) + rho_n lmin(Phi^T Phi)) / sum_i lmax(A_i^T A_i)).
/// Rank-deficient Phi is reported infeasible.
inline RhoSuggestion suggest_rho(const LinearData& d) {
  d.validate();
  const Matrix phi = d.phi();
  const double lsym = detail::min_eig(0.5 * (phi + phi.transpose()));
  const Matrix PtP = phi.transpose() * phi;
  const double lgram = detail::min_eig(PtP);
  const double lgram_max = detail::max_eig(PtP);
  RhoSuggestion out;
  const bool rank_deficient = !(lgram > 1e-12 * std::max(lgram_max, 1e-300));
  if (rank_deficient) {
    out.reason = "G is rank deficient (lambda_min(G^T G) = 0); the rho formulas need full rank";
    return out;
  }
  out.rho_n = (lsym < 0.0) ? -lsym / lgram : 0.0;
  double denom = 0.0;
  for (const auto& Ai : d.A) denom += detail::max_eig(Ai.transpose() * Ai);
  const double lead = lsym + out.rho_n * lgram;
  out.rho_c = denom > 0.0 ? std::max(0.0, static_cast<double>(d.n()) * lead / denom) : 0.0;
  out.feasible = true;
  if (lsym >= 0.0) out.reason = "monotone: symmetric part is PSD, rho_n = 0";
  else out.reason = "nonmonotone: rho_n from the smallest eigenvalues";
  return out;
}

}  // namespace vfog

#endif
