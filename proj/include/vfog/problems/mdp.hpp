#ifndef VFOG_PROBLEMS_MDP_HPP
#define VFOG_PROBLEMS_MDP_HPP

#include "vfog/core/operator.hpp"
#include "vfog/core/rng.hpp"
#include "vfog/core/sampling.hpp"
#include "vfog/problems/norm.hpp"
#include "vfog/problems/resolvents.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

namespace vfog {

/// How the blocks B_s are aggregated into the scale L_B.
enum class BlockNorm { MaxBlock, Full };

struct MdpSpec {
  Index states = 2000;
  Index actions = 5;
  Index branching = 1000;  // reachable next states per (s, a)
  double discount = 0.9;
  std::uint64_t seed = 0;
  BlockNorm block_norm = BlockNorm::MaxBlock;
};

/// Garnet MDP: sparse transitions, rewards and start distribution.
struct GarnetMdp {
  Index n = 0, m = 0, nb = 0;
  double gamma = 0.9;
  std::vector<std::uint32_t> next;  // (s*m + a)*nb + j
  std::vector<double> prob;
  Matrix reward;                    // n x m
  RealVec p0;

  double r_inf() const { return reward.maxCoeff(); }

  /// Row of P_{sa} as a dense vector (tests and small instances only).
  RealVec dense_row(Index s, Index a) const {
    RealVec row = RealVec::Zero(static_cast<Eigen::Index>(n));
    const Index base = (s * m + a) * nb;
    for (Index j = 0; j < nb; ++j) row[next[base + j]] += prob[base + j];
    return row;
  }
};

inline GarnetMdp generate_garnet(Index n, Index m, Index nb, double gamma, Rng& rng) {
  if (n == 0 || m == 0) throw ConfigError("garnet: need states and actions");
  if (nb < 1 || nb > n) throw ConfigError("garnet: branching must lie in [1, n]");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("garnet: discount must lie in (0,1)");
  GarnetMdp g;
  g.n = n;
  g.m = m;
  g.nb = nb;
  g.gamma = gamma;
  g.next.resize(n * m * nb);
  g.prob.resize(n * m * nb);
  for (Index sa = 0; sa < n * m; ++sa) {
    const auto support = draw_batch(n, nb, Sampling::WithoutReplacement, rng);
    double total = 0.0;
    for (Index j = 0; j < nb; ++j) {
      g.next[sa * nb + j] = static_cast<std::uint32_t>(support[j]);
      const double mass = rng.uniform() + 1e-12;
      g.prob[sa * nb + j] = mass;
      total += mass;
    }
    for (Index j = 0; j < nb; ++j) g.prob[sa * nb + j] /= total;
  }
  g.reward.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index s = 0; s < g.reward.rows(); ++s)
    for (Eigen::Index a = 0; a < g.reward.cols(); ++a) g.reward(s, a) = rng.uniform();
  g.p0 = RealVec::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  return g;
}

/// Saddle operator of the discounted MDP with x = [v; mu], summed over
/// states with B_s = [g P_s1 - e_s, ..., g P_sm - e_s]:
///   G_s x = [ n(1-g) p0_s e_s + n B_s mu_s ;  0 ; -n r_s - n B_s^T v ; 0 ].
class MdpOperator final : public FiniteSumOperator {
 public:
  explicit MdpOperator(std::shared_ptr<const GarnetMdp> mdp) : mdp_(std::move(mdp)) {}

  Index size() const override { return mdp_->n; }
  Index dim() const override { return mdp_->n * (mdp_->m + 1); }

  void add_component(Index s, const RealVec& x, double scale, RealVec& out) const override {
    add_state(s, x, scale * static_cast<double>(mdp_->n), out);
  }

  RealVec eval_full(const RealVec& x) const override {
    RealVec out = RealVec::Zero(x.size());
    for (Index s = 0; s < mdp_->n; ++s) add_state(s, x, 1.0, out);
    return out;
  }

  const GarnetMdp& mdp() const { return *mdp_; }

 private:
  void add_state(Index s, const RealVec& x, double c, RealVec& out) const {
    const GarnetMdp& g = *mdp_;
    const Index n = g.n, m = g.m, nb = g.nb;
    const auto es = static_cast<Eigen::Index>(s);
    out[es] += c * (1.0 - g.gamma) * g.p0[es];
    for (Index a = 0; a < m; ++a) {
      const auto mu_idx = static_cast<Eigen::Index>(n + s * m + a);
      const double mu = x[mu_idx];
      const Index base = (s * m + a) * nb;
      double pv = 0.0;
      for (Index j = 0; j < nb; ++j) {
        const auto t = static_cast<Eigen::Index>(g.next[base + j]);
        out[t] += c * g.gamma * mu * g.prob[base + j];
        pv += g.prob[base + j] * x[t];
      }
      out[es] -= c * mu;
      out[mu_idx] -= c * (g.reward(es, static_cast<Eigen::Index>(a)) + g.gamma * pv - x[es]);
    }
  }

  std::shared_ptr<const GarnetMdp> mdp_;
};

/// max_s ||B_s||_2 through the m x m Gram matrices.
inline double mdp_max_block_norm(const GarnetMdp& g) {
  double best = 0.0;
  Matrix gram(static_cast<Eigen::Index>(g.m), static_cast<Eigen::Index>(g.m));
  std::vector<double> dense(g.n, 0.0);
  for (Index s = 0; s < g.n; ++s) {
    for (Index a = 0; a < g.m; ++a) {
      const Index ba = (s * g.m + a) * g.nb;
      for (Index j = 0; j < g.nb; ++j) dense[g.next[ba + j]] = g.prob[ba + j];
      for (Index b = a; b < g.m; ++b) {
        const Index bb = (s * g.m + b) * g.nb;
        double dot = 0.0;
        for (Index j = 0; j < g.nb; ++j) dot += dense[g.next[bb + j]] * g.prob[bb + j];
        double pas = dense[s];
        double pbs = 0.0;
        for (Index j = 0; j < g.nb; ++j)
          if (g.next[bb + j] == s) pbs = g.prob[bb + j];
        // (g P_a - e_s)^T (g P_b - e_s)
        const double val = g.gamma * g.gamma * dot - g.gamma * pas - g.gamma * pbs + 1.0;
        gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = val;
        gram(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = val;
      }
      for (Index j = 0; j < g.nb; ++j) dense[g.next[ba + j]] = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    best = std::max(best, std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())));
  }
  return best;
}

/// ||[B_1, ..., B_n]||_2 by power iteration.
inline NormEstimate mdp_full_block_norm(const GarnetMdp& g) {
  const Index n = g.n, m = g.m, nb = g.nb;
  auto apply = [&](const RealVec& mu) -> RealVec {
    RealVec out = RealVec::Zero(static_cast<Eigen::Index>(n));
    for (Index s = 0; s < n; ++s)
      for (Index a = 0; a < m; ++a) {
        const double c = mu[static_cast<Eigen::Index>(s * m + a)];
        const Index base = (s * m + a) * nb;
        for (Index j = 0; j < nb; ++j) out[g.next[base + j]] += g.gamma * c * g.prob[base + j];
        out[static_cast<Eigen::Index>(s)] -= c;
      }
    return out;
  };
  auto apply_t = [&](const RealVec& v) -> RealVec {
    RealVec out(static_cast<Eigen::Index>(n * m));
    for (Index s = 0; s < n; ++s)
      for (Index a = 0; a < m; ++a) {
        const Index base = (s * m + a) * nb;
        double pv = 0.0;
        for (Index j = 0; j < nb; ++j) pv += g.prob[base + j] * v[g.next[base + j]];
        out[static_cast<Eigen::Index>(s * m + a)] = g.gamma * pv - v[static_cast<Eigen::Index>(s)];
      }
    return out;
  };
  return spectral_norm(apply, apply_t, n * m, 2000, 1e-8);
}

inline Problem build_mdp(const MdpSpec& spec) {
  if (spec.branching > spec.states) throw ConfigError("garnet: branching exceeds the number of states");
  Rng rng = Rng::derive(spec.seed, 0);
  auto mdp = std::make_shared<const GarnetMdp>(
      generate_garnet(spec.states, spec.actions, spec.branching, spec.discount, rng));
  const double n = static_cast<double>(spec.states);
  const double r_inf = mdp->r_inf();
  const double gamma = spec.discount;

  Problem pr;
  pr.name = "mdp";
  pr.op = std::make_shared<MdpOperator>(mdp);
  const double R = std::sqrt(n) * r_inf / (1.0 - gamma);
  pr.resolvent = std::make_shared<BallSimplexResolvent>(spec.states, R, spec.states * spec.actions);
  pr.meta.L = spec.block_norm == BlockNorm::MaxBlock ? mdp_max_block_norm(*mdp) : mdp_full_block_norm(*mdp).value;
  pr.meta.alpha = 1.0;
  pr.x0.resize(static_cast<Eigen::Index>(spec.states * (spec.actions + 1)));
  pr.x0.head(static_cast<Eigen::Index>(spec.states)).setConstant((1.0 - gamma) / r_inf);
  pr.x0.tail(static_cast<Eigen::Index>(spec.states * spec.actions))
      .setConstant(1.0 / static_cast<double>(spec.states * spec.actions));
  return pr;
}

}  // namespace vfog

#endif
