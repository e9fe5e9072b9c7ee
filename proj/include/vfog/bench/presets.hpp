#ifndef VFOG_BENCH_PRESETS_HPP
#define VFOG_BENCH_PRESETS_HPP

#include "vfog/problems/linear.hpp"
#include "vfog/problems/matrix_game.hpp"
#include "vfog/problems/mdp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vfog::bench {

enum class Family { Game, Mdp, Linear };

enum class LinearKind { Example1, Identity, Random };

struct ProblemSpec {
  std::string preset;
  Family family = Family::Game;
  GameSpec game;
  MdpSpec mdp;
  LinearKind linear = LinearKind::Random;
  LinearRandomSpec linear_random;
  std::optional<double> L_override;
};

struct PresetInfo {
  const char* name;
  const char* description;
};

inline const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> list = {
      {"game-exp1", "matrix game, m = 10, n = 1000 (p = 200)"},
      {"game-exp2", "matrix game, m = 15, n = 2000 (p = 450)"},
      {"mdp-exp1", "garnet MDP, (states, actions, branching, discount) = (2000, 5, 1000, 0.9), p = 12000"},
      {"mdp-exp2", "garnet MDP, (4000, 10, 2000, 0.9), p = 44000"},
      {"linear-exam1", "2x2 nonmonotone linear system with linear T"},
      {"linear-identity", "two identity components in R^2 (monotone)"},
      {"linear-random", "monotone affine, p = 50, n = 20, known solution"},
  };
  return list;
}

inline ProblemSpec preset_spec(const std::string& name) {
  ProblemSpec p;
  p.preset = name;
  if (name == "game-exp1") {
    p.family = Family::Game;
    p.game.m = 10;
    p.game.n = 1000;
  } else if (name == "game-exp2") {
    p.family = Family::Game;
    p.game.m = 15;
    p.game.n = 2000;
  } else if (name == "mdp-exp1") {
    p.family = Family::Mdp;
    p.mdp = {2000, 5, 1000, 0.9, 0, BlockNorm::MaxBlock};
  } else if (name == "mdp-exp2") {
    p.family = Family::Mdp;
    p.mdp = {4000, 10, 2000, 0.9, 0, BlockNorm::MaxBlock};
  } else if (name == "linear-exam1") {
    p.family = Family::Linear;
    p.linear = LinearKind::Example1;
  } else if (name == "linear-identity") {
    p.family = Family::Linear;
    p.linear = LinearKind::Identity;
  } else if (name == "linear-random") {
    p.family = Family::Linear;
    p.linear = LinearKind::Random;
  } else {
    std::string names;
    for (const auto& info : preset_list()) names += std::string(names.empty() ? "" : ", ") + info.name;
    throw ConfigError("unknown preset '" + name + "' (known: " + names + ")");
  }
  return p;
}

/// Linear presets also keep their matrices for the certificate report.
inline std::optional<LinearProblem> build_linear(const ProblemSpec& spec, std::uint64_t seed) {
  if (spec.family != Family::Linear) return std::nullopt;
  switch (spec.linear) {
    case LinearKind::Example1: return build_linear_example1();
    case LinearKind::Identity: return build_linear_identity();
    case LinearKind::Random: {
      LinearRandomSpec s = spec.linear_random;
      s.seed = seed;
      return build_linear_random(s);
    }
  }
  return std::nullopt;
}

inline Problem build_problem(const ProblemSpec& spec, std::uint64_t seed) {
  Problem pr;
  switch (spec.family) {
    case Family::Game: {
      GameSpec g = spec.game;
      g.seed = seed;
      pr = build_matrix_game(g);
      break;
    }
    case Family::Mdp: {
      MdpSpec m = spec.mdp;
      m.seed = seed;
      pr = build_mdp(m);
      break;
    }
    case Family::Linear:
      pr = build_linear(spec, seed)->problem;
      break;
  }
  pr.name = spec.preset;
  if (spec.L_override) pr.meta.L = *spec.L_override;
  return pr;
}

}  // namespace vfog::bench

#endif
