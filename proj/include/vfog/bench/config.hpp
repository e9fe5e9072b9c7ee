#ifndef VFOG_BENCH_CONFIG_HPP
#define VFOG_BENCH_CONFIG_HPP

#include "vfog/bench/presets.hpp"
#include "vfog/core/sampling.hpp"
#include "vfog/estimators/estimator.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace vfog::bench {

using json = nlohmann::json;

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"vfog-exact", "vfog-sgd", "vfog-svrg", "vfog-saga",
                                                 "vfog-sarah", "og",       "vreg",      "vrfrbs"};
  return names;
}

struct AlgoSpec {
  std::string name;
  std::optional<double> s;
  std::optional<double> eta;       // absolute stepsize
  std::optional<double> eta_mult;  // eta = eta_mult / L
  double rho_n = 0.0;
  double rho_c = 0.0;
  std::optional<double> p;
  std::optional<Index> b;
  double p_scale = 1.0;
  double b_scale = 1.0;
  Sampling sampling = Sampling::WithReplacement;
  SvrgSnapshot snapshot = SvrgSnapshot::Current;
};

struct GridSpec {
  double lo = 1e-5;
  double hi = 10.0;
  Index points = 13;
  double pilot_epochs = 20.0;
  std::vector<std::string> algorithms;  // empty = all configured
};

struct RunConfig {
  ProblemSpec problem;
  std::vector<AlgoSpec> algorithms;
  std::vector<std::uint64_t> seeds;
  double epochs = 200.0;
  double probe_every = 1.0;
  Index probe_every_iterations = 0;
  double fb_lambda = 0.0;
  bool record_wallclock = false;
  GridSpec grid;
};

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
T get_as(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": key '" + key + "' has the wrong type");
  }
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out, const std::string& where) {
  if (j.contains(key)) out = get_as<T>(j, key, where);
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (j.contains(key)) out = get_as<T>(j, key, where);
}

inline Sampling parse_sampling(const std::string& s) {
  if (s == "with-replacement") return Sampling::WithReplacement;
  if (s == "without-replacement") return Sampling::WithoutReplacement;
  throw ConfigError("sampling must be 'with-replacement' or 'without-replacement'");
}

inline SvrgSnapshot parse_snapshot(const std::string& s) {
  if (s == "current") return SvrgSnapshot::Current;
  if (s == "previous") return SvrgSnapshot::Previous;
  throw ConfigError("snapshot must be 'current' or 'previous'");
}

inline void check_algorithm_name(const std::string& name) {
  for (const auto& n : algorithm_names())
    if (n == name) return;
  throw ConfigError("unknown algorithm '" + name + "'");
}

inline AlgoSpec parse_algo(const json& j) {
  AlgoSpec a;
  if (j.is_string()) {
    a.name = j.get<std::string>();
    check_algorithm_name(a.name);
    return a;
  }
  const std::string where = "algorithm entry";
  check_keys(j, {"name", "s", "eta", "eta_mult", "rho_n", "rho_c", "p", "b", "p_scale", "b_scale", "sampling",
                 "snapshot"},
             where);
  if (!j.contains("name")) throw ConfigError(where + ": missing 'name'");
  a.name = get_as<std::string>(j, "name", where);
  check_algorithm_name(a.name);
  read_opt(j, "s", a.s, where);
  read_opt(j, "eta", a.eta, where);
  read_opt(j, "eta_mult", a.eta_mult, where);
  read(j, "rho_n", a.rho_n, where);
  read(j, "rho_c", a.rho_c, where);
  read_opt(j, "p", a.p, where);
  read_opt(j, "b", a.b, where);
  read(j, "p_scale", a.p_scale, where);
  read(j, "b_scale", a.b_scale, where);
  if (j.contains("sampling")) a.sampling = parse_sampling(get_as<std::string>(j, "sampling", where));
  if (j.contains("snapshot")) a.snapshot = parse_snapshot(get_as<std::string>(j, "snapshot", where));
  if (a.eta && a.eta_mult) throw ConfigError(where + ": give eta or eta_mult, not both");
  if (!(a.p_scale > 0.0) || !(a.b_scale > 0.0)) throw ConfigError(where + ": scales must be positive");
  return a;
}

inline void parse_problem_overrides(const json& j, ProblemSpec& p) {
  const std::string where = "problem";
  switch (p.family) {
    case Family::Game:
      check_keys(j, {"m", "n", "theta", "noise_sigma2", "L"}, where);
      read(j, "m", p.game.m, where);
      read(j, "n", p.game.n, where);
      read(j, "theta", p.game.theta, where);
      read(j, "noise_sigma2", p.game.noise_sigma2, where);
      break;
    case Family::Mdp: {
      check_keys(j, {"states", "actions", "branching", "discount", "block_norm", "L"}, where);
      read(j, "states", p.mdp.states, where);
      read(j, "actions", p.mdp.actions, where);
      read(j, "branching", p.mdp.branching, where);
      read(j, "discount", p.mdp.discount, where);
      if (j.contains("block_norm")) {
        const auto bn = get_as<std::string>(j, "block_norm", where);
        if (bn == "max-block") p.mdp.block_norm = BlockNorm::MaxBlock;
        else if (bn == "full") p.mdp.block_norm = BlockNorm::Full;
        else throw ConfigError(where + ": block_norm must be 'max-block' or 'full'");
      }
      break;
    }
    case Family::Linear:
      check_keys(j, {"p", "n", "noise", "L"}, where);
      read(j, "p", p.linear_random.p, where);
      read(j, "n", p.linear_random.n, where);
      read(j, "noise", p.linear_random.noise, where);
      break;
  }
  read_opt(j, "L", p.L_override, where);
}

}  // namespace detail

inline std::vector<AlgoSpec> default_algorithms(Family family) {
  std::vector<std::string> names;
  switch (family) {
    case Family::Game:
      names = {"og", "vrfrbs", "vreg", "vfog-sgd", "vfog-svrg", "vfog-saga", "vfog-sarah"};
      break;
    case Family::Mdp:
      names = {"og", "vrfrbs", "vreg", "vfog-svrg", "vfog-saga", "vfog-sarah"};
      break;
    case Family::Linear:
      names = {"og", "vfog-exact"};
      break;
  }
  std::vector<AlgoSpec> out;
  for (auto& n : names) {
    AlgoSpec a;
    a.name = n;
    out.push_back(a);
  }
  return out;
}

/// Preset defaults: seeds 0..9, 200 epochs, the preset's algorithm list.
inline RunConfig default_config(const std::string& preset) {
  RunConfig c;
  c.problem = preset_spec(preset);
  c.algorithms = default_algorithms(c.problem.family);
  for (std::uint64_t s = 0; s < 10; ++s) c.seeds.push_back(s);
  return c;
}

inline RunConfig parse_config(const json& j) {
  detail::check_keys(j, {"preset", "problem", "algorithms", "seeds", "epochs", "probe_every",
                         "probe_every_iterations", "fb_lambda", "record_wallclock", "gridsearch"},
                     "config");
  if (!j.contains("preset")) throw ConfigError("config: missing 'preset'");
  RunConfig c = default_config(detail::get_as<std::string>(j, "preset", "config"));
  if (j.contains("problem")) detail::parse_problem_overrides(j.at("problem"), c.problem);
  if (j.contains("algorithms")) {
    const auto& arr = j.at("algorithms");
    if (!arr.is_array() || arr.empty()) throw ConfigError("config: 'algorithms' must be a non-empty array");
    c.algorithms.clear();
    for (const auto& a : arr) c.algorithms.push_back(detail::parse_algo(a));
  }
  if (j.contains("seeds")) {
    c.seeds = detail::get_as<std::vector<std::uint64_t>>(j, "seeds", "config");
    if (c.seeds.empty()) throw ConfigError("config: seed list is empty");
  }
  detail::read(j, "epochs", c.epochs, "config");
  detail::read(j, "probe_every", c.probe_every, "config");
  detail::read(j, "probe_every_iterations", c.probe_every_iterations, "config");
  detail::read(j, "fb_lambda", c.fb_lambda, "config");
  detail::read(j, "record_wallclock", c.record_wallclock, "config");
  if (!(c.epochs >= 0.0)) throw ConfigError("config: epochs must be nonnegative");
  if (!(c.probe_every > 0.0)) throw ConfigError("config: probe_every must be positive");
  if (j.contains("gridsearch")) {
    const auto& g = j.at("gridsearch");
    detail::check_keys(g, {"lo", "hi", "points", "pilot_epochs", "algorithms"}, "gridsearch");
    detail::read(g, "lo", c.grid.lo, "gridsearch");
    detail::read(g, "hi", c.grid.hi, "gridsearch");
    detail::read(g, "points", c.grid.points, "gridsearch");
    detail::read(g, "pilot_epochs", c.grid.pilot_epochs, "gridsearch");
    detail::read(g, "algorithms", c.grid.algorithms, "gridsearch");
    if (!(c.grid.lo > 0.0) || !(c.grid.hi >= c.grid.lo) || c.grid.points == 0)
      throw ConfigError("gridsearch: need 0 < lo <= hi and points >= 1");
  }
  return c;
}

inline RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace vfog::bench

#endif
