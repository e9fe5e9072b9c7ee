// Exit gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "mc_checks.hpp"
#include "oracles.hpp"
#include "vfog/bench/harness.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace vfog;
using namespace vfog::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

Outcome constants_reproduction() {
  const auto c = constants_vr(5.0, 0.0, 1.0);
  const bool ok = c.omega_hat == 29.625 && std::abs(c.lambda_hat - 0.052164) <= 1e-5 &&
                  std::abs(c.mu_hat - 0.021192) <= 1e-5;
  return {ok, fmt("omega_hat = %.17g, lambda_hat = %.7f, mu_hat = %.7f", c.omega_hat, c.lambda_hat, c.mu_hat)};
}

Outcome rate_certificate_check() {
  const LinearProblem lp = build_linear_random({50, 20, 0.1, 0});
  const double s = 5.0;
  const double eta = 0.9 * constants_vr(s, 0.0, 1.0).lambda_hat / lp.problem.meta.L;
  VfogMethod m("vfog-exact", ScheduleParams{s, eta, 0.0, 0.0}, EstimatorConfig{});
  RunOptions opt;
  opt.budget.max_iterations = 10000;
  opt.cadence.every_iterations = 1;
  Rng rng(0);
  const auto t0 = std::chrono::steady_clock::now();
  const RunTrace tr = run(lp.problem, m, rng, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (tr.diverged) return {false, "diverged: " + tr.failure};
  const double slope = rate_certificate(tr, 100, 10000);
  return {slope <= -1.8 && secs < 30.0,
          fmt("slope = %.4f over k in [1e2, 1e4] (need <= -1.8), final residual^2 = %.3e, %.1f s", slope,
              tr.records.back().residual_sq, secs)};
}

Outcome baseline_separation() {
  bench::RunConfig c = bench::default_config("game-exp1");
  c.epochs = 200.0;
  const auto dir = std::filesystem::temp_directory_path() / "vfog_acceptance_game";
  std::filesystem::remove_all(dir);
  std::ostringstream log;
  const auto res = bench::run_experiment(c, dir, std::max(1u, std::thread::hardware_concurrency()), 0, log);
  std::map<std::string, double> mean;
  Index saga_wins = 0, sarah_wins = 0;
  for (const auto& cells : res.per_seed) {
    std::map<std::string, double> fin;
    for (const auto& cell : cells)
      fin[cell.algorithm] = cell.trace.records.empty() ? std::numeric_limits<double>::infinity()
                                                        : cell.trace.records.back().residual_sq;
    for (const auto& [name, v] : fin) mean[name] += v / static_cast<double>(res.per_seed.size());
    if (fin.at("vfog-saga") < fin.at("og")) ++saga_wins;
    if (fin.at("vfog-sarah") < fin.at("og")) ++sarah_wins;
  }
  std::string worst;
  for (const auto& [name, v] : mean)
    if (worst.empty() || v > mean[worst]) worst = name;
  std::string detail = "saga < og in " + std::to_string(saga_wins) + "/10, sarah < og in " +
                       std::to_string(sarah_wins) + "/10, worst = " + worst + "; means:";
  for (const auto& [name, v] : mean) detail += " " + name + "=" + fmt("%.3e", v);
  if (res.diverged) detail += "; " + std::to_string(res.diverged) + " diverged";
  return {saga_wins >= 8 && sarah_wins >= 8 && worst == "vrfrbs", detail};
}

struct ToyPoints {
  LinearProblem lp = random_linear_toy(10, 4, 2024);
  RealVec y0, y1, y2;
  ToyPoints() {
    Rng r(99);
    y0 = random_vec(4, r);
    y1 = random_vec(4, r);
    y2 = y1 + 0.3 * random_vec(4, r);
  }
};

Outcome unbiasedness_check() {
  ToyPoints t;
  const auto& op = *t.lp.problem.op;
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1;
  for (auto kind : {EstimatorKind::MiniBatch, EstimatorKind::LSvrg, EstimatorKind::Saga}) {
    const Estimator e = make_estimator(kind, op, t.y0, 2, 0.3);
    const Band b = unbiasedness(op, e, t.y1, t.y0, 100000, seed++);
    ok = ok && b.pass;
    detail += std::string(detail.empty() ? "" : ", ") + to_string(kind) + " max z = " + fmt("%.2f", b.value);
  }
  return {ok, detail + " (need <= 4, 1e5 draws)"};
}

Outcome recursion_check() {
  ToyPoints t;
  const auto& op = *t.lp.problem.op;
  bool ok = true;
  std::string detail;
  auto add = [&](const char* name, const Band& b) {
    ok = ok && b.pass;
    detail += std::string(detail.empty() ? "" : ", ") + name +
              fmt(" E[D_k] = %.4g <= %.4g + 4*%.2g", b.value, b.bound, b.se);
  };
  add("l-svrg", vr_recursion(op, make_estimator(EstimatorKind::LSvrg, op, t.y0, 2, 0.3), t.y1, t.y2, t.y0,
                             100000, 11));
  add("saga",
      vr_recursion(op, make_estimator(EstimatorKind::Saga, op, t.y0, 2, 1.0), t.y1, t.y2, t.y0, 100000, 12));
  add("l-sarah", vr_recursion(op, sarah_after_one_step(op, t.y0, t.y1, 2, 0.3), t.y1, t.y2, t.y0, 100000, 13));
  return {ok, detail};
}

Outcome projection_check() {
  Rng r(2718);
  double worst_simplex = 0.0, worst_ball = 0.0;
  for (int t = 0; t < 50; ++t) {
    const RealVec y = random_vec(6, r, 1.5);
    worst_simplex = std::max(worst_simplex, (project_simplex(y) - simplex_by_enumeration(y)).cwiseAbs().maxCoeff());
  }
  for (int t = 0; t < 50; ++t) {
    const RealVec y = random_vec(5, r, 2.0);
    const double R = 0.2 + 2.0 * r.uniform();
    worst_ball =
        std::max(worst_ball, (project_nonneg_ball(y, R) - nonneg_ball_by_dykstra(y, R)).cwiseAbs().maxCoeff());
  }
  return {worst_simplex <= 1e-8 && worst_ball <= 1e-8,
          fmt("max error simplex = %.2e, nonneg-ball = %.2e (need <= 1e-8)", worst_simplex, worst_ball)};
}

Outcome certificate_check() {
  const LinearProblem lp = build_linear_example1();
  const auto ok = verify_cohypo_linear(*lp.data, 1.2, 0.1);
  const auto bad = verify_cohypo_linear(*lp.data, 0.0, 0.0);
  return {ok.ok && !bad.ok, fmt("(1.2, 0.1): min eig %.3g; (0, 0): min eig %.3g", ok.min_eigenvalue,
                                bad.min_eigenvalue)};
}

Outcome accounting_check() {
  // b = n/4, p = 1/2 on the game-exp1 operator; 1e4 iterations
  const Problem pr = bench::build_problem(bench::preset_spec("game-exp1"), 0);
  const auto c = svrg_cost(*pr.op, 250, 0.5, 10000, 31);
  return {c.rel_error <= 0.02,
          fmt("empirical %.2f vs n p + 2(1-p) b = %.2f per iteration (rel. error %.3f%%, n = 1000)", c.empirical,
              c.expected, 100.0 * c.rel_error)};
}

Outcome determinism_check() {
  const char* configs[] = {
      R"({"preset": "game-exp1", "seeds": [0, 1], "epochs": 5})",
      R"({"preset": "mdp-exp1", "problem": {"states": 60, "actions": 3, "branching": 20}, "seeds": [3], "epochs": 5})",
      R"({"preset": "linear-random", "algorithms": ["og", "vfog-exact", "vfog-svrg", "vfog-sarah", "vreg"],
          "seeds": [0, 7], "epochs": 30})",
  };
  const auto root = std::filesystem::temp_directory_path() / "vfog_acceptance_det";
  std::filesystem::remove_all(root);
  Index files = 0;
  for (const char* text : configs) {
    const bench::RunConfig c = bench::parse_config_text(text);
    std::ostringstream log;
    const auto a = bench::run_experiment(c, root / "a", 1, 0, log);
    bench::run_experiment(c, root / "b", 1, 0, log);
    bench::run_experiment(c, root / "c", 3, 0, log);
    for (const auto& f : a.files) {
      auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
      };
      const std::string ref = slurp(f);
      if (ref.empty() || ref != slurp(root / "b" / f.filename()) || ref != slurp(root / "c" / f.filename()))
        return {false, "mismatch in " + f.filename().string()};
      ++files;
    }
  }
  return {true, std::to_string(files) + " CSV files byte-identical across reruns and thread counts"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"constants reproduction", constants_reproduction},
      {"rate certificate", rate_certificate_check},
      {"baseline separation", baseline_separation},
      {"estimator unbiasedness", unbiasedness_check},
      {"VR recursion bounds", recursion_check},
      {"projection oracles", projection_check},
      {"certificate reproduction", certificate_check},
      {"oracle accounting", accounting_check},
      {"determinism", determinism_check},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
