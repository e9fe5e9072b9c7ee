#ifndef VFOG_SOLVER_RUN_HPP
#define VFOG_SOLVER_RUN_HPP

#include "vfog/core/residual.hpp"
#include "vfog/solver/constants.hpp"
#include "vfog/solver/method.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace vfog {

struct TraceRecord {
  Index k = 0;
  std::uint64_t oracle_calls = 0;
  double epoch = 0.0;
  double residual_sq = 0.0;
  double fb_residual_sq = 0.0;
  std::int64_t wallclock_ns = 0;
};

struct RunTrace {
  std::vector<TraceRecord> records;
  bool diverged = false;
  std::string failure;
  std::vector<std::string> warnings;
};

struct RunBudget {
  std::optional<double> max_epochs;
  std::optional<Index> max_iterations;
  std::optional<double> target_residual_sq;
};

/// Probe every `every_epochs` epochs of charged calls, or every
/// `every_iterations` iterations when that is set.
struct ProbeCadence {
  double every_epochs = 1.0;
  Index every_iterations = 0;
};

/// Squared-residual bound C0 (R0^2 + Lambda0 S_k)/(k+s)^2, checked at every
/// probe and reported through warnings only.
struct RateDiagnostic {
  double C0 = 0.0;
  double R0_sq = 0.0;
  double s = 0.0;
};

struct RunOptions {
  RunBudget budget;
  ProbeCadence cadence;
  double fb_lambda = 0.0;  // 0 selects 1/L
  bool record_wallclock = false;
  double divergence_threshold = 1e12;
  std::optional<RateDiagnostic> rate_diagnostic;
};

/// Drives `method` until the budget is used. Residual probes are full passes
/// outside the method's oracle counter.
inline RunTrace run(const Problem& problem, IterativeMethod& method, Rng& rng, const RunOptions& opt) {
  if (!opt.budget.max_epochs && !opt.budget.max_iterations && !opt.budget.target_residual_sq)
    throw ConfigError("run: budget needs max_epochs, max_iterations or target_residual");
  if (opt.budget.max_epochs && *opt.budget.max_epochs < 0.0) throw ConfigError("run: negative epoch budget");
  if (opt.cadence.every_iterations == 0 && !(opt.cadence.every_epochs > 0.0))
    throw ConfigError("run: probe cadence must be positive");
  const double lambda = opt.fb_lambda > 0.0 ? opt.fb_lambda : 1.0 / problem.meta.L;
  const double n = static_cast<double>(problem.n());
  const auto start = std::chrono::steady_clock::now();

  RunTrace trace;
  auto probe = [&]() -> bool {
    TraceRecord r;
    r.k = method.iteration();
    r.oracle_calls = method.oracle_calls();
    r.epoch = static_cast<double>(r.oracle_calls) / n;
    const RealVec& x = method.x();
    if (!x.allFinite() || !method.v().allFinite()) {
      trace.diverged = true;
      trace.failure = "non-finite iterate at k = " + std::to_string(r.k);
      return false;
    }
    const double res = natural_residual(*problem.op, x, method.v());
    const double fb = fb_residual(*problem.op, *problem.resolvent, x, lambda);
    r.residual_sq = res * res;
    r.fb_residual_sq = fb * fb;
    if (opt.record_wallclock)
      r.wallclock_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
    if (!std::isfinite(r.residual_sq) || r.residual_sq > opt.divergence_threshold) {
      trace.diverged = true;
      trace.failure = "residual blew up at k = " + std::to_string(r.k);
      return false;
    }
    if (opt.rate_diagnostic) {
      const auto& d = *opt.rate_diagnostic;
      const double bound = rate_bound(d.C0, d.R0_sq, 0.0, 0.0, r.k, d.s);
      if (r.residual_sq > bound * (1.0 + 1e-9))
        trace.warnings.push_back("rate bound exceeded at k = " + std::to_string(r.k));
    }
    trace.records.push_back(r);
    return true;
  };

  try {
    method.init(problem, rng);
  } catch (const NumericError& e) {
    trace.diverged = true;
    trace.failure = e.what();
    return trace;
  }
  if (!probe()) return trace;

  const std::uint64_t call_cap =
      opt.budget.max_epochs ? static_cast<std::uint64_t>(std::llround(*opt.budget.max_epochs * n))
                            : std::numeric_limits<std::uint64_t>::max();
  const Index iter_cap = opt.budget.max_iterations ? *opt.budget.max_iterations : std::numeric_limits<Index>::max();
  double next_probe_epoch = opt.cadence.every_epochs;

  auto reached_target = [&]() {
    return opt.budget.target_residual_sq && trace.records.back().residual_sq <= *opt.budget.target_residual_sq;
  };
  if (reached_target()) return trace;

  while (method.oracle_calls() < call_cap && method.iteration() < iter_cap) {
    try {
      method.step(problem, rng);
    } catch (const NumericError& e) {
      trace.diverged = true;
      trace.failure = std::string(e.what()) + " at k = " + std::to_string(method.iteration());
      break;
    }
    const double epoch = static_cast<double>(method.oracle_calls()) / n;
    const bool last = method.oracle_calls() >= call_cap || method.iteration() >= iter_cap;
    bool due;
    if (opt.cadence.every_iterations > 0) {
      due = method.iteration() % opt.cadence.every_iterations == 0;
    } else {
      due = epoch >= next_probe_epoch;
      while (next_probe_epoch <= epoch) next_probe_epoch += opt.cadence.every_epochs;
    }
    if (due || last) {
      if (!probe()) break;
      if (reached_target()) break;
    }
  }
  for (const auto& w : method.warnings()) trace.warnings.push_back(w);
  return trace;
}

/// Least-squares slope of log(residual^2) against log(k) over records with
/// k in [k_lo, k_hi] and positive residual.
inline double rate_certificate(const RunTrace& trace, Index k_lo, Index k_hi) {
  std::vector<double> lx, ly;
  for (const auto& r : trace.records) {
    if (r.k < k_lo || r.k > k_hi || r.k == 0 || !(r.residual_sq > 0.0)) continue;
    lx.push_back(std::log(static_cast<double>(r.k)));
    ly.push_back(std::log(r.residual_sq));
  }
  if (lx.size() < 10) throw ConfigError("rate certificate: fewer than 10 usable records");
  const double m = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace vfog

#endif
