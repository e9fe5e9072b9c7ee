#ifndef VFOG_BENCH_HARNESS_HPP
#define VFOG_BENCH_HARNESS_HPP

#include "vfog/bench/algorithms.hpp"
#include "vfog/bench/csv.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

namespace vfog::bench {

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to slots indexed by i so the outcome does not depend on timing.
inline void parallel_for(Index count, Index jobs, const std::function<void(Index)>& task) {
  jobs = std::max<Index>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (Index i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (Index t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (Index i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline RunOptions run_options(const RunConfig& c, double epochs) {
  RunOptions o;
  o.budget.max_epochs = epochs;
  o.cadence.every_epochs = c.probe_every;
  o.cadence.every_iterations = c.probe_every_iterations;
  o.fb_lambda = c.fb_lambda;
  o.record_wallclock = c.record_wallclock;
  return o;
}

/// One (algorithm, seed) cell on a built instance. The run's stream depends
/// only on the seed and the algorithm name.
inline CellResult run_cell(const Problem& problem, Family family, const AlgoSpec& algo, std::uint64_t seed,
                           const RunOptions& opt) {
  auto method = make_method(algo, family, problem);
  Rng rng = Rng::derive(seed, stream_id(algo.name));
  CellResult out;
  out.algorithm = algo.name;
  out.seed = seed;
  out.trace = run(problem, *method, rng, opt);
  return out;
}

/// Every configured algorithm on the instance of `seed`, sorted by name.
inline std::vector<CellResult> run_instance(const RunConfig& c, const Problem& problem, std::uint64_t seed,
                                            double epochs, Index jobs) {
  std::vector<CellResult> cells(c.algorithms.size());
  const RunOptions opt = run_options(c, epochs);
  parallel_for(c.algorithms.size(), jobs,
               [&](Index i) { cells[i] = run_cell(problem, c.problem.family, c.algorithms[i], seed, opt); });
  std::stable_sort(cells.begin(), cells.end(),
                   [](const CellResult& a, const CellResult& b) { return a.algorithm < b.algorithm; });
  return cells;
}

inline std::string instance_id(const RunConfig& c, std::uint64_t seed) {
  return c.problem.preset + "-" + std::to_string(seed);
}

struct ExperimentResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::vector<CellResult>> per_seed;
  Index diverged = 0;
};

/// Seed by seed: build the instance, run all algorithms, write its CSV.
/// Then writes `<preset>-mean.csv` and prints a summary to `log`.
inline ExperimentResult run_experiment(const RunConfig& c, const std::filesystem::path& out_dir, Index jobs,
                                       std::uint64_t seed_offset, std::ostream& log) {
  if (c.seeds.empty()) throw ConfigError("seed list is empty");
  std::filesystem::create_directories(out_dir);
  ExperimentResult res;
  for (std::uint64_t base : c.seeds) {
    const std::uint64_t seed = base + seed_offset;
    const Problem problem = build_problem(c.problem, seed);
    auto cells = run_instance(c, problem, seed, c.epochs, jobs);
    const std::string id = instance_id(c, seed);
    const auto path = out_dir / (id + ".csv");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path.string());
    os << kCsvHeader << '\n';
    write_instance_rows(os, id, cells);
    res.files.push_back(path);
    for (const auto& cell : cells) {
      if (cell.trace.diverged) {
        ++res.diverged;
        log << "diverged: " << id << " " << cell.algorithm << ": " << cell.trace.failure << '\n';
      }
    }
    res.per_seed.push_back(std::move(cells));
  }

  std::vector<std::string> order;
  for (const auto& cell : res.per_seed.front()) order.push_back(cell.algorithm);
  const auto rows = aggregate(res.per_seed, order);
  const auto agg_path = out_dir / (c.problem.preset + "-mean.csv");
  std::ofstream os(agg_path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + agg_path.string());
  write_aggregate(os, rows);
  res.files.push_back(agg_path);

  log << "algorithm            final_residual_sq_mean  diverged\n";
  for (const auto& name : order) {
    double sum = 0.0;
    Index count = 0, div = 0;
    for (const auto& cells : res.per_seed)
      for (const auto& cell : cells)
        if (cell.algorithm == name) {
          if (cell.trace.diverged) ++div;
          if (!cell.trace.records.empty()) {
            sum += cell.trace.records.back().residual_sq;
            ++count;
          }
        }
    std::string padded = name;
    padded.resize(std::max<std::size_t>(padded.size(), 20), ' ');
    log << padded << ' ' << format_double(count ? sum / static_cast<double>(count) : 0.0) << "  " << div << '\n';
  }
  return res;
}

// ---------------------------------------------------------------------------
// grid search

/// n log-spaced points from lo to hi, both included.
inline std::vector<double> log_grid(double lo, double hi, Index points) {
  if (!(lo > 0.0) || hi < lo || points == 0) throw ConfigError("grid: need 0 < lo <= hi and points >= 1");
  if (points == 1) return {lo};
  std::vector<double> g(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (Index i = 0; i < points; ++i)
    g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

struct GridPoint {
  double multiplier = 0.0;
  double score = std::numeric_limits<double>::infinity();  // +inf when diverged
  bool diverged = false;
};

/// Scores each grid value (lower is better; non-finite counts as diverged)
/// and returns the index of the best. Throws listing failures when every
/// point diverges.
inline Index select_best(std::vector<GridPoint>& grid, const std::function<double(double)>& score) {
  if (grid.empty()) throw ConfigError("grid search: empty grid");
  Index best = grid.size();
  for (Index i = 0; i < grid.size(); ++i) {
    const double s = score(grid[i].multiplier);
    grid[i].diverged = !std::isfinite(s);
    grid[i].score = grid[i].diverged ? std::numeric_limits<double>::infinity() : s;
    if (!grid[i].diverged && (best == grid.size() || grid[i].score < grid[best].score)) best = i;
  }
  if (best == grid.size()) {
    std::string list;
    for (const auto& g : grid) list += " " + format_double(g.multiplier);
    throw NumericError("grid search: every grid point diverged:" + list);
  }
  return best;
}

struct GridResult {
  std::string algorithm;
  std::vector<GridPoint> grid;
  Index best = 0;
  double best_eta = 0.0;
};

/// For each algorithm, eta = multiplier / L over the grid; score = mean
/// final residual^2 over the configured seeds after the pilot budget.
inline std::vector<GridResult> run_gridsearch(const RunConfig& c, Index jobs, std::uint64_t seed_offset,
                                              std::ostream& log) {
  if (c.seeds.empty()) throw ConfigError("seed list is empty");
  std::vector<AlgoSpec> algos;
  for (const auto& a : c.algorithms)
    if (c.grid.algorithms.empty() ||
        std::find(c.grid.algorithms.begin(), c.grid.algorithms.end(), a.name) != c.grid.algorithms.end())
      algos.push_back(a);
  if (algos.empty()) throw ConfigError("grid search: no algorithm selected");

  std::vector<Problem> problems;
  for (auto s : c.seeds) problems.push_back(build_problem(c.problem, s + seed_offset));
  const auto mults = log_grid(c.grid.lo, c.grid.hi, c.grid.points);
  const RunOptions opt = run_options(c, c.grid.pilot_epochs);

  std::vector<GridResult> out;
  for (const auto& algo : algos) {
    GridResult gr;
    gr.algorithm = algo.name;
    for (double m : mults) gr.grid.push_back({m});
    std::vector<double> scores(mults.size() * problems.size());
    parallel_for(scores.size(), jobs, [&](Index idx) {
      const Index gi = idx / problems.size(), pi = idx % problems.size();
      AlgoSpec a = algo;
      a.eta.reset();
      a.eta_mult = mults[gi];
      const auto cell = run_cell(problems[pi], c.problem.family, a, c.seeds[pi] + seed_offset, opt);
      scores[idx] = cell.trace.diverged || cell.trace.records.empty() ? std::numeric_limits<double>::infinity()
                                                                       : cell.trace.records.back().residual_sq;
    });
    gr.best = select_best(gr.grid, [&](double m) {
      const Index gi = static_cast<Index>(std::find(mults.begin(), mults.end(), m) - mults.begin());
      double sum = 0.0;
      for (Index pi = 0; pi < problems.size(); ++pi) sum += scores[gi * problems.size() + pi];
      return sum / static_cast<double>(problems.size());
    });
    gr.best_eta = gr.grid[gr.best].multiplier / problems.front().meta.L;
    log << algo.name << ": best eta = " << format_double(gr.grid[gr.best].multiplier) << " / L\n";
    out.push_back(std::move(gr));
  }
  return out;
}

inline void write_grid_table(std::ostream& os, const std::vector<GridResult>& results) {
  os << "algorithm,multiplier,mean_final_residual_sq,diverged,selected\n";
  for (const auto& r : results)
    for (Index i = 0; i < r.grid.size(); ++i)
      os << r.algorithm << ',' << format_double(r.grid[i].multiplier) << ','
         << (r.grid[i].diverged ? std::string("inf") : format_double(r.grid[i].score)) << ','
         << (r.grid[i].diverged ? 1 : 0) << ',' << (i == r.best ? 1 : 0) << '\n';
}

}  // namespace vfog::bench

#endif
