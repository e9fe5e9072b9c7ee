#ifndef VFOG_BENCH_CSV_HPP
#define VFOG_BENCH_CSV_HPP

#include "vfog/solver/run.hpp"

#include <charconv>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace vfog::bench {

inline constexpr const char* kCsvHeader =
    "instance_id,seed,algorithm,k,oracle_calls,epoch,residual_sq,fb_residual_sq,wallclock_ns";
inline constexpr const char* kAggregateHeader =
    "algorithm,probe,k_mean,epoch_mean,residual_sq_mean,fb_residual_sq_mean,seeds";

/// Shortest representation that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

struct CellResult {
  std::string algorithm;
  std::uint64_t seed = 0;
  RunTrace trace;
};

inline void write_instance_rows(std::ostream& os, const std::string& instance_id, const std::vector<CellResult>& cells) {
  for (const auto& c : cells)
    for (const auto& r : c.trace.records) {
      os << instance_id << ',' << c.seed << ',' << c.algorithm << ',' << r.k << ',' << r.oracle_calls << ','
         << format_double(r.epoch) << ',' << format_double(r.residual_sq) << ',' << format_double(r.fb_residual_sq)
         << ',' << r.wallclock_ns << '\n';
    }
}

struct AggregateRow {
  std::string algorithm;
  Index probe = 0;
  double k_mean = 0.0;
  double epoch_mean = 0.0;
  double residual_sq_mean = 0.0;
  double fb_residual_sq_mean = 0.0;
  Index seeds = 0;
};

/// Mean over seeds of the j-th probe of each algorithm. Truncated traces
/// contribute to the probes they reached; `seeds` counts contributors.
inline std::vector<AggregateRow> aggregate(const std::vector<std::vector<CellResult>>& per_seed,
                                           const std::vector<std::string>& algorithm_order) {
  std::vector<AggregateRow> rows;
  for (const auto& name : algorithm_order) {
    std::vector<const RunTrace*> traces;
    for (const auto& cells : per_seed)
      for (const auto& c : cells)
        if (c.algorithm == name) traces.push_back(&c.trace);
    Index longest = 0;
    for (const auto* t : traces) longest = std::max<Index>(longest, t->records.size());
    for (Index j = 0; j < longest; ++j) {
      AggregateRow row;
      row.algorithm = name;
      row.probe = j;
      for (const auto* t : traces) {
        if (j >= t->records.size()) continue;
        const auto& r = t->records[j];
        row.k_mean += static_cast<double>(r.k);
        row.epoch_mean += r.epoch;
        row.residual_sq_mean += r.residual_sq;
        row.fb_residual_sq_mean += r.fb_residual_sq;
        ++row.seeds;
      }
      const double c = static_cast<double>(row.seeds);
      row.k_mean /= c;
      row.epoch_mean /= c;
      row.residual_sq_mean /= c;
      row.fb_residual_sq_mean /= c;
      rows.push_back(row);
    }
  }
  return rows;
}

inline void write_aggregate(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << kAggregateHeader << '\n';
  for (const auto& r : rows)
    os << r.algorithm << ',' << r.probe << ',' << format_double(r.k_mean) << ',' << format_double(r.epoch_mean) << ','
       << format_double(r.residual_sq_mean) << ',' << format_double(r.fb_residual_sq_mean) << ',' << r.seeds << '\n';
}

}  // namespace vfog::bench

#endif
