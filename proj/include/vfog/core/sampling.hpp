#ifndef VFOG_CORE_SAMPLING_HPP
#define VFOG_CORE_SAMPLING_HPP

#include "vfog/core/operator.hpp"
#include "vfog/core/rng.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace vfog {

enum class Sampling { WithReplacement, WithoutReplacement };

/// Draws a mini-batch of size b from [0, n). With replacement the draws are
/// i.i.d. uniform; without replacement the result is sorted.
inline std::vector<Index> draw_batch(Index n, Index b, Sampling mode, Rng& rng) {
  if (b == 0) throw ConfigError("empty mini-batch");
  std::vector<Index> batch;
  batch.reserve(b);
  if (mode == Sampling::WithReplacement) {
    for (Index j = 0; j < b; ++j) batch.push_back(static_cast<Index>(rng.uniform_index(n)));
    return batch;
  }
  if (b > n) throw ConfigError("batch size exceeds n for sampling without replacement");
  if (b * 4 > n) {
    // partial Fisher-Yates
    std::vector<Index> pool(n);
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index j = 0; j < b; ++j) {
      const Index pick = j + static_cast<Index>(rng.uniform_index(n - j));
      std::swap(pool[j], pool[pick]);
    }
    batch.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(b));
  } else {
    // Floyd's algorithm
    for (Index j = n - b; j < n; ++j) {
      const Index t = static_cast<Index>(rng.uniform_index(j + 1));
      if (std::find(batch.begin(), batch.end(), t) == batch.end())
        batch.push_back(t);
      else
        batch.push_back(j);
    }
  }
  std::sort(batch.begin(), batch.end());
  return batch;
}

/// Counts component evaluations; a full pass costs n.
class OracleCounter {
 public:
  std::uint64_t calls() const { return calls_; }
  void charge(std::uint64_t c) { calls_ += c; }

  RealVec full(const FiniteSumOperator& op, const RealVec& x) {
    charge(op.size());
    return op.eval_full(x);
  }
  RealVec batch_mean(const FiniteSumOperator& op, std::span<const Index> batch, const RealVec& x) {
    charge(batch.size());
    return op.eval_batch_mean(batch, x);
  }
  RealVec component(const FiniteSumOperator& op, Index i, const RealVec& x) {
    charge(1);
    return op.eval_component(i, x);
  }

 private:
  std::uint64_t calls_ = 0;
};

/// True when a without-replacement batch of size n covers every index, in
/// which case batch averages are exact full passes.
inline bool covers_all(Index n, Index b, Sampling mode) {
  return mode == Sampling::WithoutReplacement && b == n;
}

}  // namespace vfog

#endif
