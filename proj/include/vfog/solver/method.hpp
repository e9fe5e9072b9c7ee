#ifndef VFOG_SOLVER_METHOD_HPP
#define VFOG_SOLVER_METHOD_HPP

#include "vfog/core/operator.hpp"
#include "vfog/core/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vfog {

/// What the run loop needs from an algorithm: an iterate x with v in T x for
/// the natural residual, and an exact oracle counter.
class IterativeMethod {
 public:
  virtual ~IterativeMethod() = default;

  virtual std::string name() const = 0;
  virtual void init(const Problem& problem, Rng& rng) = 0;
  virtual void step(const Problem& problem, Rng& rng) = 0;

  virtual const RealVec& x() const = 0;
  virtual const RealVec& v() const = 0;
  virtual Index iteration() const = 0;
  virtual std::uint64_t oracle_calls() const = 0;
  virtual const std::vector<std::string>& warnings() const = 0;
};

}  // namespace vfog

#endif
