#ifndef VFOG_CORE_TYPES_HPP
#define VFOG_CORE_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vfog {

using RealVec = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = std::size_t;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, schedules or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf reached a public boundary.
class NumericError : public Error {
 public:
  using Error::Error;
};

inline bool all_finite(const RealVec& x) { return x.allFinite(); }

inline void require_finite(const RealVec& x, const char* what = "non-finite iterate") {
  if (!x.allFinite()) throw NumericError(what);
}

/// floor() that forgives representation error just below an integer,
/// e.g. 0.5 * 1000^(2/3) evaluating to 49.999999999999993.
inline double floor_tol(double x) { return std::floor(x + 1e-9 * std::max(1.0, std::abs(x))); }

}  // namespace vfog

#endif
