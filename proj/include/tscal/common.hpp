#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace tscal {

// Raised when a computation leaves the realm of finite numbers (overflow,
// NaN from a right-hand side, ...).  Validation problems use
// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// State norm used throughout the library: the supremum norm on R^d.
// Vector values model truncations of null sequences, whose natural norm
// is the sup norm.
template <typename Derived>
double sup_norm(const Eigen::MatrixBase<Derived>& v) {
  if (v.size() == 0) return 0.0;
  return v.template lpNorm<Eigen::Infinity>();
}

}  // namespace tscal
