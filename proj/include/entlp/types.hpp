#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace entlp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (shape, sign, integrality).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic result does not fit the output integer type.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

// The requested method does not apply to this instance.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace entlp
