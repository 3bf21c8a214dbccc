#pragma once

#include <stdexcept>
#include <string>

namespace cntpf {

/// Input outside the mathematical domain of an operation (e.g. nu >= 0.5).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear solve hit a singular (or numerically singular) matrix.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::string where)
      : std::runtime_error(what + " [" + where + "]"), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Iterative procedure (quadrature refinement, root finding, nonlinear solve)
/// failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cntpf
