#pragma once

#include <stdexcept>
#include <string>

namespace mble {

/// Point or argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative linear solve did not reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Matrix handed to an SPD solver showed non-positive curvature.
class MatrixPropertyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time integration produced non-finite values or ran away.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar root finder could not bracket or converge.
class RootFindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shooting found no heteroclinic connection in the searched bracket.
class NoConnectionError : public RootFindError {
 public:
  using RootFindError::RootFindError;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration; carries the 1-based line when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace mble
