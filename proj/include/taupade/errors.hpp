#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace taupade {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: unknown basis kind, malformed operator, bad arguments.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A linear system was rejected because its condition estimate exceeds the
/// trust threshold (default 1e14).
class SingularSystemError : public Error {
public:
  SingularSystemError(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

private:
  double condition_estimate_;
};

/// A closed-form rational construction hit a vanishing pivot
/// (c_{p+1} or the 2x2 determinant below the degeneracy threshold).
class DegenerateCaseError : public Error {
public:
  using Error::Error;
};

/// A table or approximant request needs series coefficients beyond the data
/// supplied.  Carries the largest feasible request for the same input.
class InsufficientCoefficientsError : public Error {
public:
  InsufficientCoefficientsError(const std::string& what, int max_rows, int max_cols)
      : Error(what), max_rows_(max_rows), max_cols_(max_cols) {}
  int max_feasible_rows() const { return max_rows_; }
  int max_feasible_cols() const { return max_cols_; }

private:
  int max_rows_;
  int max_cols_;
};

/// Rational evaluation requested too close to a pole.
class PoleProximityError : public Error {
public:
  PoleProximityError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const { return location_; }

private:
  double location_;
};

/// Problem-file syntax error with 1-based line/column.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Problem-file semantic error; carries the offending field path.
class SpecError : public Error {
public:
  SpecError(const std::string& what, std::string path)
      : Error(what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

}  // namespace taupade
