#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace borefield {

/// Base of every error raised by the library. `code()` is a short
/// machine-readable identifier that the CLI prints as `ERROR <code>:`.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

/// Argument outside the mathematical domain of a kernel.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// Hyperbolic terms would overflow for the requested parameters.
class OverflowError : public Error {
public:
  explicit OverflowError(const std::string& what) : Error("overflow", what) {}
};

class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, double achieved)
      : Error("quadrature", what), achieved_(achieved) {}

  /// Relative error estimate reached before giving up.
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

/// Invalid input data (layouts, profiles, scenarios, flags).
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("parse", what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A non-finite value appeared in a simulated series.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

/// The temperature limits cannot be met even with the longest allowed borehole.
class InfeasibleAtMaxLength : public Error {
public:
  InfeasibleAtMaxLength(const std::string& what, double violation)
      : Error("infeasible", what), violation_(violation) {}

  /// Largest limit violation at L_max, in K.
  double violation() const noexcept { return violation_; }

private:
  double violation_;
};

}  // namespace borefield
