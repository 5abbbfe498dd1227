#pragma once

#include <exception>
#include <string>
#include <utility>

namespace pnf {

// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  ok = 0,
  parse = 2,
  not_area_preserving = 3,
  unsupported_linear_part = 4,
  degenerate = 5,
  inconsistency = 6,
};

class Error : public std::exception {
 public:
  explicit Error(std::string what, ExitCode code = ExitCode::inconsistency)
      : message_(std::move(what)), code_(code) {}
  const char* what() const noexcept override { return message_.c_str(); }
  ExitCode code() const noexcept { return code_; }
  // Prefixes the message with the pipeline stage that raised it.
  void add_stage(const std::string& stage) { message_ = stage + ": " + message_; }

 private:
  std::string message_;
  ExitCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what, ExitCode::parse), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Bad flags, orders or generator windows supplied by a caller.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(what, ExitCode::parse) {}
};

// Operands built under different gradings or truncation orders.
class IncompatibleContext : public Error {
 public:
  explicit IncompatibleContext(const std::string& what) : Error(what) {}
};

class CompositionDomainError : public Error {
 public:
  explicit CompositionDomainError(const std::string& what) : Error(what) {}
};

// Generator whose lowest weight is below k0 + l0 + 1.
class GeneratorOrderError : public Error {
 public:
  explicit GeneratorOrderError(const std::string& what) : Error(what) {}
};

// A vector field with nonzero divergence handed to the Hamiltonian solver.
class UnsolvableFieldError : public Error {
 public:
  explicit UnsolvableFieldError(const std::string& what) : Error(what) {}
};

class NotAreaPreservingError : public Error {
 public:
  explicit NotAreaPreservingError(const std::string& what)
      : Error(what, ExitCode::not_area_preserving) {}
};

class UnsupportedLinearPartError : public Error {
 public:
  explicit UnsupportedLinearPartError(const std::string& what)
      : Error(what, ExitCode::unsupported_linear_part) {}
};

// Degenerate leading order, degenerate cubic or a cubic needing an irrational root.
class DegeneracyError : public Error {
 public:
  explicit DegeneracyError(const std::string& what) : Error(what, ExitCode::degenerate) {}
};

// Leading part of a Hamiltonian not in the shape a reduction expects.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& what) : Error(what) {}
};

}  // namespace pnf
