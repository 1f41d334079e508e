#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netsec {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid parameter combination (alpha out of range, wrong order, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Operation does not support the given weighting kind.
class SpecError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A critical probability X_i needed by the operation does not exist
// (d c / L <= w'(x_min) for that player).
class UndefinedCriticalPoint : public Error {
 public:
  using Error::Error;
};

class HeterogeneityError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class SelfLoopError : public GraphError {
 public:
  using GraphError::GraphError;
};

class DuplicateEdgeError : public GraphError {
 public:
  using GraphError::GraphError;
};

class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Malformed or schema-violating configuration document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace netsec
