#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arrzeta {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input that fails a documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Quadrature or extrapolation failed to meet its tolerance.
class NumericalError : public Error {
public:
  NumericalError(const std::string& what,
                 std::vector<std::pair<double, double>> trace = {})
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<std::pair<double, double>>& trace() const { return trace_; }

private:
  std::vector<std::pair<double, double>> trace_;
};

}  // namespace arrzeta
