#pragma once

#include <stdexcept>
#include <string>

namespace crowdweight {

/// Malformed input text; `line` is 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// Input data the library does not handle (e.g. more than two classes).
class UnsupportedDatasetError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normal equations singular and no regularization to fall back on.
class SingularMatrixError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Too few usable observations for a statistical procedure.
class InsufficientDataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A margin assumption (y_t <u, x_t> >= gamma) failed; carries the offending index.
class MarginAssumptionError : public std::runtime_error {
public:
  MarginAssumptionError(const std::string& msg, int index)
      : std::runtime_error(msg + " (example " + std::to_string(index) + ")"),
        index_(index) {}
  int index() const noexcept { return index_; }

private:
  int index_;
};

}  // namespace crowdweight
