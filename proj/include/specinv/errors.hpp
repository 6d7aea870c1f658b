#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specinv {

// Bad data handed in by the caller: malformed files, violated preconditions.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// The numerics could not deliver: integrator breakdown, failed bracketing,
// zeros sitting on a contour, too many or too few roots.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IntegratorError : public NumericalError {
public:
  IntegratorError(const std::string& what, double lambda)
      : NumericalError(what), lambda_(lambda) {}
  double lambda() const noexcept { return lambda_; }

private:
  double lambda_;
};

class BracketError : public NumericalError {
public:
  BracketError(const std::string& what, double lo, double hi)
      : NumericalError(what), lo_(lo), hi_(hi) {}
  double window_lo() const noexcept { return lo_; }
  double window_hi() const noexcept { return hi_; }

private:
  double lo_, hi_;
};

class BoundaryZeroError : public NumericalError {
public:
  BoundaryZeroError(const std::string& what, std::complex<double> where)
      : NumericalError(what), where_(where) {}
  std::complex<double> where() const noexcept { return where_; }

private:
  std::complex<double> where_;
};

// Carries whatever roots were found before the search gave up.
class RootCountError : public NumericalError {
public:
  RootCountError(const std::string& what, std::vector<std::complex<double>> found)
      : NumericalError(what), found_(std::move(found)) {}
  const std::vector<std::complex<double>>& found() const noexcept { return found_; }

private:
  std::vector<std::complex<double>> found_;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& field, const std::string& what, int line = 0)
      : InputError(format(field, what, line)), field_(field), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

private:
  static std::string format(const std::string& field, const std::string& what, int line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + what;
  }
  std::string field_;
  int line_;
};

}  // namespace specinv
