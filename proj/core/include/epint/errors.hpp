#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace epint {

// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration: unknown model or method names, missing model data,
// out-of-range parameters. Maps to CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A field was evaluated outside its domain (singular point, non-finite
// result). The message identifies the model and the offending position.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The fixed-point iteration failed to reach the requested tolerance, or blew
// up to non-finite values. Carries the iteration count and last residual.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iters, double residual)
      : Error(what + " (sweeps: " + std::to_string(iters) + ", residual: " + brief(residual) + ")"),
        iters_(iters),
        residual_(residual) {}

  int iters() const { return iters_; }
  double residual() const { return residual_; }

 private:
  static std::string brief(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

  int iters_;
  double residual_;
};

// Two trajectory records were compared at mismatched times.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace epint
