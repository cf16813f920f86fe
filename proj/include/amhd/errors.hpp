#pragma once

#include <stdexcept>
#include <string>

namespace amhd {

/// Shape or rank mismatch between operands.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (rho <= 0, s < 0, A <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller misuse: too few samples, repeated axes, kmax outside the mask.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Configuration text could not be turned into a valid RunConfig.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string key, int line, const std::string& what)
      : std::runtime_error(format(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& key, int line, const std::string& what) {
    std::string msg = "config";
    if (line > 0) msg += ":" + std::to_string(line);
    if (!key.empty()) msg += ": [" + key + "]";
    return msg + ": " + what;
  }

  std::string key_;
  int line_;
};

/// Why a time step was refused. Every rejection names exactly one cause.
enum class RejectCause { blow_up, vacuum, guard, cfl };

inline const char* to_string(RejectCause c) {
  switch (c) {
    case RejectCause::blow_up: return "blow_up";
    case RejectCause::vacuum: return "vacuum";
    case RejectCause::guard: return "guard";
    case RejectCause::cfl: return "cfl";
  }
  return "unknown";
}

class StepRejected : public std::runtime_error {
 public:
  StepRejected(RejectCause cause, const std::string& what, double time = 0.0)
      : std::runtime_error(what), cause_(cause), time_(time) {}

  RejectCause cause() const { return cause_; }
  double time() const { return time_; }

 private:
  RejectCause cause_;
  double time_;
};

}  // namespace amhd
