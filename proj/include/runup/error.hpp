#pragma once

#include <stdexcept>
#include <string>

namespace runup {

// Status codes shared with the C API and the CLI exit codes.
enum class Status : int {
  ok = 0,
  invalid_argument = 1,
  config = 2,
  breaking = 3,
  convergence = 4,
  range = 5,
  io = 6,
  internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}

  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

struct InvalidParameter : Error {
  explicit InvalidParameter(const std::string& what) : Error(Status::invalid_argument, what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(Status::config, what) {}
};

// Loss of invertibility of the hodograph map (wave breaking).
struct BreakingError : Error {
  explicit BreakingError(const std::string& what) : Error(Status::breaking, what) {}
};

struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& what) : Error(Status::convergence, what) {}
};

struct RangeError : Error {
  explicit RangeError(const std::string& what) : Error(Status::range, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(Status::io, what) {}
};

}  // namespace runup
