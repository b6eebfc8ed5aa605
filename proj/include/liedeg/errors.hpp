#pragma once

#include <stdexcept>
#include <string>

namespace liedeg {

/// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  Ok = 0,
  Failure = 1,
  Config = 2,
  NumericGuard = 3,
  Io = 4,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code = ExitCode::Failure)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

struct TagMismatchError : Error {
  explicit TagMismatchError(const std::string& what) : Error("group tag mismatch: " + what) {}
};

struct IndexError : Error {
  explicit IndexError(const std::string& what) : Error("index out of range: " + what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what, ExitCode::Config) {}
};

struct NumericGuardError : Error {
  explicit NumericGuardError(const std::string& what) : Error(what, ExitCode::NumericGuard) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what, ExitCode::Io) {}
};

// degree-lab specific guards
struct InconsistentDegreeError : NumericGuardError {
  using NumericGuardError::NumericGuardError;
};
struct DegenerateDegreeError : NumericGuardError {
  using NumericGuardError::NumericGuardError;
};
struct NonHermitianError : NumericGuardError {
  using NumericGuardError::NumericGuardError;
};

}  // namespace liedeg
