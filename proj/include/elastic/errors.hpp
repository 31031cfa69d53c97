#pragma once

#include <stdexcept>
#include <string>

namespace elastic {

// Malformed experiment/config input. Carries the offending line when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SplitError : public DataError {
  using DataError::DataError;
};

class CheckpointError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A loss or parameter went non-finite during training.
class NumericalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace elastic
