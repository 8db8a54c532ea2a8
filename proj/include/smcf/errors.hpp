#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace smcf {

/// A field contained NaN or Inf.
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(const std::string& what, std::size_t index, std::int64_t step = -1)
      : std::runtime_error(what), index_(index), step_(step) {}

  std::size_t index() const { return index_; }
  std::int64_t step() const { return step_; }

 private:
  std::size_t index_;
  std::int64_t step_;
};

/// Invalid configuration text or out-of-range parameter.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be read, written, or failed its integrity check.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smcf
