#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsntopo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration files. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// The seed topology around the sink cannot be formed (too few sink
// neighbors, too few in-range pairs, or no connected draw).
class SeedError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class ElectionError : public Error {
 public:
  using Error::Error;
};

class AnalysisError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  FitError(const std::string& what, std::size_t samples)
      : Error(what), samples_(samples) {}
  std::size_t samples() const noexcept { return samples_; }

 private:
  std::size_t samples_;
};

}  // namespace wsntopo
