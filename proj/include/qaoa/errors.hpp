#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace qaoa {

/// Invalid argument values (parity, ranges, dimension mismatches).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size exceeds a configured simulation or enumeration cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random instance generation gave up. For MaxCut-filtered sampling the
/// histogram of observed optimum values is attached.
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what,
                           std::map<int, int> cmax_histogram = {})
      : std::runtime_error(what), histogram_(std::move(cmax_histogram)) {}

  const std::map<int, int>& histogram() const noexcept { return histogram_; }

 private:
  std::map<int, int> histogram_;
};

/// The objective returned a non-finite value during a search.
class SearchAbortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Estimator input has zero per-clause variance, so the correlation is undefined.
class DegenerateVarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed command line, config, or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qaoa
