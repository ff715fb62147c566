#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bfamily {

/// Failure classes surfaced to callers and mapped onto CLI exit codes.
enum class ErrorCategory {
  InvalidArgument,
  Config,
  InvalidDiffeo,
  Breakdown,
  BlowUp,
  UnderResolution,
  IO,
};

std::string_view to_string(ErrorCategory category);

/// Process exit code for a category: 2 config, 3 breakdown, 4 blow-up,
/// 5 under-resolution, 6 IO, 1 anything else.
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message,
        std::optional<double> time = std::nullopt)
      : std::runtime_error(message), category_(category), time_(time) {}

  ErrorCategory category() const noexcept { return category_; }
  /// Simulation time at which the failure occurred, if it happened mid-run.
  std::optional<double> time() const noexcept { return time_; }

 private:
  ErrorCategory category_;
  std::optional<double> time_;
};

}  // namespace bfamily
