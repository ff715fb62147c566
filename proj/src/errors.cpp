#include "bfamily/errors.hpp"

namespace bfamily {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::InvalidArgument: return "invalid-argument";
    case ErrorCategory::Config: return "config";
    case ErrorCategory::InvalidDiffeo: return "invalid-diffeo";
    case ErrorCategory::Breakdown: return "breakdown";
    case ErrorCategory::BlowUp: return "blow-up";
    case ErrorCategory::UnderResolution: return "under-resolution";
    case ErrorCategory::IO: return "io";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::InvalidDiffeo:
    case ErrorCategory::Breakdown: return 3;
    case ErrorCategory::BlowUp: return 4;
    case ErrorCategory::UnderResolution: return 5;
    case ErrorCategory::IO: return 6;
    case ErrorCategory::InvalidArgument: return 1;
  }
  return 1;
}

}  // namespace bfamily
