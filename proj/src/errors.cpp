#include "povindex/errors.hpp"

namespace povindex {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNoPoorObservations: return "NO_POOR_OBSERVATIONS";
    case ErrorCode::kDegenerateSubsample: return "DEGENERATE_SUBSAMPLE";
    case ErrorCode::kDegenerateInterval: return "DEGENERATE_INTERVAL";
    case ErrorCode::kInfeasible: return "INFEASIBLE";
    case ErrorCode::kNonConvergence: return "NON_CONVERGENCE";
    case ErrorCode::kZeroPoorMass: return "ZERO_POOR_MASS";
    case ErrorCode::kNegativeIncome: return "NEGATIVE_INCOME";
    case ErrorCode::kTooFewObservations: return "TOO_FEW_OBSERVATIONS";
    case ErrorCode::kMissingColumn: return "MISSING_COLUMN";
    case ErrorCode::kMalformedNumber: return "MALFORMED_NUMBER";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kConfigError: return "CONFIG_ERROR";
    case ErrorCode::kIoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNegativeIncome:
    case ErrorCode::kTooFewObservations:
    case ErrorCode::kMissingColumn:
    case ErrorCode::kMalformedNumber:
    case ErrorCode::kIoError:
      return 2;
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidArgument:
      return 4;
    default:
      return 3;
  }
}

}  // namespace povindex
