#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace povindex {

// Stable machine-readable failure codes. The CLI prints these verbatim.
enum class ErrorCode {
  kNoPoorObservations,
  kDegenerateSubsample,
  kDegenerateInterval,
  kInfeasible,
  kNonConvergence,
  kZeroPoorMass,
  kNegativeIncome,
  kTooFewObservations,
  kMissingColumn,
  kMalformedNumber,
  kInvalidArgument,
  kConfigError,
  kIoError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Exit-code class of an error: 2 input, 3 inference, 4 config.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace povindex
