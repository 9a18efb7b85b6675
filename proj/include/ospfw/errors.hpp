#pragma once

#include <stdexcept>
#include <string>

namespace ospfw {

enum class ErrorCode {
  kMalformedInput,
  kNodeOutOfRange,
  kDuplicateArc,
  kNonPositiveCapacity,
  kNegativeDemand,
  kSelfDemand,
  kSelfLoop,
  kUnknownLink,
  kBadWeight,
  kBadParams,
  kUnroutableDemand,
  kZeroUncap,
  kEmptyDemand,
  kPairAlreadyLinked,
  kScenarioMismatch,
  kTooLarge,
  kUnconnectable,
  kMissingStrategy,
  kMissingTrace,
  kConfigError,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ospfw
