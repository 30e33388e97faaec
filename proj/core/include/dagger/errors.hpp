#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dagger {

enum class ErrorCode {
  NonElement,
  DimensionMismatch,
  FlavorMismatch,
  NotCokernelForm,
  UnsupportedRing,
  ZeroSampleElement,
  TailDiverges,
  NotStrictlySmaller,
  UnitIdealWitnessMissing,
  TruncationTooSmall,
  NonPositiveLowerBound,
  NotACover,
  ArchimedeanBaseRing,
  CoordinateOutOfDisk,
  ViolationWitness,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every library failure carries a machine-readable code; the CLI maps these
// to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dagger
