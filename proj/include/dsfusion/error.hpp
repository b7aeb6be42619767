#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsfusion {

enum class ErrorCode {
  // frames
  kEmptyFrame,
  kEmptyLabel,
  kDuplicateLabel,
  kFrameTooLarge,
  kFrameMismatch,
  kUnknownLabel,
  // mass functions
  kMassOnEmptySet,
  kNegativeMass,
  kInvalidMass,
  kSumNotOne,
  kDuplicateFocalElement,
  kSubsetOutOfFrame,
  // operators
  kFrameTooLargeForDenseTable,
  kFrameTooLargeForAltFusion,
  kTotalConflict,
  kTotalAltConflict,
  // scenarios and I/O
  kInvalidParams,
  kParseError,
  kIoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code identifies the error class,
/// the message carries the human-readable detail (including, for document
/// errors, the name of the offending BBA).
class FusionError : public std::runtime_error {
 public:
  FusionError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dsfusion
