#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leaksense {

// Failure categories raised across the library. Callers that need to branch
// on the kind of failure inspect Error::code(); everyone else can catch
// std::runtime_error.
enum class ErrorCode {
  RejectedInput,      // physically impossible value (e.g. below absolute zero)
  InapplicableMode,   // operation undefined for the record's operation mode
  Ordering,           // time series not sorted
  DivisionByZero,     // fully compensating EEV, c_M == 1
  Configuration,      // invalid parameters or missing settings
  FittingData,        // fitting requires measured mass
  InsufficientData,
  DegenerateDesign,   // zero variance in the regressor
  Domain,             // argument outside the mathematical domain
  Saturation,         // leak degree reached total loss
  Schema,             // CSV header/column problems
  Range,              // CSV value out of range
  ModeConsistency,    // mixed modes where one mode is required
  DegenerateExponent, // scaling exponent c == 0
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace leaksense
