#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohfilt {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  InvalidDimension,
  InvalidPermutation,
  NonFinite,
  TraceNotOne,
  NotPSD,
  NotNormalized,
  InvalidRank,
  NotStrictlyIncoherent,
  NotSubnormalized,
  ZeroProbability,
  ZeroWeight,
  InvalidProjector,
  DegenerateDiagonal,
  InfeasibleAtUpperBound,
  DimensionTooLarge,
  LengthMismatch,
  NonPositiveEntry,
  DegenerateKraus,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception. what() reads "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cohfilt
