#include "cohfilt/error.hpp"

namespace cohfilt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::NotStrictlyIncoherent: return "NotStrictlyIncoherent";
    case ErrorCode::NotSubnormalized: return "NotSubnormalized";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::InvalidProjector: return "InvalidProjector";
    case ErrorCode::DegenerateDiagonal: return "DegenerateDiagonal";
    case ErrorCode::InfeasibleAtUpperBound: return "InfeasibleAtUpperBound";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::DegenerateKraus: return "DegenerateKraus";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace cohfilt
