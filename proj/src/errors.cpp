#include "dlat/errors.hpp"

namespace dlat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DetTooLarge: return "DetTooLarge";
    case ErrorCode::EvenDeterminant: return "EvenDeterminant";
    case ErrorCode::NotPerfectSquare: return "NotPerfectSquare";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::BadFraction: return "BadFraction";
    case ErrorCode::EvenOrder: return "EvenOrder";
    case ErrorCode::NotOddSquare: return "NotOddSquare";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::MalformedCode: return "MalformedCode";
    case ErrorCode::NonPlanar: return "NonPlanar";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::MissingEmbedding: return "MissingEmbedding";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace dlat
