#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dlat {

enum class ErrorCode {
  NotSymmetric,
  NotPositiveDefinite,
  DimensionMismatch,
  DetTooLarge,
  EvenDeterminant,
  NotPerfectSquare,
  BadRank,
  BoxTooSmall,
  NotUnimodular,
  SearchBudgetExceeded,
  BadFraction,
  EvenOrder,
  NotOddSquare,
  NoWitness,
  MalformedCode,
  NonPlanar,
  NotAlternating,
  Disconnected,
  GroupTooLarge,
  MissingEmbedding,
  Overflow,
  BadInput,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (notably the CLI) can map them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dlat
