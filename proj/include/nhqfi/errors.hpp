#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhqfi {

enum class ErrorCode {
  InvalidArgument,
  NotAState,
  NotHermitian,
  IncompleteKraus,
  ExceptionalPoint,
  PtBroken,
  VanishingNorm,
  NearBoundaryIllConditioned,
  RankDeficientDerivative,
  NotPure,
  ZeroInformation,
  DenominatorVanishes,
  NoInteriorOptimum,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::IncompleteKraus: return "IncompleteKraus";
    case ErrorCode::ExceptionalPoint: return "ExceptionalPoint";
    case ErrorCode::PtBroken: return "PtBroken";
    case ErrorCode::VanishingNorm: return "VanishingNorm";
    case ErrorCode::NearBoundaryIllConditioned: return "NearBoundaryIllConditioned";
    case ErrorCode::RankDeficientDerivative: return "RankDeficientDerivative";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::ZeroInformation: return "ZeroInformation";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::NoInteriorOptimum: return "NoInteriorOptimum";
  }
  return "Unknown";
}

// All library failures are reported through this type; `code()` is stable
// and is what the CLI prints in error-tagged sweep rows.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nhqfi
