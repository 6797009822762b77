#include "siegel/error.hpp"

#include <sstream>

namespace siegel {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RationalRotation: return "RationalRotation";
    case ErrorKind::NeedMoreQuotients: return "NeedMoreQuotients";
    case ErrorKind::ConvergentOverflow: return "ConvergentOverflow";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SmallDivisorBreakdown: return "SmallDivisorBreakdown";
    case ErrorKind::LinearizationUnusable: return "LinearizationUnusable";
    case ErrorKind::OutsideModel: return "OutsideModel";
    case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorKind::NotInBasin: return "NotInBasin";
    case ErrorKind::InvalidMultiplier: return "InvalidMultiplier";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::DegeneratePerturbation: return "DegeneratePerturbation";
    case ErrorKind::PoleInModulus: return "PoleInModulus";
    case ErrorKind::OriginNotAttracted: return "OriginNotAttracted";
  }
  return "Unknown";
}

namespace {

std::string need_more_message(double threshold, double best) {
  std::ostringstream os;
  os << "need more partial quotients: harmonic mean must reach " << threshold
     << ", largest available is " << best;
  return os.str();
}

std::string small_divisor_message(int index, double divisor) {
  std::ostringstream os;
  os << "small divisor |lambda0^" << index << " - lambda0| = " << divisor
     << " below cutoff";
  return os.str();
}

}  // namespace

NeedMoreQuotientsError::NeedMoreQuotientsError(double threshold, double best_mean)
    : Error(ErrorKind::NeedMoreQuotients, need_more_message(threshold, best_mean)),
      threshold_(threshold),
      best_mean_(best_mean) {}

SmallDivisorError::SmallDivisorError(int index, double divisor)
    : Error(ErrorKind::SmallDivisorBreakdown, small_divisor_message(index, divisor)),
      index_(index),
      divisor_(divisor) {}

}  // namespace siegel
