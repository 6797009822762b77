#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  RationalRotation,
  NeedMoreQuotients,
  ConvergentOverflow,
  NonzeroConstantTerm,
  NotInvertible,
  SmallDivisorBreakdown,
  LinearizationUnusable,
  OutsideModel,
  DerivativeVanishes,
  NotInBasin,
  InvalidMultiplier,
  OutsideDomain,
  DegeneratePerturbation,
  PoleInModulus,
  OriginNotAttracted,
};

const char* to_string(ErrorKind kind) noexcept;

// Domain failure raised by the numerical modules. The CLI maps every Error to
// exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// The convergent list ran out before the harmonic mean 2 q_n q_{n+1} / (q_n + q_{n+1})
// reached the requested threshold.
class NeedMoreQuotientsError : public Error {
 public:
  NeedMoreQuotientsError(double threshold, double best_mean);

  double threshold() const noexcept { return threshold_; }
  double best_mean() const noexcept { return best_mean_; }

 private:
  double threshold_;
  double best_mean_;
};

class SmallDivisorError : public Error {
 public:
  SmallDivisorError(int index, double divisor);

  // Coefficient index m at which |lambda0^m - lambda0| fell below the cutoff.
  int index() const noexcept { return index_; }
  double divisor() const noexcept { return divisor_; }

 private:
  int index_;
  double divisor_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::InvalidArgument, message);
}

}  // namespace siegel
