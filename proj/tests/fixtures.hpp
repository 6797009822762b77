#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "siegel/certificate.hpp"
#include "siegel/contfrac.hpp"
#include "siegel/family.hpp"
#include "siegel/siegel_model.hpp"
#include "siegel/verify.hpp"

namespace fx {

using siegel::Complex;

inline const siegel::RotationNumber& golden() {
  static const siegel::RotationNumber rot = siegel::golden_rotation(40);
  return rot;
}

// lambda z + z^2 with lambda0 = e^{2 pi i golden}.
inline const siegel::AnalyticFamily& quadratic() {
  static const siegel::AnalyticFamily fam =
      siegel::AnalyticFamily::multiplier_scaled({1.0}, golden().multiplier());
  return fam;
}

inline const siegel::SiegelModel& quadratic_model() {
  static const siegel::SiegelModel model =
      siegel::SiegelModel::build(quadratic().coefficients(golden().multiplier()), golden());
  return model;
}

// f_lambda(z) = lambda z.
inline const siegel::AnalyticFamily& linear() {
  static const siegel::AnalyticFamily fam =
      siegel::AnalyticFamily::multiplier_scaled({}, golden().multiplier());
  return fam;
}

inline const siegel::SiegelModel& linear_model() {
  static const siegel::SiegelModel model =
      siegel::SiegelModel::build({0.0, golden().multiplier()}, golden());
  return model;
}

// a_1(lambda) = 2 lambda - lambda^2 / lambda0, so d f / d lambda vanishes at lambda0.
inline const siegel::AnalyticFamily& flat() {
  const Complex l0 = golden().multiplier();
  static const siegel::AnalyticFamily fam =
      siegel::AnalyticFamily::custom({{}, {0.0, 2.0, -1.0 / l0}, {1.0}}, l0);
  return fam;
}

inline Complex unit(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

inline Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace fx
