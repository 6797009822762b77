#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siegel/contfrac.hpp"
#include "siegel/family.hpp"
#include "siegel/siegel_model.hpp"

namespace siegel {

// Safety factor applied to the quadrature value of int_0^1 |J(t)| dt.
inline constexpr double kLSafety = 1.02;
// Offsets tried by QN_upper in addition to the convergent-adapted offset.
inline constexpr int kQnGrid = 64;

// u(psi(xi)) / (lambda0 xi psi'(lambda0 xi)); the removable value at xi = 0 is u'(0)/lambda0.
Complex G_eval(const SiegelModel& model, const AnalyticFamily& fam, Complex xi);

// [xi u'(psi) psi'(xi) - u(psi) H(lambda0 xi)] / (lambda0 xi psi'(lambda0 xi)) at
// xi = r0 rho_w e^{2 pi i t}; equals xi G'(xi).
Complex J_eval(const SiegelModel& model, const AnalyticFamily& fam, double r0, double t);

double k_pi(double r);

struct JNorm {
  double raw = 0.0;       // trapezoid value of int_0^1 |J|
  double value = 0.0;     // raw * kLSafety
  int nodes = 0;
  double rel_change = 0.0;
};

// Periodic trapezoid, doubling the node count until the relative change is < 1e-6.
JNorm J_norm(const SiegelModel& model, const AnalyticFamily& fam, double r0);

struct ANResult {
  JNorm L;
  double QN = 0.0;  // QN_upper(rot, N)
  double aN = 0.0;  // 2 pi QN L
};

ANResult compute_aN(const SiegelModel& model, const AnalyticFamily& fam,
                    const RotationNumber& rot, double r0, std::int64_t N);

struct RadiusPair {
  double lower = 0.0;  // r_* = r0 e^{tau (1 - 1/N)}
  double upper = 0.0;  // r^* = r0 e^{tau}
};

RadiusPair tau_radii(double r0, std::int64_t N, double tau);

// omega^{-1}_{r_*}(1 - k_pi(r_*)/k_pi(r^*)); closed form for linear pairs.
double epsilon_N_tau(const SiegelModel& model, const AnalyticFamily& fam, double r0,
                     std::int64_t N, double tau);

// (sqrt(1 + 2 b^2 cos 2v + b^4) - 1 + b^2) / (2 b cos v), evaluated without cancellation.
double Lambda_of(double b, double vartheta);

struct EpsilonStar {
  double b = 0.0;
  double b1 = 0.0;  // min(1, b)
  double Lambda = 0.0;
  double eps_star = 0.0;
};

EpsilonStar epsilon_star(double epsN, std::int64_t N, double tau, double aN, double vartheta);

// sqrt(g^2 + 1) - g with g = (1 - t^2) / (2 t cos vartheta).
double sector_radius(double t_mod, double vartheta);

struct CertifyMode {
  enum class Kind { Manual, Theorem3 };
  Kind kind = Kind::Theorem3;
  std::int64_t N = 0;
  double tau = 0.0;

  static CertifyMode manual(std::int64_t N, double tau) { return {Kind::Manual, N, tau}; }
  static CertifyMode theorem3() { return {Kind::Theorem3, 0, 0.0}; }
};

/// Record of one inclusion certificate: S'_{r0} lies in the immediate basin of
/// f_lambda for lambda in the Stolz sector of half-angle Theta with
/// |lambda - lambda0| < eps_star, whenever `valid` holds.
struct InclusionCertificate {
  CertifyMode::Kind mode = CertifyMode::Kind::Theorem3;
  double r0 = 0.0;
  double Theta = 0.0;
  std::int64_t N = 0;
  int n0 = 0;  // convergent index with q_{n0} = N in theorem3 mode, else 0
  double tau = 0.0;
  double r_lower = 0.0;
  double r_upper = 0.0;
  double QN = 0.0;
  JNorm L;
  double aN = 0.0;
  double vartheta = 0.0;
  double epsN = 0.0;
  double b = 0.0;
  double b1 = 0.0;
  double Lambda = 0.0;
  double eps_star = 0.0;
  bool valid = false;
  std::vector<std::string> notes;
};

InclusionCertificate certify(const SiegelModel& model, const AnalyticFamily& fam,
                             const RotationNumber& rot, double r0, double Theta,
                             const CertifyMode& mode = CertifyMode::theorem3());

struct CurveRow {
  double r = 0.0;
  std::int64_t N = 0;
  double eps = 0.0;
  bool valid = false;
  std::int64_t ell_gamma = 0;  // ell((1 - r)^{-gamma})
  double floor = 0.0;          // C_hat (1 - r)^3 / ell_gamma
};

struct EpsilonCurve {
  double gamma = 0.0;
  double C_hat = 0.0;  // min over valid rows of eps ell_gamma / (1 - r)^3
  std::vector<CurveRow> rows;
};

EpsilonCurve theorem3_curve(const SiegelModel& model, const AnalyticFamily& fam,
                            const RotationNumber& rot, double Theta,
                            std::span<const double> r_grid, double gamma);

struct ANDiagnosis {
  Complex sum_G;
  Complex fd_estimate;
  double gap = 0.0;  // |sum_G - fd_estimate| / |sum_G|, zero when both vanish
};

// Compares sum_{k<N} G(lambda0^k phi(z0)) with a central difference in lambda of
// log phi(f_lambda^N(z0)) at lambda0.
ANDiagnosis diagnose_AN(const SiegelModel& model, const AnalyticFamily& fam, Complex z0,
                        std::int64_t N, double fd_step);

}  // namespace siegel
