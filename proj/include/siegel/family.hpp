#pragma once

#include <limits>
#include <vector>

#include "siegel/powerseries.hpp"
#include "siegel/siegel_model.hpp"

namespace siegel {

enum class FamilyMode { MultiplierScaled, LinearPair, Custom };

const char* to_string(FamilyMode mode);

/// One-parameter polynomial family f_lambda(z) with f_lambda(0) = 0.
///
/// MultiplierScaled: f_lambda(z) = lambda z + sum_{k>=2} a_k z^k.
/// LinearPair: f_lambda = (1-t) f0 + t f1 with t = (lambda - lambda0)/(lambda1 - lambda0),
///   lambda0 = f0'(0), lambda1 = f1'(0).
/// Custom: coefficient of z^k is a polynomial in lambda, poly[k][j] multiplying lambda^j.
class AnalyticFamily {
 public:
  static AnalyticFamily multiplier_scaled(std::vector<Complex> higher, Complex lambda0,
                                          double domain_radius = kInf);
  static AnalyticFamily linear_pair(std::vector<Complex> f0, std::vector<Complex> f1,
                                    double domain_radius = kInf);
  static AnalyticFamily custom(std::vector<std::vector<Complex>> poly, Complex lambda0,
                               double domain_radius = kInf, double param_radius = kInf);

  FamilyMode mode() const noexcept { return mode_; }
  int degree() const noexcept { return degree_; }
  Complex lambda0() const noexcept { return lambda0_; }
  Complex lambda1() const noexcept { return lambda1_; }
  double domain_radius() const noexcept { return domain_radius_; }
  // Radius delta* of the parameter disk around lambda0 on which the family is defined.
  double param_radius() const noexcept { return param_radius_; }
  // Affine in lambda, so omega_r(delta) is exactly linear in delta.
  bool affine_in_lambda() const noexcept;

  const std::vector<Complex>& higher() const noexcept { return higher_; }
  const std::vector<Complex>& f0() const noexcept { return f0_; }
  const std::vector<Complex>& f1() const noexcept { return f1_; }
  const std::vector<std::vector<Complex>>& poly() const noexcept { return poly_; }

  // Coefficients of f_lambda by power of z, length degree + 1.
  std::vector<Complex> coefficients(Complex lambda) const;
  // Coefficients of u = d f_lambda / d lambda at lambda0.
  std::vector<Complex> u_coefficients() const;

  Complex eval(Complex lambda, Complex z) const;
  Complex eval_dz(Complex lambda, Complex z) const;
  Complex u(Complex z) const;
  Complex u_dz(Complex z) const;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

 private:
  AnalyticFamily() = default;
  void check_domain(Complex z) const;
  void finish();

  FamilyMode mode_ = FamilyMode::MultiplierScaled;
  int degree_ = 1;
  Complex lambda0_;
  Complex lambda1_;
  double domain_radius_ = kInf;
  double param_radius_ = kInf;
  std::vector<Complex> higher_;  // a_2..a_d
  std::vector<Complex> f0_, f1_;
  std::vector<std::vector<Complex>> poly_;
  std::vector<Complex> u_coeffs_;
};

struct StolzAngle {
  Complex vertex;
  double theta = 0.0;  // half-angle in (0, pi/2)
  double eps_max = 0.0;

  // |arg(1 - lambda/vertex)| < theta and |lambda - vertex| < eps_max.
  bool contains(Complex lambda) const;
};

// k parameters at |lambda - vertex| = eps spread over the sector, boundary rays
// inset by 1e-3 rad; k = 1 gives the radial point vertex (1 - eps).
std::vector<Complex> stolz_points(const StolzAngle& sector, double eps, int k);

struct OmegaSampling {
  int xi_angles = 64;
  int xi_radii = 8;
  int lambda_angles = 64;
  double inflation = 1.05;
};

// Sampled sup of |1 - f_lambda(psi(xi)) / f_lambda0(psi(xi))| over |xi| <= r rho_w
// and |lambda - lambda0| = delta, times the inflation factor.
double modulus_omega(const AnalyticFamily& fam, const SiegelModel& model, double r, double delta,
                     const OmegaSampling& sampling = {});

// Inflated sampled sup over |xi| <= r rho_w of |f_lambda - f_lambda0| / (|lambda - lambda0| |f_lambda0|)
// for a family affine in lambda; omega_r(delta) = delta * slope.
double affine_omega_slope(const AnalyticFamily& fam, const SiegelModel& model, double r,
                          const OmegaSampling& sampling = {});

// Bisection solve of omega_r(delta) = s with omega_r(result) <= s; returns delta*
// when s is beyond the reachable supremum.
double omega_inverse(const AnalyticFamily& fam, const SiegelModel& model, double r, double s,
                     const OmegaSampling& sampling = {});

// Kœnigs function of f_lambda at the attracting fixed point 0.
Complex koenigs_attracting(const AnalyticFamily& fam, Complex lambda, Complex z,
                           double tol = 1e-12, int n_max = 200000);

}  // namespace siegel
