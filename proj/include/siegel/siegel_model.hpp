#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "siegel/contfrac.hpp"
#include "siegel/powerseries.hpp"

namespace siegel {

// Coefficients below this modulus count as a small-divisor breakdown.
inline constexpr double kSmallDivisorCutoff = 1e-13;

struct SchroderSeries {
  TruncatedSeries psi;
  double min_small_divisor = std::numeric_limits<double>::infinity();
  int min_divisor_index = 0;
};

// Normalized solution psi(lambda0 xi) = f0(psi(xi)), psi(0) = 0, psi'(0) = 1, through
// order M. `f0` holds polynomial coefficients indexed by power with f0[0] = 0 and
// f0[1] = lambda0.
SchroderSeries schroder_series(std::span<const Complex> f0, Complex lambda0, int order);

// sup over |xi| = radius of |psi(lambda0 xi) - f0(psi(xi))| on `samples` equispaced angles.
double conjugacy_residual(const TruncatedSeries& psi, std::span<const Complex> f0,
                          Complex lambda0, double radius, int samples);

struct LinearizerOptions {
  int order = 64;
  double tol_conj = 1e-9;
  int samples = 256;            // angles per residual circle
  double rho_cap = 1.0;         // top of the geometric radius grid
  double grid_ratio = 0.98;
  int grid_steps = 400;
  double domain_radius = std::numeric_limits<double>::infinity();
};

// Largest radius on the grid rho_cap * grid_ratio^k whose conjugacy residual is
// within tolerance, whose image stays inside the domain, and on whose disk psi'
// does not vanish and psi separates a 64x64 sample grid. Throws
// LinearizationUnusable when no grid radius qualifies.
double working_radius(const TruncatedSeries& psi, std::span<const Complex> f0, Complex lambda0,
                      const LinearizerOptions& options);

struct ResidualRow {
  double r = 0.0;         // model-relative radius
  double residual = 0.0;  // sup over |xi| = r * rho_w
};

/// Validated linearization of f0 near its Siegel point.
///
/// psi maps the disk |xi| < rho_w into the Siegel disk and conjugates f0 to the
/// rotation xi -> lambda0 xi up to `tol_conj`. Radii r in (0,1) handed to this
/// class and its consumers are model-relative: they mean |xi| = r * rho_w.
class SiegelModel {
 public:
  static SiegelModel build(std::vector<Complex> f0, const RotationNumber& rot,
                           const LinearizerOptions& options = {});

  Complex lambda0() const noexcept { return lambda0_; }
  const RotationNumber& rotation() const noexcept { return rot_; }
  const TruncatedSeries& psi() const noexcept { return psi_; }
  // Series reversion of psi, used as a Newton seed and as phi_0 near 0.
  const TruncatedSeries& phi_series() const noexcept { return phi_series_; }
  double rho_w() const noexcept { return rho_w_; }
  double tol_conj() const noexcept { return tol_conj_; }
  double min_small_divisor() const noexcept { return min_small_divisor_; }
  int min_divisor_index() const noexcept { return min_divisor_index_; }
  std::span<const Complex> f0() const noexcept { return f0_; }
  const LinearizerOptions& options() const noexcept { return options_; }

  Complex psi_at(Complex xi) const { return horner(psi_.coeffs(), xi); }
  Jet psi_jet(Complex xi) const { return horner_jet(psi_.coeffs(), xi); }
  Complex f0_at(Complex z) const { return horner(f0_, z); }

  // xi = r * rho_w * exp(2 pi i t).
  Complex xi_at(double r, double t) const;

  std::vector<ResidualRow> residual_table() const;

 private:
  SiegelModel() = default;

  RotationNumber rot_;
  Complex lambda0_;
  std::vector<Complex> f0_;
  TruncatedSeries psi_{1};
  TruncatedSeries phi_series_{1};
  double rho_w_ = 0.0;
  double tol_conj_ = 0.0;
  double min_small_divisor_ = 0.0;
  int min_divisor_index_ = 0;
  LinearizerOptions options_;
};

// Samples psi(r rho_w exp(2 pi i k / n)), k = 0..n-1, of the level curve L_r.
std::vector<Complex> level_curve(const SiegelModel& model, double r, int n);

// xi with psi(xi) = z, |xi| <= rho_w. Newton polish from the reversion seed (or
// the supplied seed), falling back to continuation along the segment [0, z].
// Throws OutsideModel on failure.
Complex phi_invert(const SiegelModel& model, Complex z, std::optional<Complex> seed = {});

// |phi(z)| / rho_w, the radial coordinate of z in the unit-disk normalization.
double radial_coordinate(const SiegelModel& model, Complex z, std::optional<Complex> seed = {});

// 1 + xi psi''(xi) / psi'(xi).
Complex H_eval(const SiegelModel& model, Complex xi);

struct IntegralMeans {
  std::vector<double> values;
  double beta_fit = 0.0;  // least-squares slope, a heuristic estimate of beta_psi(t)
};

// values[i] = int_0^{2 pi} |psi'(r_i rho_w e^{i theta})|^t d theta (trapezoid, 4096 nodes).
IntegralMeans integral_means(const SiegelModel& model, double t, std::span<const double> r_list);

// Kœnigs function lim lambda^{-n} f^n(z) at an attracting fixed point 0 of the
// polynomial `f` (coefficients by power, f[1] = lambda). Stops when the Cauchy
// increment is <= tol; throws NotInBasin if that does not happen within n_max.
Complex koenigs_attracting(std::span<const Complex> f, Complex z, double tol = 1e-12,
                           int n_max = 200000);

}  // namespace siegel
