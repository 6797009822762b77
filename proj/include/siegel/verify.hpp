#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "siegel/certificate.hpp"
#include "siegel/contfrac.hpp"
#include "siegel/family.hpp"
#include "siegel/siegel_model.hpp"

namespace siegel {

enum class OrbitClass : std::uint8_t { Attracted, Escaped, Undecided };

const char* to_string(OrbitClass c);

struct OrbitOutcome {
  OrbitClass classification = OrbitClass::Undecided;
  int steps = 0;
  Complex final_point;
  double trap_radius = 0.0;
};

// Largest r (capped below the domain radius) with sum_{k>=2} |a_k| r^{k-1} <= (1 - |a_1|)/2,
// so |f(z)| <= (1 + |a_1|)/2 |z| on |z| <= r. Zero when |a_1| >= 1.
double trap_radius(std::span<const Complex> coeffs, double domain_radius);

// 1 + max(2, sum_{k>=2} |a_k|).
double escape_radius(std::span<const Complex> coeffs);

/// Attraction/escape test for the orbit of z under a fixed polynomial map.
class OrbitClassifier {
 public:
  OrbitClassifier(std::vector<Complex> coeffs, double domain_radius,
                  std::optional<double> escape_R = {});
  OrbitClassifier(const AnalyticFamily& fam, Complex lambda, std::optional<double> escape_R = {});

  OrbitOutcome classify(Complex z, int n_max) const;
  double trap() const noexcept { return trap_; }
  double escape() const noexcept { return escape_; }

 private:
  std::vector<Complex> coeffs_;
  double domain_radius_;
  double trap_;
  double escape_;
};

OrbitOutcome classify_orbit(const AnalyticFamily& fam, Complex lambda, Complex z, int n_max,
                            std::optional<double> escape_R = {});

struct Window {
  Complex center;
  double half_width = 2.0;
};

struct BasinRaster {
  Window window;
  int width = 0;
  int height = 0;
  std::vector<OrbitClass> cls;      // row-major, row 0 at the top
  std::vector<std::uint8_t> mask;   // 4-connected attracted component of the origin pixel
  int origin_col = 0;
  int origin_row = 0;

  Complex pixel_center(int col, int row) const;
  std::size_t mask_count() const;
};

// threads = 0 picks the hardware concurrency; the result does not depend on it.
BasinRaster basin_raster(const AnalyticFamily& fam, Complex lambda, const Window& window,
                         int width, int height, int n_max, unsigned threads = 0);

// PGM P5: 255 immediate basin, 160 other attracted, 64 undecided, 0 escaped.
void write_pgm(std::ostream& os, const BasinRaster& raster);

struct InclusionReport {
  double eps_used = 0.0;
  int n_lambda = 0;
  int n_boundary = 0;
  std::vector<Complex> lambdas;
  double max_radius = 0.0;       // max of |phi(f^N(z))| / rho_w
  double band_min = 0.0;         // extreme radii along the orbits, j = 1..N
  double band_max = 0.0;
  bool band_ok = false;
  int failures = 0;              // orbits lost to inversion or domain errors
  std::string first_failure;
  bool pass = false;
};

// Iterates N times from n_boundary samples of L_{r0} for stolz_points(Theta,
// eps_factor * eps_star, n_lambda) and checks the final radius and the band
// r0 e^{-tau} < radius < r0 e^{tau}.
InclusionReport inclusion_check(const SiegelModel& model, const AnalyticFamily& fam,
                                const InclusionCertificate& cert, int n_lambda = 9,
                                int n_boundary = 256, double eps_factor = 0.9);

// Largest r of the ascending r_grid such that every grid circle up to r has all
// n_boundary samples of L_r attracted and no Julia witness point lies inside S'_r;
// 0 when the smallest circle already fails.
double kernel_radius(const SiegelModel& model, const AnalyticFamily& fam, Complex lambda,
                     std::span<const double> r_grid, int n_boundary, int n_max,
                     std::span<const Complex> julia_witnesses = {});

struct RepellingCycle {
  Complex point;         // cycle point with the smallest radial coordinate
  Complex multiplier;    // (f^q)' along the cycle, |multiplier| > 1
  double radius = 0.0;   // |phi(point)| / rho_w
};

// Repelling cycle of exact period q of f_lambda closest to 0 in the model's radial
// coordinate, located by deflated Newton on f^q(z) = z from seeds around 0.
std::optional<RepellingCycle> nearest_repelling_cycle(const SiegelModel& model,
                                                      const AnalyticFamily& fam, Complex lambda,
                                                      int q);

struct KoenigsGap {
  Complex lambda;
  double gap = 0.0;  // max |phi_lambda(z) - phi_0(z)| over the samples
  bool ok = false;
  std::string message;
};

// Samples z = psi(r_compact rho_w e^{2 pi i k/n}), where phi_0(z) is the preimage itself.
std::vector<KoenigsGap> koenigs_convergence(const AnalyticFamily& fam,
                                            std::span<const Complex> lambdas,
                                            const SiegelModel& model, double r_compact,
                                            int n_samples);

struct Example1Point {
  int n = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  double mu = 0.0;            // 1 - 2^{-k}
  Complex lambda;             // mu exp(2 pi i p/q)
  std::optional<RepellingCycle> witness;
  double target = 0.0;        // 1/n
};

// For each convergent n, mu_n = 1 - 2^{-k} with the smallest k <= 52 for which a
// repelling q_n-cycle of f_lambda lies inside S'_{1/n}; witness is empty when no
// such k exists in double precision.
std::vector<Example1Point> example1_sequence(const SiegelModel& model, const AnalyticFamily& fam,
                                             const RotationNumber& rot, int n_first, int n_last);

struct Example2Report {
  int n = 0;
  std::int64_t q = 0;
  std::int64_t p = 0;
  double comparison_fixed_gap = 0.0;  // |g~(1/2) - 1/2|
  double l_closed = 0.0;
  Complex l_fd;
  double l_gap = 0.0;                 // |l_fd - l_closed|
  double second_derivative_max = 0.0; // max |g~''| on |z - 1/2| <= 0.1
  double rho = 0.0;                   // min(0.1, (l - 1) / (2 max |g~"|))
  double perturbation = 0.0;          // max |g_n - g~| on |z - 1/2| = rho
  bool rouche_ok = false;             // perturbation < (l - 1) rho - max |g~"| rho^2 / 2
  bool growth_condition = false;      // q_{n+1} >= 2^{q_n}
  bool newton_converged = false;
  int newton_steps = 0;
  Complex z_star;
  double z_star_residual = 0.0;       // |g_n(z_star) - z_star|
  double z_star_offset = 0.0;         // |z_star - 1/2|
  bool in_D3 = false;                 // |z_star| < 3/4
  bool nontrivial = false;            // z_star is not the fixed point 0
  // A periodic point of f_n other than 0 inside D3, so D3 is not in the immediate basin.
  bool certifies_D3 = false;
};

// Requires 1 <= n < K and q_n <= 16.
Example2Report example2_check(const RotationNumber& rot, int n);

}  // namespace siegel
