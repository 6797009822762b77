#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle_values.hpp"
#include "siegel/error.hpp"
#include "siegel/siegel_model.hpp"

using namespace siegel;

namespace {

Complex c(const std::array<double, 2>& v) { return {v[0], v[1]}; }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Schroder coefficients of the golden quadratic") {
  const Complex l0 = fx::golden().multiplier();
  const auto sch = schroder_series(std::vector<Complex>{0.0, l0, 1.0}, l0, 64);
  const Complex c2 = sch.psi[2];
  const Complex c3 = sch.psi[3];
  CHECK(std::abs(c2 - 1.0 / (l0 * l0 - l0)) < 1e-15);
  CHECK(std::abs(c3 - 2.0 * c2 / (l0 * l0 * l0 - l0)) < 1e-14);
  CHECK(rel(c2, c(oracle::kSchroderC2)) < 1e-13);
  CHECK(rel(c3, c(oracle::kSchroderC3)) < 1e-13);
  CHECK(rel(sch.psi[32], c(oracle::kSchroderC32)) < 1e-9);
  CHECK(rel(sch.psi[64], c(oracle::kSchroderC64)) < 1e-9);
  CHECK(sch.psi[0] == Complex{});
  CHECK(sch.psi[1] == Complex{1.0});
}

TEST_CASE("linear map has the identity conjugacy") {
  const auto& m = fx::linear_model();
  CHECK(max_coeff_gap(m.psi(), TruncatedSeries::identity(m.psi().order())) == 0.0);
  CHECK(m.rho_w() == 1.0);
  const auto pts = level_curve(m, 0.5, 4);
  REQUIRE(pts.size() == 4);
  const Complex ik[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(pts[k] - 0.5 * ik[k]) < 1e-15);
  CHECK(phi_invert(m, Complex{0.3, 0.2}) == Complex{0.3, 0.2});
  CHECK(H_eval(m, Complex{0.4, 0.1}) == Complex{1.0});
}

TEST_CASE("zero tolerance is unusable for a nonlinear map") {
  LinearizerOptions opt;
  opt.tol_conj = 0.0;
  try {
    (void)SiegelModel::build(fx::quadratic().coefficients(fx::golden().multiplier()), fx::golden(), opt);
    FAIL("expected LinearizationUnusable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LinearizationUnusable);
  }
}

TEST_CASE("golden quadratic working radius and residuals") {
  const auto& m = fx::quadratic_model();
  CHECK(m.rho_w() == doctest::Approx(oracle::kRhoW).epsilon(1e-12));
  const double res = conjugacy_residual(m.psi(), m.f0(), m.lambda0(), 0.5 * m.rho_w(), 256);
  CHECK(res <= 1e-9);
  for (const auto& row : m.residual_table())
    if (row.r < 1.0) CHECK(row.residual <= m.tol_conj());
}

TEST_CASE("level curves are invariant under f0") {
  const auto& m = fx::quadratic_model();
  CHECK(std::abs(level_curve(m, 1e-9, 8)[3]) < 1e-9);
  for (const double r : {0.2, 0.5, 0.9}) {
    const int n = 128;
    const auto pts = level_curve(m, r, n);
    for (int k = 0; k < n; ++k) {
      const Complex image = m.f0_at(pts[k]);
      const Complex rotated = m.psi_at(m.lambda0() * m.xi_at(r, static_cast<double>(k) / n));
      CHECK(std::abs(image - rotated) <= m.tol_conj());
      CHECK(radial_coordinate(m, image) == doctest::Approx(r).epsilon(1e-8));
    }
  }
}

TEST_CASE("phi inverts psi") {
  const auto& m = fx::quadratic_model();
  CHECK(phi_invert(m, 0.0) == Complex{});
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Complex xi = fx::random_in_disk(rng, 0.8 * m.rho_w());
    CHECK(std::abs(phi_invert(m, m.psi_at(xi)) - xi) <= 1e-10);
  }
  CHECK_THROWS_AS(phi_invert(m, Complex{2.0, 0.0}), Error);
}

TEST_CASE("distortion bounds for the normalized conjugacy") {
  const auto& m = fx::quadratic_model();
  CHECK(H_eval(m, 0.0) == Complex{1.0});
  std::mt19937_64 rng(3);
  for (const double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (int k = 0; k < 256; ++k) {
      const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const Complex xi = m.xi_at(rho, t);
      const Jet j = m.psi_jet(xi);
      // Goluzin
      const double gol = std::abs(std::log(xi * j.d1 / j.value));
      CHECK(gol <= std::log((1 + rho) / (1 - rho)));
      // Koebe
      const double koebe = std::abs(xi * j.d2 / j.d1 - 2 * rho * rho / (1 - rho * rho));
      CHECK(koebe <= 4 * rho / (1 - rho * rho));
    }
  }
}

TEST_CASE("integral means") {
  const std::vector<double> rs{0.5, 0.7, 0.8, 0.9, 0.95};
  const auto lin = integral_means(fx::linear_model(), 1.0, rs);
  for (const double v : lin.values) CHECK(v == doctest::Approx(2 * std::numbers::pi).epsilon(1e-13));
  CHECK(std::abs(lin.beta_fit) < 1e-12);
  const auto& m = fx::quadratic_model();
  for (const double v : integral_means(m, 0.0, rs).values) CHECK(v == doctest::Approx(2 * std::numbers::pi).epsilon(1e-14));
  CHECK(integral_means(m, 1.0, rs).beta_fit <= 0.46 + 0.1);
  CHECK(integral_means(m, -1.0, rs).beta_fit <= 0.403 + 0.1);
}

TEST_CASE("Koenigs function at an attracting point") {
  const auto& fam = fx::quadratic();
  const Complex l = 0.9 * fx::golden().multiplier();
  CHECK(koenigs_attracting(fam, l, 0.0) == Complex{});
  CHECK(std::abs(koenigs_attracting(fx::linear(), l, Complex{0.7, -0.4}) - Complex{0.7, -0.4}) < 1e-15);
  CHECK_THROWS_AS(koenigs_attracting(fam, fx::golden().multiplier(), 0.1), Error);

  const auto& m = fx::quadratic_model();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Complex z = m.psi_at(fx::random_in_disk(rng, 0.5 * m.rho_w()));
    const Complex residual = koenigs_attracting(fam, l, fam.eval(l, z)) - l * koenigs_attracting(fam, l, z);
    CHECK(std::abs(residual) <= 1e-8);
  }
}
