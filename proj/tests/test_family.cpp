#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "siegel/error.hpp"
#include "siegel/family.hpp"

using namespace siegel;

TEST_CASE("multiplier-scaled evaluation and perturbation direction") {
  const auto& fam = fx::quadratic();
  const Complex l{0.3, 0.4}, z{0.2, -0.7};
  CHECK(std::abs(fam.eval(l, z) - (l * z + z * z)) < 1e-16);
  CHECK(fam.eval(l, 0.0) == Complex{});
  CHECK(fam.u(z) == z);
  CHECK(fam.u(0.0) == Complex{});
  CHECK(fam.u_dz(0.0) == Complex{1.0});
}

TEST_CASE("linear pair") {
  const Complex l0 = fx::golden().multiplier();
  const std::vector<Complex> f0{0.0, l0, 1.0, 0.5};
  SUBCASE("identical members give a constant family") {
    const auto fam = AnalyticFamily::linear_pair(f0, f0);
    for (const Complex l : {Complex{0.1, 0.2}, Complex{0.9, 0.0}, l0}) {
      CHECK(fam.eval(l, Complex{0.3, 0.1}) == horner(f0, Complex{0.3, 0.1}));
    }
  }
  SUBCASE("shifted multiplier has u = z") {
    const Complex l1 = 0.8 * l0;
    std::vector<Complex> f1 = f0;
    f1[1] = l1;
    const auto fam = AnalyticFamily::linear_pair(f0, f1);
    CHECK(fam.affine_in_lambda());
    for (const Complex z : {Complex{0.3, 0.1}, Complex{-0.5, 0.2}}) {
      CHECK(std::abs(fam.u(z) - z) < 1e-15);
      CHECK(std::abs(fam.eval(l1, z) - horner(f1, z)) < 1e-15);
    }
    CHECK(std::abs(fam.u_dz(0.0) - 1.0) < 1e-15);
  }
  SUBCASE("equal multipliers with distinct members have no perturbation direction") {
    std::vector<Complex> f1 = f0;
    f1[2] = 2.0;
    const auto fam = AnalyticFamily::linear_pair(f0, f1);
    try {
      (void)fam.u_coefficients();
      FAIL("expected DegeneratePerturbation");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegeneratePerturbation);
    }
  }
}

TEST_CASE("custom family with a flat perturbation direction") {
  const auto& fam = fx::flat();
  for (const Complex z : {Complex{0.1, 0.2}, Complex{-0.4, 0.3}}) CHECK(std::abs(fam.u(z)) < 1e-15);
  CHECK(std::abs(fam.coefficients(fam.lambda0())[1] - fam.lambda0()) < 1e-15);
}

TEST_CASE("z derivative against finite differences") {
  const Complex l0 = fx::golden().multiplier();
  const auto fam = AnalyticFamily::multiplier_scaled({1.0, Complex{0.3, -0.2}, 0.1}, l0);
  std::mt19937_64 rng(99);
  const double h = 1e-6;
  for (int k = 0; k < 50; ++k) {
    const Complex z = fx::random_in_disk(rng, 1.0);
    const Complex l = fx::random_in_disk(rng, 1.0);
    const Complex fd = (fam.eval(l, z + h) - fam.eval(l, z - h)) / (2 * h);
    const Complex d = fam.eval_dz(l, z);
    CHECK(std::abs(fd - d) <= 1e-7 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("domain radius is enforced") {
  const auto fam = AnalyticFamily::multiplier_scaled({1.0}, fx::golden().multiplier(), 0.5);
  CHECK_THROWS_AS(fam.eval(0.5, Complex{0.6, 0.0}), Error);
}

TEST_CASE("modulus of continuity") {
  const auto& m = fx::quadratic_model();
  const auto& fam = fx::quadratic();
  CHECK(modulus_omega(fam, m, 0.6, 0.0) == 0.0);
  double prev = 0.0;
  for (int k = 1; k <= 12; ++k) {
    const double w = modulus_omega(fam, m, 0.6, 1e-4 * std::pow(2.0, k));
    CHECK(w >= prev);
    prev = w;
  }
}

TEST_CASE("affine family: omega is linear in delta and inverts in closed form") {
  const auto& m = fx::quadratic_model();
  const auto& fam = fx::quadratic();
  REQUIRE(fam.affine_in_lambda());
  const double r = 0.6;
  const double slope = affine_omega_slope(fam, m, r);
  for (const double d : {1e-4, 1e-3, 1e-2}) {
    CHECK(modulus_omega(fam, m, r, d) == doctest::Approx(d * slope).epsilon(1e-10));
  }
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(1e-4, 0.2);
  for (int k = 0; k < 20; ++k) {
    const double s = u(rng);
    const double d = omega_inverse(fam, m, r, s);
    const double w = modulus_omega(fam, m, r, d);
    CHECK(w <= s);
    CHECK(w >= 0.9 * s);
    CHECK(d == doctest::Approx(s / slope).epsilon(1e-6));
  }
}

TEST_CASE("omega_inverse saturates at the parameter radius") {
  const auto& m = fx::quadratic_model();
  const Complex l0 = fx::golden().multiplier();
  const auto fam = AnalyticFamily::custom({{}, {0.0, 1.0}, {1.0}}, l0, AnalyticFamily::kInf, 0.01);
  CHECK(omega_inverse(fam, m, 0.5, 10.0) == 0.01);
}

TEST_CASE("Stolz sector sampling") {
  const Complex l0 = fx::golden().multiplier();
  const StolzAngle sector{l0, std::numbers::pi / 4, 0.1};
  const auto one = stolz_points(sector, 0.01, 1);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one[0] - l0 * 0.99) < 1e-16);
  for (const Complex l : stolz_points(sector, 0.01, 9)) {
    CHECK(sector.contains(l));
    CHECK(std::abs(l - l0) == doctest::Approx(0.01).epsilon(1e-12));
  }
  const StolzAngle thin{l0, 1e-9, 0.1};
  for (const Complex l : stolz_points(thin, 0.01, 5)) CHECK(std::abs(l - l0 * 0.99) < 1e-10);
}
