#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "siegel/certificate.hpp"
#include "siegel/error.hpp"

using namespace siegel;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("G at the origin and for the linear map") {
  const Complex l0 = fx::golden().multiplier();
  CHECK(std::abs(G_eval(fx::quadratic_model(), fx::quadratic(), 0.0) - 1.0 / l0) < 1e-15);
  for (const double t : {0.0, 0.3, 0.7}) {
    const Complex xi = fx::linear_model().xi_at(0.5, t);
    CHECK(std::abs(G_eval(fx::linear_model(), fx::linear(), xi) - 1.0 / l0) < 1e-15);
    CHECK(std::abs(J_eval(fx::linear_model(), fx::linear(), 0.5, t)) < 1e-15);
    CHECK(std::abs(J_eval(fx::quadratic_model(), fx::flat(), 0.5, t)) < 1e-15);
  }
}

TEST_CASE("circle mean of G is the residue 1/lambda0") {
  const auto& m = fx::quadratic_model();
  const Complex l0 = m.lambda0();
  for (const double r0 : {0.3, 0.5, 0.8}) {
    const int n = 1 << 10;
    Complex sum{};
    for (int k = 0; k < n; ++k) sum += G_eval(m, fx::quadratic(), m.xi_at(r0, static_cast<double>(k) / n));
    CHECK(std::abs(sum / static_cast<double>(n) - 1.0 / l0) < 1e-8);
  }
}

TEST_CASE("J is the angular derivative of G") {
  const auto& m = fx::quadratic_model();
  const double r0 = 0.5, h = 1e-6;
  for (int k = 0; k < 32; ++k) {
    const double t = (k + 0.25) / 32.0;
    const Complex dG = (G_eval(m, fx::quadratic(), m.xi_at(r0, t + h)) -
                        G_eval(m, fx::quadratic(), m.xi_at(r0, t - h))) / (2 * h);
    const Complex J = J_eval(m, fx::quadratic(), r0, t);
    CHECK(std::abs(dG / Complex{0, 2 * kPi} - J) <= 1e-5 * std::abs(J));
  }
}

TEST_CASE("L and aN degenerate cases") {
  const auto& rot = fx::golden();
  const auto flat = compute_aN(fx::quadratic_model(), fx::flat(), rot, 0.5, 5);
  CHECK(flat.L.value == 0.0);
  CHECK(flat.aN == 0.0);
  CHECK(compute_aN(fx::linear_model(), fx::linear(), rot, 0.5, 5).aN == 0.0);
}

TEST_CASE("aN shrinks along convergent denominators") {
  const auto& rot = fx::golden();
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 10; ++n) {
    const auto a = compute_aN(fx::quadratic_model(), fx::quadratic(), rot, 0.5, rot.q(n));
    CHECK(a.aN <= prev);
    prev = a.aN;
  }
}

TEST_CASE("k_pi and radius pairs") {
  CHECK(k_pi(1.0) == 0.25);
  const auto p = tau_radii(0.5, 4, 0.2);
  CHECK(p.lower == doctest::Approx(0.5 * std::exp(0.15)));
  CHECK(p.upper == doctest::Approx(0.5 * std::exp(0.2)));
  const auto& m = fx::quadratic_model();
  const double e4 = epsilon_N_tau(m, fx::quadratic(), 0.5, 4, 0.2);
  const double e1000 = epsilon_N_tau(m, fx::quadratic(), 0.5, 1000, 0.2);
  CHECK(e4 > 0.0);
  CHECK(e1000 < e4 * 0.01);
  CHECK_THROWS_AS(epsilon_N_tau(m, fx::quadratic(), 0.5, 4, 0.8), Error);
}

TEST_CASE("linear pair epsilon closed form matches bisection") {
  const auto& m = fx::quadratic_model();
  const Complex l0 = m.lambda0();
  const auto pair = AnalyticFamily::linear_pair({0.0, l0, 1.0}, {0.0, 0.5 * l0, 1.0});
  const auto scaled = AnalyticFamily::custom({{}, {0.0, 1.0}, {1.0}}, l0);
  for (const double tau : {0.1, 0.3, 0.6}) {
    const auto radii = tau_radii(0.5, 5, tau);
    const double s = 1.0 - k_pi(radii.lower) / k_pi(radii.upper);
    const double closed = epsilon_N_tau(m, pair, 0.5, 5, tau);
    CHECK(closed == doctest::Approx(omega_inverse(pair, m, radii.lower, s)).epsilon(1e-6));
    CHECK(closed == doctest::Approx(epsilon_N_tau(m, scaled, 0.5, 5, tau)).epsilon(1e-6));
  }
}

TEST_CASE("Lambda") {
  for (const double th : {0.2, 0.7, 1.2}) {
    const double b = 1e-6;
    CHECK(Lambda_of(b, th) == doctest::Approx(b * std::cos(th)).epsilon(1e-6));
  }
  CHECK(Lambda_of(1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 1; i < 40; ++i) {
    const double th = i * (kPi / 2) / 40;
    double prev = 0.0;
    for (int j = 1; j <= 100; ++j) {
      const double L = Lambda_of(j / 100.0, th);
      CHECK(L > 0.0);
      CHECK(L <= 1.0);
      CHECK(L > prev);
      prev = L;
    }
  }
  const auto es = epsilon_star(0.01, 3, 0.2, 0.3, 0.9);
  CHECK(es.b == doctest::Approx(kPi * 0.01 * 3 * 0.7 / 0.8));
  CHECK(es.b1 == es.b);
  CHECK(es.eps_star == 0.01 * Lambda_of(es.b1, 0.9));
  CHECK(epsilon_star(1.0, 1000, 0.1, 0.0, 0.9).b1 == 1.0);
}

TEST_CASE("sector radius identity") {
  CHECK(sector_radius(1.0, 0.4) == 1.0);
  CHECK(sector_radius(1e-8, 0.4) == doctest::Approx(1e-8 * std::cos(0.4)).epsilon(1e-6));
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ut(0.01, 0.99), uth(0.0, kPi / 2 - 0.01);
  for (int k = 0; k < 100; ++k) {
    const double t = ut(rng), th = uth(rng);
    const double r = sector_radius(t, th);
    CHECK(std::abs(std::cos(th) - r * (1 - t * t) / (t * (1 - r * r))) <= 1e-12);
  }
}

TEST_CASE("certify rejects invalid input") {
  const auto& m = fx::quadratic_model();
  const auto& rot = fx::golden();
  CHECK_THROWS_WITH(certify(m, fx::quadratic(), rot, 1.5, kPi / 4), "r0 must lie in (0,1)");
  CHECK_THROWS_AS(certify(m, fx::quadratic(), rot, 0.5, kPi / 2), Error);
  CHECK_THROWS_AS(certify(m, fx::quadratic(), rot, 0.5, kPi / 4, CertifyMode::manual(5, 0.0)), Error);
  CHECK_THROWS_AS(certify(m, fx::quadratic(), rot, 0.5, kPi / 4, CertifyMode::manual(5, 0.7)), Error);
}

TEST_CASE("flat perturbation direction") {
  const auto cert = certify(fx::quadratic_model(), fx::flat(), fx::golden(), 0.5, kPi / 4,
                            CertifyMode::manual(5, 0.3));
  CHECK(cert.aN == 0.0);
  CHECK(cert.valid);
  const auto es = epsilon_star(cert.epsN, 5, 0.3, 0.0, cert.vartheta);
  CHECK(cert.eps_star == es.eps_star);
  CHECK(cert.eps_star > 0.0);
}

TEST_CASE("certificates are deterministic and consistent") {
  const auto& m = fx::quadratic_model();
  const auto a = certify(m, fx::quadratic(), fx::golden(), 0.5, kPi / 4);
  const auto b = certify(m, fx::quadratic(), fx::golden(), 0.5, kPi / 4);
  CHECK(a.eps_star == b.eps_star);
  CHECK(a.L.value == b.L.value);
  REQUIRE(a.valid);
  CHECK(a.tau > 0.0);
  CHECK(a.tau < -std::log(a.r0));
  CHECK(a.aN < std::sin(kPi / 2 - a.Theta));
  CHECK(a.N == fx::golden().q(a.n0));
  CHECK(a.b1 <= 1.0);
  CHECK(a.eps_star == a.epsN * a.Lambda);
}

TEST_CASE("orbit sum of G matches the parameter derivative of log phi") {
  const auto& lin = fx::linear_model();
  const auto d = diagnose_AN(lin, fx::linear(), Complex{0.3, 0.1}, 7, 1e-6);
  CHECK(std::abs(d.sum_G - 7.0 / lin.lambda0()) < 1e-14);
  const auto zero = diagnose_AN(fx::quadratic_model(), fx::quadratic(), Complex{0.05, 0.0}, 0, 1e-6);
  CHECK(zero.sum_G == Complex{});
  CHECK(zero.fd_estimate == Complex{});
  const auto& m = fx::quadratic_model();
  const auto q = diagnose_AN(m, fx::quadratic(), level_curve(m, 0.5, 8)[3], 5, 1e-6);
  CHECK(q.gap <= 1e-4);
}
