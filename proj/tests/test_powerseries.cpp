#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "siegel/powerseries.hpp"

using namespace siegel;

namespace {

TruncatedSeries series(std::vector<Complex> c) { return TruncatedSeries(std::move(c)); }

void check_equal(const TruncatedSeries& a, const TruncatedSeries& b, double tol = 1e-15) {
  CHECK(max_coeff_gap(a, b) <= tol);
}

TruncatedSeries random_series(std::mt19937_64& rng, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TruncatedSeries s(order);
  s[1] = std::polar(0.5 + 0.5 * (u(rng) + 1.0) / 2.0, 3.0 * u(rng));
  for (int k = 2; k <= order; ++k) s[k] = Complex{u(rng), u(rng)} / static_cast<double>(k * k);
  return s;
}

}  // namespace

TEST_CASE("ring operations") {
  check_equal(series({1, 1}) + series({1, -1}), series({2, 0}));
  check_equal(series({1, 1, 0}) * series({1, -1, 0}), series({1, 0, -1}));
  check_equal(Complex{0, 1} * series({0, 1, 1}), series({0, Complex{0, 1}, Complex{0, 1}}));
}

TEST_CASE("composition") {
  check_equal(compose(series({0, 0, 1, 0, 0}), series({0, 1, 1, 0, 0})), series({0, 0, 1, 2, 1}));
  const auto inner = series({0, 2, 0.5, -1});
  check_equal(compose(TruncatedSeries::identity(3), inner), inner);
  check_equal(compose(series({1, 1, 1}), series({0, 2, 0})), series({1, 2, 4}));
  CHECK_THROWS(compose(series({1, 1}), series({1, 1})));
}

TEST_CASE("reversion") {
  check_equal(reverse(TruncatedSeries::identity(6)), TruncatedSeries::identity(6));
  check_equal(reverse(series({0, 1, 1, 0})), series({0, 1, -1, 2}));
  std::mt19937_64 rng(20240517);
  for (const int order : {8, 24}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = random_series(rng, order);
      const auto r = reverse(s);
      // Reverted coefficients grow like |c_1|^{-k}, so the residual is measured
      // against their scale.
      double scale = 1.0;
      for (const Complex c : r.coeffs()) scale = std::max(scale, std::abs(c));
      CHECK(max_coeff_gap(compose(s, r), TruncatedSeries::identity(order)) <= 1e-12 * scale);
      CHECK(max_coeff_gap(compose(r, s), TruncatedSeries::identity(order)) <= 1e-12 * scale);
    }
  }
  CHECK_THROWS(reverse(series({0, 0, 1})));
}

TEST_CASE("derivative evaluation") {
  const auto sq = series({0, 0, 1});
  const Jet j = eval_derivs(sq, 3.0);
  CHECK(j.value == Complex{9, 0});
  CHECK(j.d1 == Complex{6, 0});
  CHECK(j.d2 == Complex{2, 0});
  const Jet id = eval_derivs(TruncatedSeries::identity(4), Complex{0.3, -0.2});
  CHECK(id.value == Complex{0.3, -0.2});
  CHECK(id.d1 == Complex{1, 0});
  CHECK(id.d2 == Complex{0, 0});

  std::mt19937_64 rng(7);
  const auto s = random_series(rng, 16);
  const double h = 1e-5;
  for (int k = 0; k < 20; ++k) {
    const Complex xi = fx::random_in_disk(rng, 0.8);
    const Jet jet = eval_derivs(s, xi);
    const Complex fd = (s(xi + h) - s(xi - h)) / (2 * h);
    CHECK(std::abs(fd - jet.d1) <= 1e-6 * std::abs(jet.d1));
    const Complex fd2 = (eval_derivs(s, xi + h).d1 - eval_derivs(s, xi - h).d1) / (2 * h);
    CHECK(std::abs(fd2 - jet.d2) <= 1e-6 * std::max(1.0, std::abs(jet.d2)));
  }
}
