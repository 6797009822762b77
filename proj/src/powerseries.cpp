#include "siegel/powerseries.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

Jet horner_jet(std::span<const Complex> coeffs, Complex z) {
  Jet jet{};
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    jet.d2 = jet.d2 * z + 2.0 * jet.d1;
    jet.d1 = jet.d1 * z + jet.value;
    jet.value = jet.value * z + coeffs[i];
  }
  return jet;
}

Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex v{};
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
  return v;
}

TruncatedSeries::TruncatedSeries(int order) {
  require(order >= 1, "series order must be >= 1");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, Complex{});
}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) coeffs_.resize(2);
}

TruncatedSeries TruncatedSeries::identity(int order) {
  TruncatedSeries s(order);
  s[1] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::constant(Complex c, int order) {
  TruncatedSeries s(order);
  s[0] = c;
  return s;
}

Complex TruncatedSeries::at(int k) const noexcept {
  return (k >= 0 && k <= order()) ? coeffs_[static_cast<std::size_t>(k)] : Complex{};
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries out(order);
  for (int k = 0; k <= order; ++k) out[k] = at(k);
  return out;
}

TruncatedSeries TruncatedSeries::derivative() const {
  TruncatedSeries out(order());
  for (int k = 1; k <= order(); ++k) out[k - 1] = static_cast<double>(k) * (*this)[k];
  return out;
}

bool TruncatedSeries::finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out(std::max(a.order(), b.order()));
  for (int k = 0; k <= out.order(); ++k) out[k] = a.at(k) + b.at(k);
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a + (-1.0) * b;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int M = std::min(a.order(), b.order());
  TruncatedSeries out(M);
  for (int i = 0; i <= M; ++i) {
    if (a[i] == Complex{}) continue;
    for (int j = 0; i + j <= M; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncatedSeries operator*(Complex s, const TruncatedSeries& a) {
  TruncatedSeries out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = s * a[k];
  return out;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  if (inner[0] != Complex{})
    throw Error(ErrorKind::NonzeroConstantTerm, "composition needs inner series with c0 = 0");
  const int M = inner.order();
  TruncatedSeries acc = TruncatedSeries::constant(outer.at(outer.order()), M);
  for (int k = outer.order() - 1; k >= 0; --k) {
    acc = acc * inner;
    acc[0] += outer[k];
  }
  return acc;
}

TruncatedSeries reverse(const TruncatedSeries& s) {
  if (s[0] != Complex{})
    throw Error(ErrorKind::NonzeroConstantTerm, "reversion needs c0 = 0");
  if (std::abs(s[1]) == 0.0) throw Error(ErrorKind::NotInvertible, "reversion needs c1 != 0");
  const int M = s.order();
  const Complex inv1 = 1.0 / s[1];
  TruncatedSeries t(M);
  t[1] = inv1;
  // Coefficient m of s(t) is s_1 t_m + (terms in t_1..t_{m-1}); fix t_m order by order.
  for (int m = 2; m <= M; ++m) {
    const TruncatedSeries st = compose(s, t.truncated(m));
    t[m] = -st[m] * inv1;
  }
  return t;
}

Jet eval_derivs(const TruncatedSeries& s, Complex xi, int k) {
  require(k >= 0 && k <= 2, "eval_derivs supports k <= 2");
  Jet jet = horner_jet(s.coeffs(), xi);
  if (k < 2) jet.d2 = {};
  if (k < 1) jet.d1 = {};
  return jet;
}

double max_coeff_gap(const TruncatedSeries& a, const TruncatedSeries& b) {
  double gap = 0.0;
  for (int k = 0; k <= std::max(a.order(), b.order()); ++k)
    gap = std::max(gap, std::abs(a.at(k) - b.at(k)));
  return gap;
}

}  // namespace siegel
