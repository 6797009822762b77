#pragma once

#include <complex>
#include <span>
#include <vector>

namespace siegel {

using Complex = std::complex<double>;

// Value and first two derivatives at a point.
struct Jet {
  Complex value;
  Complex d1;
  Complex d2;
};

// Simultaneous Horner evaluation of sum c_k z^k and its first two derivatives.
Jet horner_jet(std::span<const Complex> coeffs, Complex z);
Complex horner(std::span<const Complex> coeffs, Complex z);

/// Complex power series c_0 + c_1 z + ... + c_M z^M truncated at order M.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order);
  explicit TruncatedSeries(std::vector<Complex> coeffs);

  static TruncatedSeries identity(int order);
  static TruncatedSeries constant(Complex c, int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  const Complex& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }

  // Coefficient k, or zero past the truncation order.
  Complex at(int k) const noexcept;

  TruncatedSeries truncated(int order) const;
  TruncatedSeries derivative() const;
  bool finite() const noexcept;

  Complex operator()(Complex z) const { return horner(coeffs_, z); }

 private:
  std::vector<Complex> coeffs_;
};

// Sum keeps the larger order; the product is truncated at the smaller order.
TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(Complex s, const TruncatedSeries& a);

// outer(inner(z)) through the order of the result; requires inner[0] = 0.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// Compositional inverse t with s(t(z)) = z + O(z^{M+1}); requires s[0] = 0, s[1] != 0.
TruncatedSeries reverse(const TruncatedSeries& s);

// (s(xi), s'(xi), s''(xi)); derivatives above order k are left at zero.
Jet eval_derivs(const TruncatedSeries& s, Complex xi, int k = 2);

// max_k |a_k - b_k| over the common range, zero-padded.
double max_coeff_gap(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace siegel
