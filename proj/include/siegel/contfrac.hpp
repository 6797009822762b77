#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace siegel {

// alpha = (p + q*sqrt(d)) / r with integer data.
struct QuadraticSurd {
  std::int64_t p = 0;
  std::int64_t q = 1;
  std::int64_t d = 5;
  std::int64_t r = 1;
};

// Explicit partial quotients a_1, a_2, ... of alpha = [0; a_1, a_2, ...].
struct QuotientList {
  std::vector<std::int64_t> quotients;
};

using RotationSource = std::variant<QuadraticSurd, QuotientList>;

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

/// Irrational rotation number alpha0 in (0,1) with its first K partial quotients
/// and convergents.
///
/// Indexing is 1-based: convergent(1) = p_1/q_1 = 1/a_1. With this convention
/// the sign of alpha0 - p_n/q_n is (-1)^n.
///
/// An explicit quotient list only fixes a prefix of the expansion. Its value is
/// taken as [0; a_1, ..., a_K, 1, 1, 1, ...], the unique completion by a golden
/// tail, so that every listed convergent is a genuine convergent of alpha0.
struct RotationNumber {
  RotationSource source;
  std::vector<std::int64_t> partial_quotients;  // a_1..a_K
  std::vector<Convergent> convergents;          // (p_n, q_n), n = 1..K
  long double alpha = 0.0L;
  double alpha_f64 = 0.0;

  int size() const noexcept { return static_cast<int>(convergents.size()); }
  const Convergent& convergent(int n) const;  // 1-based
  std::int64_t q(int n) const { return convergent(n).q; }
  std::int64_t p(int n) const { return convergent(n).p; }
  // lambda0 = exp(2 pi i alpha0).
  std::complex<double> multiplier() const;
};

QuadraticSurd parse_surd(std::string_view text);
QuotientList parse_quotients(std::string_view text);
// Accepts either "(p+q*sqrt(d))/r" or "[a1,a2,...]".
RotationSource parse_rotation(std::string_view text);
std::string describe(const RotationSource& source);

RotationNumber cf_expand(const RotationSource& source, int K);

RotationNumber golden_rotation(int K = 40);

struct InvariantReport {
  bool determinant = true;     // p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1}
  bool monotone = true;        // q_n strictly increasing for n >= 2, q_1 >= 1
  bool coprime = true;         // gcd(p_n, q_n) = 1
  bool approximation = true;   // |alpha - p_n/q_n| < 1/(q_n q_{n+1})
  int first_failure = 0;       // 0 when all hold

  bool ok() const noexcept { return determinant && monotone && coprime && approximation; }
};

InvariantReport check_invariants(const RotationNumber& rot);

double harmonic_mean(std::int64_t a, std::int64_t b);

struct IndexChoice {
  int n0 = 0;
  std::int64_t ell = 0;
};

// n0(x) = min{n : 2 q_n q_{n+1} / (q_n + q_{n+1}) >= x}, ell(x) = q_{n0(x)}.
IndexChoice ell_of_x(const RotationNumber& rot, double x);

// Points {alpha0 * n + beta}, n = 0..N-1.
std::vector<double> kronecker_points(const RotationNumber& rot, double beta, int N);

// sup_{x in [0,1]} |F(x) - x| for F(x) = #{x_n < x} / N, evaluated exactly over
// the jump points of F.
double star_discrepancy_exact(std::span<const double> points);

struct DiscrepancyReport {
  double beta = 0.0;
  int N = 0;
  double q_exact = 0.0;
  std::optional<double> bound_prop;  // (1/q_n + 1/q_{n+1}) / 2 when N = q_n
};

DiscrepancyReport star_discrepancy(const RotationNumber& rot, double beta, int N);

// Index n with q_n = N and q_{n+1} available, if any.
std::optional<int> convergent_index_of(const RotationNumber& rot, std::int64_t N);

// Offset beta0 = (1/q_n - (-1)^n gamma) / 2 with gamma chosen strictly inside
// (q_n |alpha0 - p_n/q_n|, 1/q_{n+1}). Requires n < K.
double proposition_beta(const RotationNumber& rot, int n);

struct QnBound {
  double value = 0.0;
  double beta = 0.0;
};

// Certified upper bound for Q_N = inf_beta Q_{beta,N}: the minimum of exact
// discrepancies over beta0 (when N = q_n) and a uniform grid of offsets.
QnBound qn_upper_detail(const RotationNumber& rot, int N, int grid);
double QN_upper(const RotationNumber& rot, int N, int grid);

struct KoksmaGap {
  double lhs = 0.0;  // |int phi - mean of phi over the nodes|
  double rhs = 0.0;  // Q(nodes) * variation
};

// `integral` and `variation` (= int_0^1 |phi'|) come from the caller's quadrature.
KoksmaGap koksma_gap(std::span<const double> nodes, const std::function<double(double)>& phi,
                     double integral, double variation);

}  // namespace siegel
