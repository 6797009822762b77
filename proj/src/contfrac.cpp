#include "siegel/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>

#include "siegel/error.hpp"

namespace siegel {

namespace {

using i128 = __int128;

constexpr std::int64_t kConvergentLimit = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t isqrt(std::int64_t n) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

std::int64_t floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

std::int64_t checked(i128 v) {
  if (v > kConvergentLimit || v < -kConvergentLimit)
    throw Error(ErrorKind::ConvergentOverflow, "convergent exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

// Quadratic irrational in reduced form (P + sqrt(D)) / Q with Q | (D - P^2).
struct SurdState {
  std::int64_t P, D, Q;
};

SurdState normalize(const QuadraticSurd& s) {
  require(s.r != 0, "surd denominator r must be nonzero");
  require(s.d > 0, "surd radicand d must be positive");
  const std::int64_t root = isqrt(s.d);
  if (s.q == 0 || root * root == s.d)
    throw Error(ErrorKind::RationalRotation, "surd is rational (q = 0 or d a perfect square)");
  const std::int64_t sign = s.q > 0 ? 1 : -1;
  i128 P = sign * s.p;
  i128 Q = sign * s.r;
  i128 D = static_cast<i128>(s.q) * s.q * s.d;
  if ((D - P * P) % Q != 0) {
    const i128 aq = Q < 0 ? -Q : Q;
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }
  return {checked(P), checked(D), checked(Q)};
}

long double surd_value(const QuadraticSurd& s) {
  return (static_cast<long double>(s.p) +
          static_cast<long double>(s.q) * std::sqrt(static_cast<long double>(s.d))) /
         static_cast<long double>(s.r);
}

// Sign of (p + q sqrt(d))/r - a/b for b > 0, exactly. Empty when the integers
// involved are too large for 128-bit squares.
std::optional<int> compare_surd(const QuadraticSurd& s, i128 a, i128 b) {
  const i128 limit = static_cast<i128>(1) << 50;
  if (a > limit || a < -limit || b > limit) return std::nullopt;
  const i128 X = static_cast<i128>(s.p) * b - a * s.r;
  const i128 Y = static_cast<i128>(s.q) * b;
  int sign;
  if (X >= 0 && Y >= 0) {
    sign = (X == 0 && Y == 0) ? 0 : 1;
  } else if (X <= 0 && Y <= 0) {
    sign = -1;
  } else {
    const i128 x2 = X * X;
    const i128 y2d = Y * Y * s.d;
    if (x2 == y2d) sign = 0;
    else if (X > 0) sign = x2 > y2d ? 1 : -1;
    else sign = y2d > x2 ? 1 : -1;
  }
  return s.r > 0 ? sign : -sign;
}

std::string normalize_text(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    // U+2212 MINUS SIGN
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else if (!std::isspace(c)) {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
  }
}

}  // namespace

const Convergent& RotationNumber::convergent(int n) const {
  require(n >= 1 && n <= size(), "convergent index out of range");
  return convergents[static_cast<std::size_t>(n - 1)];
}

std::complex<double> RotationNumber::multiplier() const {
  const long double angle = 2.0L * std::numbers::pi_v<long double> * alpha;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

QuadraticSurd parse_surd(std::string_view text) {
  const std::string s = normalize_text(text);
  static const std::regex pattern(
      R"(^\(([+-]?\d+)([+-]\d*)\*?sqrt\((\d+)\)\)/([+-]?\d+)$)");
  std::smatch m;
  if (!std::regex_match(s, m, pattern))
    throw Error(ErrorKind::ParseError, "expected surd of the form (p+q*sqrt(d))/r, got '" +
                                           std::string(text) + "'");
  QuadraticSurd out;
  out.p = parse_int(m[1].str());
  std::string qs = m[2].str();
  if (qs == "+" || qs == "-") qs += "1";
  out.q = parse_int(qs);
  out.d = parse_int(m[3].str());
  out.r = parse_int(m[4].str());
  return out;
}

QuotientList parse_quotients(std::string_view text) {
  const std::string s = normalize_text(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(ErrorKind::ParseError, "expected quotient list [a1,a2,...]");
  QuotientList out;
  std::stringstream body(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) {
    const std::int64_t a = parse_int(item);
    if (a < 1) throw Error(ErrorKind::ParseError, "partial quotients must be positive");
    out.quotients.push_back(a);
  }
  if (out.quotients.empty()) throw Error(ErrorKind::ParseError, "empty quotient list");
  return out;
}

RotationSource parse_rotation(std::string_view text) {
  const std::string s = normalize_text(text);
  if (!s.empty() && s.front() == '[') return parse_quotients(s);
  return parse_surd(s);
}

std::string describe(const RotationSource& source) {
  std::ostringstream os;
  if (const auto* s = std::get_if<QuadraticSurd>(&source)) {
    os << "(" << s->p << (s->q >= 0 ? "+" : "") << s->q << "*sqrt(" << s->d << "))/" << s->r;
  } else {
    const auto& list = std::get<QuotientList>(source).quotients;
    os << "[";
    for (std::size_t i = 0; i < list.size(); ++i) os << (i ? "," : "") << list[i];
    os << "]";
  }
  return os.str();
}

RotationNumber cf_expand(const RotationSource& source, int K) {
  require(K >= 2, "need at least two partial quotients");
  RotationNumber rot;
  rot.source = source;

  if (const auto* surd = std::get_if<QuadraticSurd>(&source)) {
    SurdState st = normalize(*surd);
    const long double value = surd_value(*surd);
    require(value > 0.0L && value < 1.0L, "rotation number must lie in (0,1)");
    const std::int64_t root = isqrt(st.D);
    // Skip a_0 = 0, then collect a_1..a_K.
    for (int i = 0; i <= K; ++i) {
      const std::int64_t a =
          st.Q > 0 ? floor_div(static_cast<i128>(st.P) + root, st.Q)
                   : floor_div(static_cast<i128>(st.P) + root + 1, st.Q);
      if (i > 0) rot.partial_quotients.push_back(a);
      const i128 P_next = static_cast<i128>(a) * st.Q - st.P;
      const i128 num = static_cast<i128>(st.D) - P_next * P_next;
      st.P = checked(P_next);
      st.Q = checked(num / st.Q);
      if (st.Q == 0) throw Error(ErrorKind::RationalRotation, "expansion terminated");
    }
    rot.alpha = value;
  } else {
    const auto& list = std::get<QuotientList>(source).quotients;
    require(static_cast<int>(list.size()) >= K, "quotient list shorter than K");
    for (int i = 0; i < K; ++i) {
      require(list[static_cast<std::size_t>(i)] >= 1, "partial quotients must be positive");
      rot.partial_quotients.push_back(list[static_cast<std::size_t>(i)]);
    }
  }

  std::int64_t p_prev2 = 1, q_prev2 = 0;  // n = -1
  std::int64_t p_prev = 0, q_prev = 1;    // n = 0
  for (const std::int64_t a : rot.partial_quotients) {
    const std::int64_t p = checked(static_cast<i128>(a) * p_prev + p_prev2);
    const std::int64_t q = checked(static_cast<i128>(a) * q_prev + q_prev2);
    rot.convergents.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }

  if (std::holds_alternative<QuotientList>(source)) {
    // [0; a_1..a_K, 1, 1, ...] = (p_K g + p_{K-1}) / (q_K g + q_{K-1}), g the golden ratio.
    const long double g = (1.0L + std::sqrt(5.0L)) / 2.0L;
    rot.alpha = (static_cast<long double>(p_prev) * g + static_cast<long double>(p_prev2)) /
                (static_cast<long double>(q_prev) * g + static_cast<long double>(q_prev2));
  }
  rot.alpha_f64 = static_cast<double>(rot.alpha);
  return rot;
}

RotationNumber golden_rotation(int K) { return cf_expand(QuadraticSurd{-1, 1, 5, 2}, K); }

InvariantReport check_invariants(const RotationNumber& rot) {
  InvariantReport report;
  auto fail = [&](bool& flag, int n) {
    flag = false;
    if (report.first_failure == 0) report.first_failure = n;
  };
  const int K = rot.size();
  const auto* surd = std::get_if<QuadraticSurd>(&rot.source);
  for (int n = 1; n <= K; ++n) {
    const auto& c = rot.convergent(n);
    if (std::gcd(c.p, c.q) != 1) fail(report.coprime, n);
    if (n == 1 && c.q < 1) fail(report.monotone, n);
    if (n >= 2) {
      const auto& prev = rot.convergent(n - 1);
      if (c.q <= prev.q) fail(report.monotone, n);
      const i128 det = static_cast<i128>(c.p) * prev.q - static_cast<i128>(prev.p) * c.q;
      if (det != ((n % 2 == 0) ? -1 : 1)) fail(report.determinant, n);
    }
    if (n < K) {
      const auto& next = rot.convergent(n + 1);
      // alpha strictly inside (p_n q_{n+1} -+ 1) / (q_n q_{n+1}).
      const i128 den = static_cast<i128>(c.q) * next.q;
      const i128 lo = static_cast<i128>(c.p) * next.q - 1;
      const i128 hi = lo + 2;
      bool holds;
      std::optional<int> s_lo, s_hi;
      if (surd != nullptr) {
        s_lo = compare_surd(*surd, lo, den);
        s_hi = compare_surd(*surd, hi, den);
      }
      if (s_lo && s_hi) {
        holds = *s_lo > 0 && *s_hi < 0;
      } else {
        const long double gap =
            std::fabs(rot.alpha - static_cast<long double>(c.p) / static_cast<long double>(c.q));
        holds = gap < 1.0L / (static_cast<long double>(c.q) * static_cast<long double>(next.q));
      }
      if (!holds) fail(report.approximation, n);
    }
  }
  return report;
}

double harmonic_mean(std::int64_t a, std::int64_t b) {
  return 2.0 * static_cast<double>(a) * static_cast<double>(b) / static_cast<double>(a + b);
}

IndexChoice ell_of_x(const RotationNumber& rot, double x) {
  double best = 0.0;
  for (int n = 1; n < rot.size(); ++n) {
    const long double qn = static_cast<long double>(rot.q(n));
    const long double qn1 = static_cast<long double>(rot.q(n + 1));
    if (2.0L * qn * qn1 >= static_cast<long double>(x) * (qn + qn1)) return {n, rot.q(n)};
    best = std::max(best, harmonic_mean(rot.q(n), rot.q(n + 1)));
  }
  throw NeedMoreQuotientsError(x, best);
}

std::vector<double> kronecker_points(const RotationNumber& rot, double beta, int N) {
  require(N >= 1, "N must be >= 1");
  std::vector<double> points(static_cast<std::size_t>(N));
  const long double b = static_cast<long double>(beta) - std::floor(static_cast<long double>(beta));
  for (int n = 0; n < N; ++n) {
    long double t = rot.alpha * n;
    t -= std::floor(t);
    t += b;
    t -= std::floor(t);
    points[static_cast<std::size_t>(n)] = static_cast<double>(t);
  }
  return points;
}

double star_discrepancy_exact(std::span<const double> points) {
  require(!points.empty(), "discrepancy needs at least one point");
  std::vector<double> y(points.begin(), points.end());
  std::sort(y.begin(), y.end());
  const double N = static_cast<double>(y.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    // F(y_i) = i/N at the jump point, F(y_i+) = (i+1)/N just after it.
    const double at = y[i] - static_cast<double>(i) / N;
    const double after = static_cast<double>(i + 1) / N - y[i];
    sup = std::max({sup, std::fabs(at), std::fabs(after)});
  }
  return std::min(sup, 1.0);
}

std::optional<int> convergent_index_of(const RotationNumber& rot, std::int64_t N) {
  for (int n = 1; n < rot.size(); ++n)
    if (rot.q(n) == N) return n;
  return std::nullopt;
}

double proposition_beta(const RotationNumber& rot, int n) {
  require(n >= 1 && n < rot.size(), "proposition_beta needs q_{n+1}");
  const long double q = static_cast<long double>(rot.q(n));
  const long double q_next = static_cast<long double>(rot.q(n + 1));
  const long double delta = rot.alpha - static_cast<long double>(rot.p(n)) / q;
  const long double gamma = (q * std::fabs(delta) + 1.0L / q_next) / 2.0L;
  // sign(delta) = (-1)^n under 1-based indexing.
  const long double sign = delta > 0 ? 1.0L : -1.0L;
  return static_cast<double>((1.0L / q - sign * gamma) / 2.0L);
}

DiscrepancyReport star_discrepancy(const RotationNumber& rot, double beta, int N) {
  require(N >= 1, "N must be >= 1");
  DiscrepancyReport report;
  report.beta = beta;
  report.N = N;
  const auto points = kronecker_points(rot, beta, N);
  report.q_exact = star_discrepancy_exact(points);
  if (const auto n = convergent_index_of(rot, N)) {
    report.bound_prop = (1.0 / static_cast<double>(rot.q(*n)) +
                         1.0 / static_cast<double>(rot.q(*n + 1))) / 2.0;
  }
  return report;
}

QnBound qn_upper_detail(const RotationNumber& rot, int N, int grid) {
  require(N >= 1 && grid >= 1, "QN_upper needs N >= 1 and grid >= 1");
  QnBound best{std::numeric_limits<double>::infinity(), 0.0};
  auto consider = [&](double beta) {
    const double q = star_discrepancy_exact(kronecker_points(rot, beta, N));
    if (q < best.value) best = {q, beta};
  };
  if (const auto n = convergent_index_of(rot, N)) consider(proposition_beta(rot, *n));
  for (int j = 0; j < grid; ++j) consider(static_cast<double>(j) / grid);
  return best;
}

double QN_upper(const RotationNumber& rot, int N, int grid) {
  return qn_upper_detail(rot, N, grid).value;
}

KoksmaGap koksma_gap(std::span<const double> nodes, const std::function<double(double)>& phi,
                     double integral, double variation) {
  require(!nodes.empty(), "koksma_gap needs at least one node");
  double sum = 0.0;
  for (const double x : nodes) sum += phi(x);
  const double mean = sum / static_cast<double>(nodes.size());
  return {std::fabs(integral - mean), star_discrepancy_exact(nodes) * variation};
}

}  // namespace siegel
