#include "siegel/siegel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siegel/error.hpp"

namespace siegel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double t) { return std::polar(1.0, kTwoPi * t); }

// Minimum |psi'| over a polar grid of the closed disk of radius rho.
double min_derivative(const TruncatedSeries& psi, double rho) {
  double lo = std::abs(horner_jet(psi.coeffs(), Complex{}).d1);
  for (int i = 1; i <= 64; ++i) {
    const double r = rho * i / 64.0;
    for (int j = 0; j < 64; ++j)
      lo = std::min(lo, std::abs(horner_jet(psi.coeffs(), r * unit(j / 64.0)).d1));
  }
  return lo;
}

// psi separates the points of a 64x64 Cartesian grid clipped to the disk.
bool separates_grid(const TruncatedSeries& psi, double rho) {
  std::vector<Complex> images;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const Complex xi{rho * (-1.0 + (2.0 * i + 1.0) / 64.0), rho * (-1.0 + (2.0 * j + 1.0) / 64.0)};
      if (std::abs(xi) < rho) images.push_back(horner(psi.coeffs(), xi));
    }
  }
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b)
      if (std::abs(images[a] - images[b]) <= 1e-12) return false;
  return true;
}

double max_modulus(const TruncatedSeries& psi, double radius, int samples) {
  double m = 0.0;
  for (int k = 0; k < samples; ++k)
    m = std::max(m, std::abs(horner(psi.coeffs(), radius * unit(static_cast<double>(k) / samples))));
  return m;
}

std::optional<Complex> newton(const SiegelModel& model, Complex xi, Complex target, double tol) {
  const double limit = 1.5 * model.rho_w();
  for (int it = 0; it < 50; ++it) {
    const Jet jet = model.psi_jet(xi);
    const Complex err = jet.value - target;
    if (std::abs(err) <= tol) return xi;
    if (std::abs(jet.d1) < 1e-300) return std::nullopt;
    xi -= err / jet.d1;
    if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()) || std::abs(xi) > limit)
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

SchroderSeries schroder_series(std::span<const Complex> f0, Complex lambda0, int order) {
  require(order >= 2, "Schroder series needs order >= 2");
  require(f0.size() >= 2 && f0[0] == Complex{}, "f0 must fix the origin");
  require(std::abs(f0[1] - lambda0) <= 1e-12, "f0'(0) must equal lambda0");
  const int d = static_cast<int>(f0.size()) - 1;
  const auto M = static_cast<std::size_t>(order);

  SchroderSeries out{TruncatedSeries(order)};
  auto& c = out.psi;
  c[1] = 1.0;
  // powers[k][m] = coefficient of xi^m in psi^k; only k >= 2 is stored explicitly.
  std::vector<std::vector<Complex>> powers(static_cast<std::size_t>(std::max(d, 1)) + 1,
                                           std::vector<Complex>(M + 1));
  if (d >= 2) {
    for (int k = 2; k <= d; ++k) powers[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1.0;
  }

  Complex lam_m = lambda0;
  for (int m = 2; m <= order; ++m) {
    lam_m *= lambda0;
    Complex rhs{};
    for (int k = 2; k <= d; ++k) {
      auto& pk = powers[static_cast<std::size_t>(k)];
      if (m > k) {
        // psi^k = psi * psi^{k-1}; terms use c_1..c_{m-1} only.
        Complex acc{};
        for (int j = 1; j <= m - 1; ++j) {
          const Complex prev = (k - 1 == 1) ? c[m - j] : powers[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m - j)];
          acc += c[j] * prev;
        }
        pk[static_cast<std::size_t>(m)] = acc;
      }
      rhs += f0[static_cast<std::size_t>(k)] * pk[static_cast<std::size_t>(m)];
    }
    const Complex divisor = lam_m - lambda0;
    const double size = std::abs(divisor);
    if (size < out.min_small_divisor) {
      out.min_small_divisor = size;
      out.min_divisor_index = m;
    }
    if (size < kSmallDivisorCutoff) throw SmallDivisorError(m, size);
    c[m] = rhs / divisor;
  }
  if (!c.finite())
    throw Error(ErrorKind::LinearizationUnusable, "Schroder coefficients overflowed");
  return out;
}

double conjugacy_residual(const TruncatedSeries& psi, std::span<const Complex> f0,
                          Complex lambda0, double radius, int samples) {
  double sup = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Complex xi = radius * unit(static_cast<double>(k) / samples);
    const Complex lhs = horner(psi.coeffs(), lambda0 * xi);
    const Complex rhs = horner(f0, horner(psi.coeffs(), xi));
    sup = std::max(sup, std::abs(lhs - rhs));
  }
  return sup;
}

double working_radius(const TruncatedSeries& psi, std::span<const Complex> f0, Complex lambda0,
                      const LinearizerOptions& options) {
  require(options.grid_ratio > 0.0 && options.grid_ratio < 1.0, "grid ratio must lie in (0,1)");
  double rho = options.rho_cap;
  for (int k = 0; k <= options.grid_steps; ++k, rho *= options.grid_ratio) {
    // The residual is analytic in xi, so its circle maximum grows with the radius.
    if (conjugacy_residual(psi, f0, lambda0, rho, options.samples) > options.tol_conj) continue;
    if (max_modulus(psi, rho, options.samples) >= options.domain_radius) continue;
    if (min_derivative(psi, rho) <= 1e-14) continue;
    if (!separates_grid(psi, rho)) continue;
    return rho;
  }
  throw Error(ErrorKind::LinearizationUnusable,
              "no radius on the grid meets the conjugacy tolerance");
}

SiegelModel SiegelModel::build(std::vector<Complex> f0, const RotationNumber& rot,
                               const LinearizerOptions& options) {
  SiegelModel model;
  model.rot_ = rot;
  model.lambda0_ = rot.multiplier();
  require(std::abs(std::abs(model.lambda0_) - 1.0) <= 1e-15, "|lambda0| must be 1");
  require(!f0.empty(), "empty base map");
  if (f0.size() < 2) f0.resize(2);
  model.f0_ = std::move(f0);
  model.options_ = options;
  model.tol_conj_ = options.tol_conj;

  SchroderSeries s = schroder_series(model.f0_, model.lambda0_, options.order);
  model.psi_ = std::move(s.psi);
  model.min_small_divisor_ = s.min_small_divisor;
  model.min_divisor_index_ = s.min_divisor_index;
  model.rho_w_ = working_radius(model.psi_, model.f0_, model.lambda0_, options);
  model.phi_series_ = reverse(model.psi_);

  for (const auto& row : model.residual_table()) {
    if (row.r < 1.0 && row.residual > model.tol_conj_)
      throw Error(ErrorKind::LinearizationUnusable, "conjugacy residual invariant violated");
  }
  return model;
}

Complex SiegelModel::xi_at(double r, double t) const { return r * rho_w_ * unit(t); }

std::vector<ResidualRow> SiegelModel::residual_table() const {
  std::vector<ResidualRow> rows;
  for (int i = 1; i <= 10; ++i) {
    const double r = i / 10.0;
    rows.push_back({r, conjugacy_residual(psi_, f0_, lambda0_, r * rho_w_, options_.samples)});
  }
  return rows;
}

std::vector<Complex> level_curve(const SiegelModel& model, double r, int n) {
  require(n >= 1, "level curve needs n >= 1");
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pts.push_back(model.psi_at(model.xi_at(r, static_cast<double>(k) / n)));
  return pts;
}

Complex phi_invert(const SiegelModel& model, Complex z, std::optional<Complex> seed) {
  if (z == Complex{}) return {};
  const double tol = 1e-12 * std::max(1.0, std::abs(z));
  auto accept = [&](Complex xi) {
    if (std::abs(xi) > model.rho_w() * (1.0 + 1e-12))
      throw Error(ErrorKind::OutsideModel, "preimage lies outside the validated disk");
    return xi;
  };
  const Complex start = seed ? *seed : horner(model.phi_series().coeffs(), z);
  if (std::isfinite(start.real()) && std::isfinite(start.imag())) {
    if (auto xi = newton(model, start, z, tol)) return accept(*xi);
  }
  // Continuation along the segment [0, z].
  constexpr int kSteps = 32;
  Complex xi{};
  for (int j = 1; j <= kSteps; ++j) {
    const Complex target = (static_cast<double>(j) / kSteps) * z;
    const auto next = newton(model, xi, target, j == kSteps ? tol : 1e-10 * std::max(1.0, std::abs(target)));
    if (!next) throw Error(ErrorKind::OutsideModel, "Newton inversion of psi did not converge");
    xi = *next;
  }
  return accept(xi);
}

double radial_coordinate(const SiegelModel& model, Complex z, std::optional<Complex> seed) {
  return std::abs(phi_invert(model, z, seed)) / model.rho_w();
}

Complex H_eval(const SiegelModel& model, Complex xi) {
  const Jet jet = model.psi_jet(xi);
  if (std::abs(jet.d1) < 1e-14) throw Error(ErrorKind::DerivativeVanishes, "psi' vanishes");
  return 1.0 + xi * jet.d2 / jet.d1;
}

IntegralMeans integral_means(const SiegelModel& model, double t, std::span<const double> r_list) {
  constexpr int kNodes = 4096;
  IntegralMeans out;
  for (const double r : r_list) {
    require(r > 0.0 && r < 1.0, "integral means radii must lie in (0,1)");
    double sum = 0.0;
    for (int k = 0; k < kNodes; ++k) {
      const double m = std::abs(model.psi_jet(model.xi_at(r, static_cast<double>(k) / kNodes)).d1);
      sum += std::pow(m, t);
    }
    out.values.push_back(sum * (kTwoPi / kNodes));
  }
  if (r_list.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(r_list.size());
    for (std::size_t i = 0; i < r_list.size(); ++i) {
      const double x = -std::log(1.0 - r_list[i]);
      const double y = std::log(out.values[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    out.beta_fit = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  }
  return out;
}

Complex koenigs_attracting(std::span<const Complex> f, Complex z, double tol, int n_max) {
  require(f.size() >= 2, "map needs a linear coefficient");
  const Complex lambda = f[1];
  const double mod = std::abs(lambda);
  if (!(mod < 1.0) || mod == 0.0)
    throw Error(ErrorKind::InvalidMultiplier, "Koenigs limit needs 0 < |lambda| < 1");
  const double stop = tol * (1.0 - mod);
  Complex w = z;
  Complex inv_power = 1.0;  // lambda^{-n}
  Complex phi = z;
  int quiet = 0;
  for (int n = 0; n < n_max; ++n) {
    const Complex next = horner(f, w);
    inv_power /= lambda;
    const Complex increment = inv_power * (next - lambda * w);
    phi += increment;
    w = next;
    if (!std::isfinite(phi.real()) || !std::isfinite(phi.imag()) || std::abs(w) > 1e8)
      throw Error(ErrorKind::NotInBasin, "orbit escapes");
    quiet = std::abs(increment) <= stop ? quiet + 1 : 0;
    if (quiet >= 3 || w == Complex{}) return phi;
  }
  throw Error(ErrorKind::NotInBasin, "Koenigs iteration did not settle");
}

}  // namespace siegel
