#include "siegel/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siegel/error.hpp"

namespace siegel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double t) { return std::polar(1.0, kTwoPi * t); }

std::vector<Complex> derivative_coeffs(const std::vector<Complex>& c) {
  std::vector<Complex> d(c.size() > 1 ? c.size() - 1 : 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

bool all_zero(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](Complex c) { return c == Complex{}; });
}

// xi samples at radii j/n * r * rho_w, j = 1..n.
template <class F>
void for_each_xi(const SiegelModel& model, double r, const OmegaSampling& s, F&& f) {
  for (int j = 1; j <= s.xi_radii; ++j) {
    const double rr = r * j / s.xi_radii;
    for (int a = 0; a < s.xi_angles; ++a) f(model.xi_at(rr, static_cast<double>(a) / s.xi_angles));
  }
}

}  // namespace

const char* to_string(FamilyMode mode) {
  switch (mode) {
    case FamilyMode::MultiplierScaled: return "multiplier_scaled";
    case FamilyMode::LinearPair: return "linear_pair";
    case FamilyMode::Custom: return "custom";
  }
  return "unknown";
}

AnalyticFamily AnalyticFamily::multiplier_scaled(std::vector<Complex> higher, Complex lambda0,
                                                 double domain_radius) {
  AnalyticFamily fam;
  fam.mode_ = FamilyMode::MultiplierScaled;
  fam.higher_ = std::move(higher);
  fam.lambda0_ = lambda0;
  fam.domain_radius_ = domain_radius;
  fam.degree_ = 1 + static_cast<int>(fam.higher_.size());
  fam.finish();
  return fam;
}

AnalyticFamily AnalyticFamily::linear_pair(std::vector<Complex> f0, std::vector<Complex> f1,
                                           double domain_radius) {
  require(f0.size() >= 2 && f1.size() >= 2, "linear pair needs linear coefficients");
  require(f0[0] == Complex{} && f1[0] == Complex{}, "family members must fix the origin");
  AnalyticFamily fam;
  fam.mode_ = FamilyMode::LinearPair;
  const std::size_t n = std::max(f0.size(), f1.size());
  f0.resize(n);
  f1.resize(n);
  fam.lambda0_ = f0[1];
  fam.lambda1_ = f1[1];
  fam.f0_ = std::move(f0);
  fam.f1_ = std::move(f1);
  fam.domain_radius_ = domain_radius;
  fam.degree_ = static_cast<int>(n) - 1;
  fam.finish();
  return fam;
}

AnalyticFamily AnalyticFamily::custom(std::vector<std::vector<Complex>> poly, Complex lambda0,
                                      double domain_radius, double param_radius) {
  require(poly.size() >= 2, "custom family needs coefficients through z^1");
  require(all_zero(poly[0]), "family members must fix the origin");
  require(param_radius > 0.0, "parameter radius must be positive");
  AnalyticFamily fam;
  fam.mode_ = FamilyMode::Custom;
  fam.poly_ = std::move(poly);
  fam.lambda0_ = lambda0;
  fam.domain_radius_ = domain_radius;
  fam.param_radius_ = param_radius;
  fam.degree_ = static_cast<int>(fam.poly_.size()) - 1;
  fam.finish();
  return fam;
}

void AnalyticFamily::finish() {
  require(domain_radius_ > 0.0, "domain radius must be positive");
  u_coeffs_.assign(static_cast<std::size_t>(degree_) + 1, Complex{});
  switch (mode_) {
    case FamilyMode::MultiplierScaled:
      u_coeffs_[1] = 1.0;
      break;
    case FamilyMode::LinearPair: {
      std::vector<Complex> diff(f0_.size());
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = f1_[k] - f0_[k];
      if (all_zero(diff)) break;
      if (lambda1_ == lambda0_) break;  // u is undefined; reported on use
      for (std::size_t k = 0; k < diff.size(); ++k) u_coeffs_[k] = diff[k] / (lambda1_ - lambda0_);
      break;
    }
    case FamilyMode::Custom:
      for (std::size_t k = 0; k < poly_.size(); ++k) {
        Complex acc{};
        Complex power = 1.0;  // lambda0^{j-1}
        for (std::size_t j = 1; j < poly_[k].size(); ++j) {
          acc += static_cast<double>(j) * poly_[k][j] * power;
          power *= lambda0_;
        }
        u_coeffs_[k] = acc;
      }
      break;
  }
}

bool AnalyticFamily::affine_in_lambda() const noexcept {
  if (mode_ != FamilyMode::Custom) return true;
  return std::all_of(poly_.begin(), poly_.end(), [](const std::vector<Complex>& p) {
    for (std::size_t j = 2; j < p.size(); ++j)
      if (p[j] != Complex{}) return false;
    return true;
  });
}

std::vector<Complex> AnalyticFamily::coefficients(Complex lambda) const {
  std::vector<Complex> c(static_cast<std::size_t>(degree_) + 1);
  switch (mode_) {
    case FamilyMode::MultiplierScaled:
      c[1] = lambda;
      for (std::size_t k = 0; k < higher_.size(); ++k) c[k + 2] = higher_[k];
      break;
    case FamilyMode::LinearPair: {
      c = f0_;
      std::vector<Complex> diff(f0_.size());
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = f1_[k] - f0_[k];
      if (all_zero(diff) || lambda == lambda0_) break;
      if (lambda1_ == lambda0_)
        throw Error(ErrorKind::DegeneratePerturbation, "linear pair has lambda1 = lambda0");
      const Complex t = (lambda - lambda0_) / (lambda1_ - lambda0_);
      for (std::size_t k = 0; k < c.size(); ++k) c[k] = f0_[k] + t * diff[k];
      break;
    }
    case FamilyMode::Custom:
      for (std::size_t k = 0; k < poly_.size(); ++k) c[k] = horner(poly_[k], lambda);
      break;
  }
  return c;
}

std::vector<Complex> AnalyticFamily::u_coefficients() const {
  if (mode_ == FamilyMode::LinearPair && lambda1_ == lambda0_) {
    for (std::size_t k = 0; k < f0_.size(); ++k)
      if (f1_[k] != f0_[k])
        throw Error(ErrorKind::DegeneratePerturbation, "linear pair has lambda1 = lambda0");
  }
  return u_coeffs_;
}

void AnalyticFamily::check_domain(Complex z) const {
  if (!(std::abs(z) < domain_radius_))
    throw Error(ErrorKind::OutsideDomain, "point lies outside the family's domain");
}

Complex AnalyticFamily::eval(Complex lambda, Complex z) const {
  check_domain(z);
  return horner(coefficients(lambda), z);
}

Complex AnalyticFamily::eval_dz(Complex lambda, Complex z) const {
  check_domain(z);
  return horner_jet(coefficients(lambda), z).d1;
}

Complex AnalyticFamily::u(Complex z) const {
  check_domain(z);
  return horner(u_coefficients(), z);
}

Complex AnalyticFamily::u_dz(Complex z) const {
  check_domain(z);
  return horner(derivative_coeffs(u_coefficients()), z);
}

bool StolzAngle::contains(Complex lambda) const {
  const Complex w = 1.0 - lambda / vertex;
  return std::abs(lambda - vertex) < eps_max && w != Complex{} && std::abs(std::arg(w)) < theta;
}

std::vector<Complex> stolz_points(const StolzAngle& sector, double eps, int k) {
  require(k >= 1, "need at least one parameter");
  require(eps > 0.0 && eps <= sector.eps_max, "eps must lie in (0, eps_max]");
  const double half = sector.theta - std::min(1e-3, 0.5 * sector.theta);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double phi = k == 1 ? 0.0 : -half + 2.0 * half * j / (k - 1);
    out.push_back(sector.vertex * (1.0 - eps * std::polar(1.0, phi)));
  }
  return out;
}

double modulus_omega(const AnalyticFamily& fam, const SiegelModel& model, double r, double delta,
                     const OmegaSampling& sampling) {
  require(r > 0.0 && r < 1.0, "r must lie in (0,1)");
  require(delta >= 0.0, "delta must be nonnegative");
  if (delta == 0.0) return 0.0;
  require(delta <= fam.param_radius(), "delta exceeds the parameter radius");
  const auto base = fam.coefficients(fam.lambda0());
  std::vector<std::vector<Complex>> members;
  for (int a = 0; a < sampling.lambda_angles; ++a)
    members.push_back(fam.coefficients(fam.lambda0() + delta * unit(static_cast<double>(a) / sampling.lambda_angles)));
  double sup = 0.0;
  for_each_xi(model, r, sampling, [&](Complex xi) {
    const Complex z = model.psi_at(xi);
    const Complex den = horner(base, z);
    for (const auto& c : members) {
      const Complex num = horner(c, z) - den;
      if (num == Complex{}) continue;
      if (std::abs(den) < 1e-300) throw Error(ErrorKind::PoleInModulus, "f_lambda0 vanishes on S_r");
      sup = std::max(sup, std::abs(num / den));
    }
  });
  return sup * sampling.inflation;
}

double affine_omega_slope(const AnalyticFamily& fam, const SiegelModel& model, double r,
                          const OmegaSampling& sampling) {
  require(r > 0.0 && r < 1.0, "r must lie in (0,1)");
  require(fam.affine_in_lambda(), "family is not affine in lambda");
  const auto base = fam.coefficients(fam.lambda0());
  const auto slope = fam.u_coefficients();  // f_lambda = f_lambda0 + (lambda - lambda0) u
  double sup = 0.0;
  for_each_xi(model, r, sampling, [&](Complex xi) {
    const Complex z = model.psi_at(xi);
    const Complex num = horner(slope, z);
    if (num == Complex{}) return;
    const Complex den = horner(base, z);
    if (std::abs(den) < 1e-300) throw Error(ErrorKind::PoleInModulus, "f_lambda0 vanishes on S_r");
    sup = std::max(sup, std::abs(num / den));
  });
  return sup * sampling.inflation;
}

double omega_inverse(const AnalyticFamily& fam, const SiegelModel& model, double r, double s,
                     const OmegaSampling& sampling) {
  require(s > 0.0, "omega_inverse needs s > 0");
  const double cap = fam.param_radius();
  auto omega = [&](double d) { return modulus_omega(fam, model, r, d, sampling); };
  if (std::isfinite(cap) && omega(cap) <= s) return cap;
  double lo = 0.0;
  double hi = std::isfinite(cap) ? std::min(cap, 1e-3) : 1e-3;
  for (int it = 0; omega(hi) <= s; ++it) {
    lo = hi;
    hi = std::isfinite(cap) ? std::min(cap, 2.0 * hi) : 2.0 * hi;
    if (it > 200) return lo;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (omega(mid) <= s ? lo : hi) = mid;
  }
  return lo;
}

Complex koenigs_attracting(const AnalyticFamily& fam, Complex lambda, Complex z, double tol,
                           int n_max) {
  if (!(std::abs(lambda) < 1.0))
    throw Error(ErrorKind::InvalidMultiplier, "Koenigs limit needs |lambda| < 1");
  const auto c = fam.coefficients(lambda);
  return koenigs_attracting(std::span<const Complex>(c), z, tol, n_max);
}

}  // namespace siegel
