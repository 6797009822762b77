#include "siegel/certificate.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <sstream>

#include "siegel/error.hpp"

namespace siegel {

namespace {

constexpr double kPi = std::numbers::pi;

void check_r0(double r0) {
  if (!(r0 > 0.0 && r0 < 1.0)) throw Error(ErrorKind::InvalidArgument, "r0 must lie in (0,1)");
}

std::string format(const char* key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << key << "=" << value;
  return os.str();
}

}  // namespace

Complex G_eval(const SiegelModel& model, const AnalyticFamily& fam, Complex xi) {
  const Complex lambda0 = model.lambda0();
  const auto u = fam.u_coefficients();
  if (xi == Complex{}) return (u.size() > 1 ? u[1] : Complex{}) / lambda0;
  const Jet rotated = model.psi_jet(lambda0 * xi);
  if (std::abs(rotated.d1) < 1e-14) throw Error(ErrorKind::DerivativeVanishes, "psi' vanishes");
  return horner(u, model.psi_at(xi)) / (lambda0 * xi * rotated.d1);
}

Complex J_eval(const SiegelModel& model, const AnalyticFamily& fam, double r0, double t) {
  require(r0 > 0.0 && r0 < 1.0, "r0 must lie in (0,1)");
  const Complex lambda0 = model.lambda0();
  const Complex xi = model.xi_at(r0, t);
  const Jet here = model.psi_jet(xi);
  const Jet rotated = model.psi_jet(lambda0 * xi);
  if (std::abs(rotated.d1) < 1e-14 || std::abs(here.d1) < 1e-14)
    throw Error(ErrorKind::DerivativeVanishes, "psi' vanishes");
  const Jet u = horner_jet(fam.u_coefficients(), here.value);
  const Complex H = 1.0 + lambda0 * xi * rotated.d2 / rotated.d1;
  return (xi * u.d1 * here.d1 - u.value * H) / (lambda0 * xi * rotated.d1);
}

double k_pi(double r) { return r / ((1.0 + r) * (1.0 + r)); }

JNorm J_norm(const SiegelModel& model, const AnalyticFamily& fam, double r0) {
  constexpr int kMaxNodes = 1 << 20;
  int n = 64;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += std::abs(J_eval(model, fam, r0, static_cast<double>(k) / n));
  double value = sum / n;
  JNorm out{value, value * kLSafety, n, 1.0};
  while (n < kMaxNodes) {
    for (int k = 0; k < n; ++k)
      sum += std::abs(J_eval(model, fam, r0, (k + 0.5) / n));
    n *= 2;
    const double next = sum / n;
    const double change = next == 0.0 ? 0.0 : std::fabs(next - value) / next;
    value = next;
    out = {value, value * kLSafety, n, change};
    if (change < 1e-6) break;
  }
  return out;
}

ANResult compute_aN(const SiegelModel& model, const AnalyticFamily& fam,
                    const RotationNumber& rot, double r0, std::int64_t N) {
  require(N >= 1 && N <= INT_MAX, "N must lie in [1, INT_MAX]");
  ANResult out;
  out.L = J_norm(model, fam, r0);
  out.QN = QN_upper(rot, static_cast<int>(N), kQnGrid);
  out.aN = 2.0 * kPi * out.QN * out.L.value;
  return out;
}

RadiusPair tau_radii(double r0, std::int64_t N, double tau) {
  return {r0 * std::exp(tau * (1.0 - 1.0 / static_cast<double>(N))), r0 * std::exp(tau)};
}

double epsilon_N_tau(const SiegelModel& model, const AnalyticFamily& fam, double r0,
                     std::int64_t N, double tau) {
  check_r0(r0);
  require(N >= 1, "N must be positive");
  require(tau > 0.0 && tau < -std::log(r0), "tau must lie in (0, -log r0)");
  const RadiusPair radii = tau_radii(r0, N, tau);
  const double s = 1.0 - k_pi(radii.lower) / k_pi(radii.upper);
  if (s <= 0.0) return 0.0;
  if (fam.mode() == FamilyMode::LinearPair) {
    const double slope = affine_omega_slope(fam, model, radii.lower);
    if (slope == 0.0) {
      if (std::isfinite(fam.param_radius())) return fam.param_radius();
      throw Error(ErrorKind::DegeneratePerturbation, "perturbation vanishes on S_r");
    }
    return std::min(s / slope, fam.param_radius());
  }
  return omega_inverse(fam, model, radii.lower, s);
}

double Lambda_of(double b, double vartheta) {
  if (b <= 0.0) return 0.0;
  const double b2 = b * b;
  const double x = 2.0 * b2 * std::cos(2.0 * vartheta) + b2 * b2;
  // sqrt(1 + x) - 1 = x / (sqrt(1 + x) + 1)
  // Exactly 1 at b = 1; the clamp removes rounding above it.
  return std::min(1.0, (x / (std::sqrt(1.0 + x) + 1.0) + b2) / (2.0 * b * std::cos(vartheta)));
}

EpsilonStar epsilon_star(double epsN, std::int64_t N, double tau, double aN, double vartheta) {
  EpsilonStar out;
  out.b = kPi * epsN * static_cast<double>(N) * (1.0 - aN) / (4.0 * tau);
  out.b1 = std::min(1.0, out.b);
  out.Lambda = Lambda_of(out.b1, vartheta);
  out.eps_star = epsN * out.Lambda;
  return out;
}

double sector_radius(double t_mod, double vartheta) {
  require(t_mod > 0.0 && t_mod <= 1.0, "|t| must lie in (0,1]");
  const double g = (1.0 - t_mod * t_mod) / (2.0 * t_mod * std::cos(vartheta));
  // sqrt(g^2 + 1) - g without cancellation for large g
  return 1.0 / (std::sqrt(g * g + 1.0) + g);
}

InclusionCertificate certify(const SiegelModel& model, const AnalyticFamily& fam,
                             const RotationNumber& rot, double r0, double Theta,
                             const CertifyMode& mode) {
  check_r0(r0);
  if (!(Theta > 0.0 && Theta < kPi / 2))
    throw Error(ErrorKind::InvalidArgument, "Theta must lie in (0, pi/2)");

  InclusionCertificate cert;
  cert.mode = mode.kind;
  cert.r0 = r0;
  cert.Theta = Theta;
  cert.L = J_norm(model, fam, r0);

  if (mode.kind == CertifyMode::Kind::Theorem3) {
    cert.tau = std::log((1.0 + 2.0 * r0) / (3.0 * r0));
    const double x = 2.0 * kPi * cert.L.value / std::sin(kPi / 4 - Theta / 2);
    const IndexChoice pick = x > 0.0 ? ell_of_x(rot, x) : IndexChoice{1, rot.q(1)};
    cert.N = pick.ell;
    cert.n0 = pick.n0;
  } else {
    if (mode.N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
    if (!(mode.tau > 0.0 && mode.tau < -std::log(r0)))
      throw Error(ErrorKind::InvalidArgument, "tau must lie in (0, -log r0)");
    cert.N = mode.N;
    cert.tau = mode.tau;
  }
  require(cert.N <= INT_MAX, "N too large for the discrepancy evaluation");

  const RadiusPair radii = tau_radii(r0, cert.N, cert.tau);
  cert.r_lower = radii.lower;
  cert.r_upper = radii.upper;
  cert.QN = QN_upper(rot, static_cast<int>(cert.N), kQnGrid);
  cert.aN = 2.0 * kPi * cert.QN * cert.L.value;
  cert.epsN = epsilon_N_tau(model, fam, r0, cert.N, cert.tau);

  const bool small_aN = cert.aN < std::sin(kPi / 2 - Theta);
  if (small_aN) {
    cert.vartheta = Theta + std::asin(cert.aN);
    const EpsilonStar es = epsilon_star(cert.epsN, cert.N, cert.tau, cert.aN, cert.vartheta);
    cert.b = es.b;
    cert.b1 = es.b1;
    cert.Lambda = es.Lambda;
    cert.eps_star = es.eps_star;
  }
  cert.valid = small_aN && cert.eps_star > 0.0 && std::isfinite(cert.eps_star);

  cert.notes.push_back(format("L_trapezoid_nodes", cert.L.nodes));
  cert.notes.push_back(format("L_rel_change", cert.L.rel_change));
  cert.notes.push_back(format("L_safety_factor", kLSafety));
  cert.notes.push_back(format("QN_offset_grid", kQnGrid));
  const OmegaSampling sampling;
  cert.notes.push_back(format("omega_xi_angles", sampling.xi_angles));
  cert.notes.push_back(format("omega_xi_radii", sampling.xi_radii));
  cert.notes.push_back(format("omega_lambda_angles", sampling.lambda_angles));
  cert.notes.push_back(format("omega_safety_factor", sampling.inflation));
  if (!small_aN) cert.notes.emplace_back("invalid: aN >= sin(pi/2 - Theta)");
  return cert;
}

EpsilonCurve theorem3_curve(const SiegelModel& model, const AnalyticFamily& fam,
                            const RotationNumber& rot, double Theta,
                            std::span<const double> r_grid, double gamma) {
  require(gamma > 1.0, "gamma must exceed 1");
  EpsilonCurve curve;
  curve.gamma = gamma;
  curve.C_hat = std::numeric_limits<double>::infinity();
  for (const double r : r_grid) {
    const InclusionCertificate cert = certify(model, fam, rot, r, Theta);
    CurveRow row;
    row.r = r;
    row.N = cert.N;
    row.eps = cert.eps_star;
    row.valid = cert.valid;
    row.ell_gamma = ell_of_x(rot, std::pow(1.0 - r, -gamma)).ell;
    if (row.valid) {
      const double ratio = row.eps * static_cast<double>(row.ell_gamma) / std::pow(1.0 - r, 3);
      curve.C_hat = std::min(curve.C_hat, ratio);
    }
    curve.rows.push_back(row);
  }
  if (!std::isfinite(curve.C_hat)) curve.C_hat = 0.0;
  for (auto& row : curve.rows)
    row.floor = curve.C_hat * std::pow(1.0 - row.r, 3) / static_cast<double>(row.ell_gamma);
  return curve;
}

ANDiagnosis diagnose_AN(const SiegelModel& model, const AnalyticFamily& fam, Complex z0,
                        std::int64_t N, double fd_step) {
  require(N >= 0, "N must be nonnegative");
  require(fd_step > 0.0, "fd_step must be positive");
  ANDiagnosis out;
  if (N == 0) return out;
  const Complex lambda0 = model.lambda0();
  const Complex xi0 = phi_invert(model, z0);
  Complex rot = 1.0;
  for (std::int64_t k = 0; k < N; ++k) {
    out.sum_G += G_eval(model, fam, rot * xi0);
    rot *= lambda0;
  }
  // rot = lambda0^N, so lambda0^N xi0 seeds the inversion of the perturbed orbit end.
  auto s = [&](Complex lambda) {
    const auto c = fam.coefficients(lambda);
    Complex z = z0;
    for (std::int64_t k = 0; k < N; ++k) z = horner(c, z);
    return phi_invert(model, z, rot * xi0);
  };
  out.fd_estimate = std::log(s(lambda0 + fd_step) / s(lambda0 - fd_step)) / (2.0 * fd_step);
  const double scale = std::abs(out.sum_G);
  out.gap = scale == 0.0 ? std::abs(out.fd_estimate) : std::abs(out.sum_G - out.fd_estimate) / scale;
  return out;
}

}  // namespace siegel
