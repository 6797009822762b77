#include "siegel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <ostream>
#include <thread>

#include "siegel/error.hpp"

namespace siegel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double t) { return std::polar(1.0, kTwoPi * t); }

// Runs body(i) for i in [0, n) over `threads` workers, strided by worker index.
template <class F>
void parallel_for(int n, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1)));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < n; i += static_cast<int>(threads)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct Map {
  Complex c;  // f(z) = c (z + z^{q+1})
  int q;
};

// Value and first two derivatives of f^q at z.
Jet iterate_jet(const Map& f, Complex z) {
  Jet j{z, 1.0, 0.0};
  for (int k = 0; k < f.q; ++k) {
    Complex vq1 = 1.0;
    for (int e = 1; e < f.q; ++e) vq1 *= j.value;
    const Complex vq = vq1 * j.value;
    const Complex fv = f.c * (j.value + vq * j.value);
    const Complex f1 = f.c * (1.0 + static_cast<double>(f.q + 1) * vq);
    const Complex f2 = f.c * static_cast<double>((f.q + 1) * f.q) * vq1;
    j.d2 = f2 * j.d1 * j.d1 + f1 * j.d2;
    j.d1 = f1 * j.d1;
    j.value = fv;
  }
  return j;
}

}  // namespace

const char* to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::Attracted: return "attracted";
    case OrbitClass::Escaped: return "escaped";
    case OrbitClass::Undecided: return "undecided";
  }
  return "unknown";
}

double trap_radius(std::span<const Complex> coeffs, double domain_radius) {
  const double a1 = coeffs.size() > 1 ? std::abs(coeffs[1]) : 0.0;
  if (a1 >= 1.0) return 0.0;
  const double target = 0.5 * (1.0 - a1);
  auto h = [&](double r) {
    double s = 0.0;
    double power = r;  // r^{k-1}
    for (std::size_t k = 2; k < coeffs.size(); ++k, power *= r) s += std::abs(coeffs[k]) * power;
    return s;
  };
  if (h(1.0) == 0.0 && h(2.0) == 0.0) return domain_radius;
  double lo = 0.0;
  double hi = 1.0;
  while (h(hi) <= target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) <= target ? lo : hi) = mid;
  }
  return std::min(lo, domain_radius);
}

double escape_radius(std::span<const Complex> coeffs) {
  double s = 0.0;
  for (std::size_t k = 2; k < coeffs.size(); ++k) s += std::abs(coeffs[k]);
  return 1.0 + std::max(2.0, s);
}

OrbitClassifier::OrbitClassifier(std::vector<Complex> coeffs, double domain_radius,
                                 std::optional<double> escape_R)
    : coeffs_(std::move(coeffs)),
      domain_radius_(domain_radius),
      trap_(trap_radius(coeffs_, domain_radius)),
      escape_(escape_R ? *escape_R : escape_radius(coeffs_)) {}

OrbitClassifier::OrbitClassifier(const AnalyticFamily& fam, Complex lambda,
                                 std::optional<double> escape_R)
    : OrbitClassifier(fam.coefficients(lambda), fam.domain_radius(), escape_R) {}

OrbitOutcome OrbitClassifier::classify(Complex z, int n_max) const {
  OrbitOutcome out;
  out.trap_radius = trap_;
  for (int n = 0;; ++n) {
    const double m = std::abs(z);
    out.steps = n;
    out.final_point = z;
    if (m < trap_) {
      out.classification = OrbitClass::Attracted;
      return out;
    }
    if (!(m <= escape_) || !(m < domain_radius_)) {
      out.classification = OrbitClass::Escaped;
      return out;
    }
    if (n >= n_max) return out;
    z = horner(coeffs_, z);
  }
}

OrbitOutcome classify_orbit(const AnalyticFamily& fam, Complex lambda, Complex z, int n_max,
                            std::optional<double> escape_R) {
  return OrbitClassifier(fam, lambda, escape_R).classify(z, n_max);
}

Complex BasinRaster::pixel_center(int col, int row) const {
  const double dx = 2.0 * window.half_width / width;
  const double dy = 2.0 * window.half_width / height;
  return window.center + Complex{-window.half_width + (col + 0.5) * dx,
                                 window.half_width - (row + 0.5) * dy};
}

std::size_t BasinRaster::mask_count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

BasinRaster basin_raster(const AnalyticFamily& fam, Complex lambda, const Window& window,
                         int width, int height, int n_max, unsigned threads) {
  require(width >= 1 && height >= 1, "raster needs a positive resolution");
  require(window.half_width > 0.0, "window half-width must be positive");
  require(std::abs(lambda) < 1.0, "basin raster needs |lambda| < 1");
  BasinRaster r;
  r.window = window;
  r.width = width;
  r.height = height;
  const double left = window.center.real() - window.half_width;
  const double top = window.center.imag() + window.half_width;
  const double fx = (0.0 - left) / (2.0 * window.half_width) * width;
  const double fy = (top - 0.0) / (2.0 * window.half_width) * height;
  require(fx >= 0.0 && fx < width && fy >= 0.0 && fy < height, "window must contain the origin");
  r.origin_col = static_cast<int>(fx);
  r.origin_row = static_cast<int>(fy);

  const OrbitClassifier classifier(fam, lambda);
  const auto total = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  r.cls.assign(total, OrbitClass::Undecided);
  parallel_for(height, threads, [&](int row) {
    for (int col = 0; col < width; ++col) {
      r.cls[static_cast<std::size_t>(row) * width + col] =
          classifier.classify(r.pixel_center(col, row), n_max).classification;
    }
  });

  auto index = [&](int col, int row) { return static_cast<std::size_t>(row) * width + col; };
  if (r.cls[index(r.origin_col, r.origin_row)] != OrbitClass::Attracted)
    throw Error(ErrorKind::OriginNotAttracted, "origin pixel is not attracted");
  r.mask.assign(total, 0);
  std::deque<std::pair<int, int>> queue{{r.origin_col, r.origin_row}};
  r.mask[index(r.origin_col, r.origin_row)] = 1;
  while (!queue.empty()) {
    const auto [c, w] = queue.front();
    queue.pop_front();
    constexpr int dc[4] = {1, -1, 0, 0};
    constexpr int dr[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nc = c + dc[k];
      const int nr = w + dr[k];
      if (nc < 0 || nr < 0 || nc >= width || nr >= height) continue;
      const auto i = index(nc, nr);
      if (r.mask[i] || r.cls[i] != OrbitClass::Attracted) continue;
      r.mask[i] = 1;
      queue.emplace_back(nc, nr);
    }
  }
  return r;
}

void write_pgm(std::ostream& os, const BasinRaster& raster) {
  os << "P5\n" << raster.width << " " << raster.height << "\n255\n";
  for (std::size_t i = 0; i < raster.cls.size(); ++i) {
    unsigned char v = 0;
    if (raster.mask[i]) {
      v = 255;
    } else if (raster.cls[i] == OrbitClass::Attracted) {
      v = 160;
    } else if (raster.cls[i] == OrbitClass::Undecided) {
      v = 64;
    }
    os.put(static_cast<char>(v));
  }
}

InclusionReport inclusion_check(const SiegelModel& model, const AnalyticFamily& fam,
                                const InclusionCertificate& cert, int n_lambda, int n_boundary,
                                double eps_factor) {
  require(cert.valid, "inclusion check needs a valid certificate");
  require(n_lambda >= 1 && n_boundary >= 1, "inclusion check needs positive sample counts");
  InclusionReport rep;
  rep.eps_used = eps_factor * cert.eps_star;
  rep.n_lambda = n_lambda;
  rep.n_boundary = n_boundary;
  const StolzAngle sector{model.lambda0(), cert.Theta, std::max(cert.eps_star, rep.eps_used)};
  rep.lambdas = stolz_points(sector, rep.eps_used, n_lambda);
  const double lo = cert.r0 * std::exp(-cert.tau);
  const double hi = cert.r0 * std::exp(cert.tau);
  rep.band_min = std::numeric_limits<double>::infinity();
  rep.band_max = 0.0;
  bool band_ok = true;

  for (const Complex lambda : rep.lambdas) {
    const auto c = fam.coefficients(lambda);
    for (int k = 0; k < n_boundary; ++k) {
      Complex xi = model.xi_at(cert.r0, static_cast<double>(k) / n_boundary);
      Complex z = model.psi_at(xi);
      try {
        for (std::int64_t j = 1; j <= cert.N; ++j) {
          z = horner(c, z);
          if (!(std::abs(z) < fam.domain_radius()))
            throw Error(ErrorKind::OutsideDomain, "orbit left the domain");
          xi = phi_invert(model, z, model.lambda0() * xi);
          const double radius = std::abs(xi) / model.rho_w();
          rep.band_min = std::min(rep.band_min, radius);
          rep.band_max = std::max(rep.band_max, radius);
          if (!(radius > lo && radius < hi)) band_ok = false;
        }
        rep.max_radius = std::max(rep.max_radius, std::abs(xi) / model.rho_w());
      } catch (const Error& e) {
        if (rep.failures++ == 0) rep.first_failure = e.what();
      }
    }
  }
  rep.band_ok = band_ok && rep.failures == 0;
  rep.pass = rep.failures == 0 && rep.band_ok && rep.max_radius <= cert.r0 * (1.0 + 1e-6);
  return rep;
}

double kernel_radius(const SiegelModel& model, const AnalyticFamily& fam, Complex lambda,
                     std::span<const double> r_grid, int n_boundary, int n_max,
                     std::span<const Complex> julia_witnesses) {
  require(std::abs(lambda) < 1.0, "kernel radius needs |lambda| < 1");
  require(std::is_sorted(r_grid.begin(), r_grid.end()), "r_grid must be ascending");
  double witness = std::numeric_limits<double>::infinity();
  for (const Complex w : julia_witnesses) {
    try {
      witness = std::min(witness, radial_coordinate(model, w));
    } catch (const Error&) {
      // outside the model: says nothing about S'_r
    }
  }
  const OrbitClassifier classifier(fam, lambda);
  double best = 0.0;
  for (const double r : r_grid) {
    if (witness < r) return best;
    for (const Complex z : level_curve(model, r, n_boundary)) {
      if (classifier.classify(z, n_max).classification != OrbitClass::Attracted) return best;
    }
    best = r;
  }
  return best;
}

std::optional<RepellingCycle> nearest_repelling_cycle(const SiegelModel& model,
                                                      const AnalyticFamily& fam, Complex lambda,
                                                      int q) {
  require(q >= 1, "period must be positive");
  const auto c = fam.coefficients(lambda);
  auto orbit_jet = [&](Complex z, int steps) {
    Jet j{z, 1.0, 0.0};
    for (int k = 0; k < steps; ++k) {
      const Jet f = horner_jet(c, j.value);
      j.d1 *= f.d1;
      j.value = f.value;
    }
    return j;
  };
  std::optional<RepellingCycle> best;
  constexpr double kSeedRadii[] = {0.01, 0.03, 0.1, 0.2};
  for (int s = 0; s < 4 * q; ++s) {
    for (const double t : kSeedRadii) {
      Complex z = t * unit((s + 0.5) / (4.0 * q));
      bool converged = false;
      for (int it = 0; it < 200; ++it) {
        // Newton on (f^q(z) - z)/z, which removes the fixed point at 0.
        const Jet g = orbit_jet(z, q);
        const Complex F = (g.value - z) / z;
        const Complex dF = ((g.d1 - 1.0) * z - (g.value - z)) / (z * z);
        const Complex step = F / dF;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0) break;
        if (std::abs(step) < 1e-14) {
          converged = true;
          break;
        }
      }
      if (!converged || std::abs(z) < 1e-8) continue;
      const Jet g = orbit_jet(z, q);
      if (!(std::abs(g.d1) > 1.0)) continue;
      bool exact = true;
      for (int d = 1; d < q && exact; ++d)
        if (q % d == 0 && std::abs(orbit_jet(z, d).value - z) < 1e-9) exact = false;
      if (!exact) continue;
      double radius = 0.0;
      try {
        radius = radial_coordinate(model, z);
      } catch (const Error&) {
        continue;
      }
      if (!best || radius < best->radius) best = RepellingCycle{z, g.d1, radius};
    }
  }
  return best;
}

std::vector<KoenigsGap> koenigs_convergence(const AnalyticFamily& fam,
                                            std::span<const Complex> lambdas,
                                            const SiegelModel& model, double r_compact,
                                            int n_samples) {
  require(r_compact > 0.0 && r_compact < 1.0, "r_compact must lie in (0,1)");
  require(n_samples >= 1, "need at least one sample");
  std::vector<KoenigsGap> out;
  for (const Complex lambda : lambdas) {
    KoenigsGap g{lambda, 0.0, true, {}};
    try {
      for (int k = 0; k < n_samples; ++k) {
        const Complex xi = model.xi_at(r_compact, static_cast<double>(k) / n_samples);
        const Complex phi = koenigs_attracting(fam, lambda, model.psi_at(xi));
        g.gap = std::max(g.gap, std::abs(phi - xi));
      }
    } catch (const Error& e) {
      g.ok = false;
      g.message = e.what();
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Example1Point> example1_sequence(const SiegelModel& model, const AnalyticFamily& fam,
                                             const RotationNumber& rot, int n_first, int n_last) {
  require(n_first >= 1 && n_last <= rot.size() && n_first <= n_last, "index range out of bounds");
  std::vector<Example1Point> out;
  for (int n = n_first; n <= n_last; ++n) {
    Example1Point pt;
    pt.n = n;
    pt.p = rot.p(n);
    pt.q = rot.q(n);
    pt.target = 1.0 / n;
    require(pt.q <= 64, "period too large for the cycle search");
    const Complex root = unit(static_cast<double>(pt.p) / static_cast<double>(pt.q));
    for (int k = 1; k <= 52; ++k) {
      pt.mu = 1.0 - std::ldexp(1.0, -k);
      pt.lambda = pt.mu * root;
      auto cycle = nearest_repelling_cycle(model, fam, pt.lambda, static_cast<int>(pt.q));
      if (cycle && cycle->radius < pt.target) {
        pt.witness = cycle;
        break;
      }
    }
    out.push_back(pt);
  }
  return out;
}

Example2Report example2_check(const RotationNumber& rot, int n) {
  require(n >= 1 && n < rot.size(), "index must satisfy 1 <= n < K");
  Example2Report rep;
  rep.n = n;
  rep.q = rot.q(n);
  rep.p = rot.p(n);
  require(rep.q <= 16, "q_n must not exceed 16");
  const int q = static_cast<int>(rep.q);
  const double inv2q = std::ldexp(1.0, -q);
  const Complex omega = unit(static_cast<double>(rep.p) / static_cast<double>(q));
  const Map comparison{omega / (1.0 + inv2q), q};
  const Map actual{rot.multiplier() / (1.0 + inv2q), q};
  rep.growth_condition = static_cast<double>(rot.q(n + 1)) >= std::ldexp(1.0, q);

  const Complex half{0.5, 0.0};
  rep.comparison_fixed_gap = std::abs(iterate_jet(comparison, half).value - half);
  rep.l_closed = std::pow((1.0 + (q + 1) * inv2q) / (1.0 + inv2q), q);

  // Cauchy-integral derivative on a circle of 16 points, radius 1e-3.
  constexpr int kStencil = 16;
  constexpr double kH = 1e-3;
  Complex acc{};
  for (int k = 0; k < kStencil; ++k) {
    const Complex w = unit(static_cast<double>(k) / kStencil);
    acc += iterate_jet(comparison, half + kH * w).value / w;
  }
  rep.l_fd = acc / (kStencil * kH);
  rep.l_gap = std::abs(rep.l_fd - rep.l_closed);

  constexpr double kDisk = 0.1;
  double M = std::abs(iterate_jet(comparison, half).d2);
  for (int i = 1; i <= 8; ++i)
    for (int k = 0; k < 32; ++k)
      M = std::max(M, std::abs(iterate_jet(comparison, half + kDisk * i / 8.0 * unit(k / 32.0)).d2));
  rep.second_derivative_max = M;
  const double slope = rep.l_closed - 1.0;
  rep.rho = M > 0.0 ? std::min(kDisk, slope / (2.0 * M)) : kDisk;
  for (int k = 0; k < 64; ++k) {
    const Complex z = half + rep.rho * unit(k / 64.0);
    rep.perturbation = std::max(rep.perturbation,
                                std::abs(iterate_jet(actual, z).value - iterate_jet(comparison, z).value));
  }
  rep.rouche_ok = rep.perturbation < slope * rep.rho - 0.5 * M * rep.rho * rep.rho;

  Complex z = half;
  for (int it = 1; it <= 100; ++it) {
    const Jet g = iterate_jet(actual, z);
    const Complex step = (g.value - z) / (g.d1 - 1.0);
    z -= step;
    rep.newton_steps = it;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0) break;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(z))) {
      rep.newton_converged = true;
      break;
    }
  }
  rep.z_star = z;
  rep.z_star_residual = std::abs(iterate_jet(actual, z).value - z);
  rep.newton_converged = rep.newton_converged && rep.z_star_residual <= 1e-12;
  rep.z_star_offset = std::abs(z - half);
  rep.in_D3 = std::abs(z) < 0.75;
  rep.nontrivial = std::abs(z) > 1e-6;
  rep.certifies_D3 = rep.newton_converged && rep.nontrivial && rep.in_D3;
  return rep;
}

}  // namespace siegel
