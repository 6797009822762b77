#include "siegel/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "siegel/error.hpp"
#include "siegel/io.hpp"

namespace siegel {

namespace {

struct Common {
  std::string family;
  int order = 64;
  double tol = 1e-9;
  std::string out;
};

struct Context {
  FamilySpec spec;
  SiegelModel model;
};

Context build(const Common& c) {
  FamilySpec spec = c.family.empty() ? default_family() : load_family(c.family);
  LinearizerOptions options;
  options.order = c.order;
  options.tol_conj = c.tol;
  options.domain_radius = spec.fam.domain_radius();
  SiegelModel model = SiegelModel::build(spec.fam.coefficients(spec.rot.multiplier()), spec.rot, options);
  return {std::move(spec), std::move(model)};
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--family", c.family, "Family description JSON (default: golden quadratic)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--order", c.order, "Schroder series order M")->check(CLI::Range(2, 4096));
  cmd->add_option("--tol", c.tol, "Conjugacy residual tolerance");
  cmd->add_option("--out", c.out, "Output file (default: standard output)");
}

// Writes to --out when given, otherwise to the command's stdout.
void emit(const Common& c, std::ostream& out, const std::function<void(std::ostream&)>& body,
          bool binary = false) {
  if (c.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(c.out, binary ? std::ios::binary : std::ios::out);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open output file: " + c.out);
  body(file);
}

Complex parse_lambda(const std::string& text) {
  std::stringstream ss(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(ss >> re >> comma >> im) || comma != ',')
    throw Error(ErrorKind::InvalidArgument, "lambda must be given as re,im");
  return {re, im};
}

std::ostream& csv(std::ostream& os) { return os << std::setprecision(17); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Siegel disk linearization and basin-inclusion certificates"};
  app.name("siegel");
  app.require_subcommand(1);

  // contfrac
  auto* cf = app.add_subcommand("contfrac", "Convergents and discrepancy table (CSV: n,a,p,q,harmonic_mean,Q_beta0,bound_prop)");
  std::string surd, quotients;
  int K = 10;
  std::string cf_out;
  auto* surd_opt = cf->add_option("--surd", surd, "Quadratic surd (p+q*sqrt(d))/r");
  cf->add_option("--quotients", quotients, "Partial quotients [a1,a2,...]")->excludes(surd_opt);
  cf->add_option("--k", K, "Number of partial quotients")->check(CLI::Range(2, 90));
  cf->add_option("--out", cf_out, "Output file");

  // linearize
  Common lin;
  auto* li = app.add_subcommand("linearize", "Siegel model dump (JSON)");
  add_common(li, lin);
  std::string curve_csv;
  std::vector<double> curve_r{0.1, 0.3, 0.5, 0.7, 0.9};
  int curve_n = 256;
  li->add_option("--curve-csv", curve_csv, "Write level-curve samples to this CSV file");
  li->add_option("--curve-r", curve_r, "Level-curve radii")->delimiter(',');
  li->add_option("--curve-n", curve_n, "Samples per level curve")->check(CLI::PositiveNumber);

  // certify and verify-inclusion share the certificate options
  struct CertArgs {
    Common c;
    double r0 = 0.5;
    double theta = std::numbers::pi / 4;
    std::string mode = "theorem3";
    std::int64_t N = 0;
    double tau = 0.0;
  };
  auto add_cert = [](CLI::App* cmd, CertArgs& a) {
    add_common(cmd, a.c);
    cmd->add_option("--r0", a.r0, "Level r0 in (0,1)");
    cmd->add_option("--theta", a.theta, "Stolz half-angle Theta in (0, pi/2)");
    cmd->add_option("--mode", a.mode, "theorem3 or manual")->check(CLI::IsMember({"theorem3", "manual"}));
    cmd->add_option("--N", a.N, "Iteration count (manual mode)");
    cmd->add_option("--tau", a.tau, "tau in (0, -log r0) (manual mode)");
  };
  auto certify_from = [](const Context& ctx, const CertArgs& a) {
    const CertifyMode mode = a.mode == "manual" ? CertifyMode::manual(a.N, a.tau) : CertifyMode::theorem3();
    return certify(ctx.model, ctx.spec.fam, ctx.spec.rot, a.r0, a.theta, mode);
  };
  auto check_r0 = [](double r0) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw Error(ErrorKind::InvalidArgument, "r0 must lie in (0,1)");
  };

  CertArgs cert_args;
  auto* ce = app.add_subcommand("certify", "Inclusion certificate (JSON)");
  add_cert(ce, cert_args);

  CertArgs incl_args;
  int n_lambda = 9, n_boundary = 256;
  double eps_factor = 0.9;
  auto* vi = app.add_subcommand("verify-inclusion", "Certificate check by iteration (JSON)");
  add_cert(vi, incl_args);
  vi->add_option("--n-lambda", n_lambda, "Sector parameters")->check(CLI::PositiveNumber);
  vi->add_option("--n-boundary", n_boundary, "Samples of L_r0")->check(CLI::PositiveNumber);
  vi->add_option("--eps-factor", eps_factor, "Tested |lambda - lambda0| as a multiple of eps_star");

  // epsilon-curve
  Common ec;
  double ec_theta = std::numbers::pi / 4, gamma = 1.6;
  std::vector<double> ec_grid{0.5, 0.6, 0.7, 0.8, 0.9};
  auto* ecc = app.add_subcommand("epsilon-curve", "eps(r) with the calibrated floor (CSV: r,N,eps,valid,ell_gamma,floor)");
  add_common(ecc, ec);
  ecc->add_option("--theta", ec_theta, "Stolz half-angle");
  ecc->add_option("--gamma", gamma, "Exponent gamma > 1");
  ecc->add_option("--r-grid", ec_grid, "Radii")->delimiter(',');

  // basin
  Common bs;
  std::string lambda_text;
  double radial = 0.1, half_width = 2.0, cre = 0.0, cim = 0.0;
  int width = 256, height = 256, n_max = 2000;
  unsigned threads = 0;
  auto* ba = app.add_subcommand("basin", "Basin raster (PGM P5)");
  add_common(ba, bs);
  auto* lam_opt = ba->add_option("--lambda", lambda_text, "Multiplier re,im");
  ba->add_option("--radial", radial, "Use lambda = lambda0 (1 - s)")->excludes(lam_opt);
  ba->add_option("--center-re", cre, "Window center, real part");
  ba->add_option("--center-im", cim, "Window center, imaginary part");
  ba->add_option("--half-width", half_width, "Window half-width");
  ba->add_option("--width", width, "Pixels per row")->check(CLI::PositiveNumber);
  ba->add_option("--height", height, "Rows")->check(CLI::PositiveNumber);
  ba->add_option("--n-max", n_max, "Iteration cap")->check(CLI::PositiveNumber);
  ba->add_option("--threads", threads, "Worker threads (0 = all cores)");

  // kernel-curve
  Common kc;
  int kn_first = 4, kn_last = 64, k_boundary = 64, k_nmax = 100000;
  std::vector<double> k_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  auto* kcc = app.add_subcommand("kernel-curve", "Kernel radius along lambda0 (1 - 1/n) (CSV: n,lambda_re,lambda_im,r_max)");
  add_common(kcc, kc);
  kcc->add_option("--n-first", kn_first, "First n")->check(CLI::Range(2, 1 << 20));
  kcc->add_option("--n-last", kn_last, "Last n")->check(CLI::Range(2, 1 << 20));
  kcc->add_option("--r-grid", k_grid, "Radii")->delimiter(',');
  kcc->add_option("--n-boundary", k_boundary, "Samples per level curve")->check(CLI::PositiveNumber);
  kcc->add_option("--n-max", k_nmax, "Iteration cap")->check(CLI::PositiveNumber);

  // koenigs-converge
  Common kg;
  int g_first = 4, g_last = 64, g_samples = 64;
  double r_compact = 0.5;
  auto* kgc = app.add_subcommand("koenigs-converge", "Koenigs function gaps (CSV: n,lambda_re,lambda_im,gap,ok)");
  add_common(kgc, kg);
  kgc->add_option("--n-first", g_first, "First n")->check(CLI::Range(2, 1 << 20));
  kgc->add_option("--n-last", g_last, "Last n")->check(CLI::Range(2, 1 << 20));
  kgc->add_option("--r-compact", r_compact, "Level of the compact set S'_r");
  kgc->add_option("--samples", g_samples, "Samples on its boundary")->check(CLI::PositiveNumber);

  // example1
  Common e1;
  int e1_first = 2, e1_last = 6, e1_boundary = 64, e1_nmax = 100000;
  std::vector<double> e1_grid{0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  auto* e1c = app.add_subcommand("example1", "Tangential witness sequence (CSV: n,p,q,mu,lambda_re,lambda_im,witness_radius,r_max)");
  add_common(e1c, e1);
  e1c->add_option("--n-first", e1_first, "First convergent index")->check(CLI::PositiveNumber);
  e1c->add_option("--n-last", e1_last, "Last convergent index")->check(CLI::PositiveNumber);
  e1c->add_option("--r-grid", e1_grid, "Radii")->delimiter(',');
  e1c->add_option("--n-boundary", e1_boundary, "Samples per level curve")->check(CLI::PositiveNumber);
  e1c->add_option("--n-max", e1_nmax, "Iteration cap")->check(CLI::PositiveNumber);

  // example2
  std::string e2_quotients = "[1,1,1,1,1,32]";
  int e2_n = 5;
  std::string e2_out;
  auto* e2c = app.add_subcommand("example2", "Periodic point inside D3 (JSON)");
  e2c->add_option("--quotients", e2_quotients, "Partial quotients [a1,a2,...]");
  e2c->add_option("--n", e2_n, "Convergent index")->check(CLI::PositiveNumber);
  e2c->add_option("--out", e2_out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (cf->parsed()) {
      const RotationSource src = !quotients.empty() ? parse_rotation(quotients)
                                 : !surd.empty()    ? parse_rotation(surd)
                                                    : RotationSource{QuadraticSurd{-1, 1, 5, 2}};
      const RotationNumber rot = cf_expand(src, K);
      Common c;
      c.out = cf_out;
      emit(c, out, [&](std::ostream& os) {
        csv(os) << "n,a,p,q,harmonic_mean,Q_beta0,bound_prop\n";
        for (int n = 1; n <= rot.size(); ++n) {
          os << n << "," << rot.partial_quotients[static_cast<std::size_t>(n - 1)] << "," << rot.p(n)
             << "," << rot.q(n);
          if (n < rot.size() && rot.q(n) <= 1'000'000) {
            const int N = static_cast<int>(rot.q(n));
            const auto rep = star_discrepancy(rot, proposition_beta(rot, n), N);
            os << "," << harmonic_mean(rot.q(n), rot.q(n + 1)) << "," << rep.q_exact << ","
               << rep.bound_prop.value_or(0.0);
          } else {
            os << ",,,";
          }
          os << "\n";
        }
      });
    } else if (li->parsed()) {
      const Context ctx = build(lin);
      emit(lin, out, [&](std::ostream& os) { os << model_json(ctx.model).dump(2) << "\n"; });
      if (!curve_csv.empty()) {
        std::ofstream file(curve_csv);
        if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open output file: " + curve_csv);
        csv(file) << "r,k,re,im\n";
        for (const double r : curve_r) {
          if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "curve radii must lie in (0,1)");
          const auto pts = level_curve(ctx.model, r, curve_n);
          for (std::size_t k = 0; k < pts.size(); ++k)
            file << r << "," << k << "," << pts[k].real() << "," << pts[k].imag() << "\n";
        }
      }
    } else if (ce->parsed()) {
      check_r0(cert_args.r0);
      const Context ctx = build(cert_args.c);
      const auto cert = certify_from(ctx, cert_args);
      emit(cert_args.c, out, [&](std::ostream& os) { os << certificate_json(cert).dump(2) << "\n"; });
    } else if (vi->parsed()) {
      check_r0(incl_args.r0);
      const Context ctx = build(incl_args.c);
      const auto cert = certify_from(ctx, incl_args);
      if (!cert.valid) throw Error(ErrorKind::InvalidArgument, "certificate is not valid");
      const auto rep = inclusion_check(ctx.model, ctx.spec.fam, cert, n_lambda, n_boundary, eps_factor);
      json j = inclusion_json(rep);
      j["certificate"] = certificate_json(cert);
      emit(incl_args.c, out, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    } else if (ecc->parsed()) {
      const Context ctx = build(ec);
      const auto curve = theorem3_curve(ctx.model, ctx.spec.fam, ctx.spec.rot, ec_theta, ec_grid, gamma);
      emit(ec, out, [&](std::ostream& os) {
        csv(os) << "r,N,eps,valid,ell_gamma,floor\n";
        for (const auto& row : curve.rows)
          os << row.r << "," << row.N << "," << row.eps << "," << row.valid << "," << row.ell_gamma
             << "," << row.floor << "\n";
      });
    } else if (ba->parsed()) {
      const Context ctx = build(bs);
      const Complex lambda = lambda_text.empty() ? ctx.model.lambda0() * (1.0 - radial) : parse_lambda(lambda_text);
      const auto raster = basin_raster(ctx.spec.fam, lambda, Window{{cre, cim}, half_width}, width, height, n_max, threads);
      emit(bs, out, [&](std::ostream& os) { write_pgm(os, raster); }, true);
    } else if (kcc->parsed()) {
      if (kn_first > kn_last) throw Error(ErrorKind::InvalidArgument, "n-first must not exceed n-last");
      const Context ctx = build(kc);
      emit(kc, out, [&](std::ostream& os) {
        csv(os) << "n,lambda_re,lambda_im,r_max\n";
        for (int n = kn_first; n <= kn_last; ++n) {
          const Complex lambda = ctx.model.lambda0() * (1.0 - 1.0 / n);
          const double r = kernel_radius(ctx.model, ctx.spec.fam, lambda, k_grid, k_boundary, k_nmax);
          os << n << "," << lambda.real() << "," << lambda.imag() << "," << r << "\n";
        }
      });
    } else if (kgc->parsed()) {
      if (g_first > g_last) throw Error(ErrorKind::InvalidArgument, "n-first must not exceed n-last");
      const Context ctx = build(kg);
      std::vector<Complex> lambdas;
      for (int n = g_first; n <= g_last; ++n) lambdas.push_back(ctx.model.lambda0() * (1.0 - 1.0 / n));
      const auto gaps = koenigs_convergence(ctx.spec.fam, lambdas, ctx.model, r_compact, g_samples);
      emit(kg, out, [&](std::ostream& os) {
        csv(os) << "n,lambda_re,lambda_im,gap,ok\n";
        for (std::size_t i = 0; i < gaps.size(); ++i)
          os << g_first + static_cast<int>(i) << "," << gaps[i].lambda.real() << "," << gaps[i].lambda.imag()
             << "," << gaps[i].gap << "," << gaps[i].ok << "\n";
      });
    } else if (e1c->parsed()) {
      const Context ctx = build(e1);
      const auto seq = example1_sequence(ctx.model, ctx.spec.fam, ctx.spec.rot, e1_first, e1_last);
      emit(e1, out, [&](std::ostream& os) {
        csv(os) << "n,p,q,mu,lambda_re,lambda_im,witness_radius,r_max\n";
        for (const auto& pt : seq) {
          std::vector<Complex> witnesses;
          if (pt.witness) witnesses.push_back(pt.witness->point);
          const double r = kernel_radius(ctx.model, ctx.spec.fam, pt.lambda, e1_grid, e1_boundary, e1_nmax, witnesses);
          os << pt.n << "," << pt.p << "," << pt.q << "," << pt.mu << "," << pt.lambda.real() << ","
             << pt.lambda.imag() << ",";
          if (pt.witness) os << pt.witness->radius;
          os << "," << r << "\n";
        }
      });
    } else if (e2c->parsed()) {
      const auto list = parse_quotients(e2_quotients);
      const RotationNumber rot = cf_expand(list, static_cast<int>(list.quotients.size()));
      const auto rep = example2_check(rot, e2_n);
      Common c;
      c.out = e2_out;
      emit(c, out, [&](std::ostream& os) { os << example2_json(rep).dump(2) << "\n"; });
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace siegel
