#include "siegel/io.hpp"

#include <fstream>
#include <set>

#include "siegel/error.hpp"

namespace siegel {

namespace {

std::vector<Complex> complex_list(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of coefficients");
  std::vector<Complex> out;
  for (const auto& item : j) out.push_back(parse_complex(item));
  return out;
}

json complex_list_json(std::span<const Complex> v) {
  json out = json::array();
  for (const Complex z : v) out.push_back(complex_json(z));
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw Error(ErrorKind::ParseError, "unknown family key: " + key);
  }
}

double optional_radius(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return AnalyticFamily::kInf;
  if (!j.at(key).is_number()) throw Error(ErrorKind::ParseError, std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing family key: ") + key);
  return j.at(key);
}

}  // namespace

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::ParseError, "complex values must be numbers or [re, im] pairs");
}

FamilySpec parse_family(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "family description must be an object");
  reject_unknown(j, {"rotation", "quotients", "mode", "higher", "f0_higher", "f1", "poly",
                     "param_radius", "domain_radius"});
  const std::string text = field(j, "rotation").get<std::string>();
  const int K = j.contains("quotients") ? j.at("quotients").get<int>() : 40;
  RotationNumber rot = text == "golden" ? golden_rotation(K) : cf_expand(parse_rotation(text), K);
  const Complex lambda0 = rot.multiplier();
  const double R = optional_radius(j, "domain_radius");
  const std::string mode = field(j, "mode").get<std::string>();

  auto only = [&](std::set<std::string> keys) {
    keys.insert({"rotation", "quotients", "mode", "domain_radius"});
    reject_unknown(j, keys);
  };
  if (mode == "multiplier_scaled") {
    only({"higher"});
    return {rot, AnalyticFamily::multiplier_scaled(complex_list(field(j, "higher")), lambda0, R)};
  }
  if (mode == "linear_pair") {
    only({"f0_higher", "f1"});
    std::vector<Complex> f0{0.0, lambda0};
    for (const Complex c : complex_list(field(j, "f0_higher"))) f0.push_back(c);
    return {rot, AnalyticFamily::linear_pair(std::move(f0), complex_list(field(j, "f1")), R)};
  }
  if (mode == "custom") {
    only({"poly", "param_radius"});
    std::vector<std::vector<Complex>> poly;
    for (const auto& row : field(j, "poly")) poly.push_back(complex_list(row));
    return {rot, AnalyticFamily::custom(std::move(poly), lambda0, R, optional_radius(j, "param_radius"))};
  }
  throw Error(ErrorKind::ParseError, "unknown family mode: " + mode);
}

FamilySpec load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open family file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed family file: ") + e.what());
  }
  return parse_family(j);
}

FamilySpec default_family(int K) {
  RotationNumber rot = golden_rotation(K);
  const Complex lambda0 = rot.multiplier();
  return {rot, AnalyticFamily::multiplier_scaled({1.0}, lambda0)};
}

json rotation_json(const RotationNumber& rot) {
  json conv = json::array();
  for (const auto& c : rot.convergents) conv.push_back({c.p, c.q});
  return {{"source", describe(rot.source)},
          {"alpha", rot.alpha_f64},
          {"partial_quotients", rot.partial_quotients},
          {"convergents", conv}};
}

json model_json(const SiegelModel& model) {
  json residuals = json::array();
  for (const auto& row : model.residual_table()) residuals.push_back({{"r", row.r}, {"residual", row.residual}});
  return {{"schema", kSchema},
          {"kind", "siegel_model"},
          {"rotation", rotation_json(model.rotation())},
          {"lambda0", complex_json(model.lambda0())},
          {"f0", complex_list_json(model.f0())},
          {"order", model.psi().order()},
          {"psi", complex_list_json(model.psi().coeffs())},
          {"rho_w", model.rho_w()},
          {"tol_conj", model.tol_conj()},
          {"min_small_divisor", model.min_small_divisor()},
          {"min_divisor_index", model.min_divisor_index()},
          {"residual_table", residuals}};
}

json certificate_json(const InclusionCertificate& cert) {
  return {{"schema", kSchema},
          {"kind", "inclusion_certificate"},
          {"mode", cert.mode == CertifyMode::Kind::Theorem3 ? "theorem3" : "manual"},
          {"r0", cert.r0},
          {"Theta", cert.Theta},
          {"N", cert.N},
          {"n0", cert.n0},
          {"tau", cert.tau},
          {"r_lower", cert.r_lower},
          {"r_upper", cert.r_upper},
          {"QN", cert.QN},
          {"L", {{"raw", cert.L.raw},
                 {"value", cert.L.value},
                 {"nodes", cert.L.nodes},
                 {"rel_change", cert.L.rel_change},
                 {"safety", kLSafety}}},
          {"aN", cert.aN},
          {"vartheta", cert.vartheta},
          {"epsN", cert.epsN},
          {"b", cert.b},
          {"b1", cert.b1},
          {"Lambda", cert.Lambda},
          {"eps_star", cert.eps_star},
          {"valid", cert.valid},
          {"notes", cert.notes}};
}

json inclusion_json(const InclusionReport& rep) {
  return {{"schema", kSchema},
          {"kind", "inclusion_report"},
          {"eps_used", rep.eps_used},
          {"n_lambda", rep.n_lambda},
          {"n_boundary", rep.n_boundary},
          {"lambdas", complex_list_json(rep.lambdas)},
          {"max_radius", rep.max_radius},
          {"band_min", rep.band_min},
          {"band_max", rep.band_max},
          {"band_ok", rep.band_ok},
          {"failures", rep.failures},
          {"first_failure", rep.first_failure},
          {"pass", rep.pass}};
}

json example2_json(const Example2Report& rep) {
  return {{"schema", kSchema},
          {"kind", "example2_report"},
          {"n", rep.n},
          {"p", rep.p},
          {"q", rep.q},
          {"comparison_fixed_gap", rep.comparison_fixed_gap},
          {"l_closed", rep.l_closed},
          {"l_fd", complex_json(rep.l_fd)},
          {"l_gap", rep.l_gap},
          {"second_derivative_max", rep.second_derivative_max},
          {"rho", rep.rho},
          {"perturbation", rep.perturbation},
          {"rouche_ok", rep.rouche_ok},
          {"growth_condition", rep.growth_condition},
          {"newton_converged", rep.newton_converged},
          {"newton_steps", rep.newton_steps},
          {"z_star", complex_json(rep.z_star)},
          {"z_star_residual", rep.z_star_residual},
          {"z_star_offset", rep.z_star_offset},
          {"in_D3", rep.in_D3},
          {"nontrivial", rep.nontrivial},
          {"certifies_D3", rep.certifies_D3}};
}

}  // namespace siegel
