#pragma once

#include <string>

#include "json.hpp"
#include "siegel/certificate.hpp"
#include "siegel/contfrac.hpp"
#include "siegel/family.hpp"
#include "siegel/siegel_model.hpp"
#include "siegel/verify.hpp"

namespace siegel {

using nlohmann::json;

inline constexpr const char* kSchema = "siegel-cert/1";

// A family description together with the rotation number that fixes lambda0.
struct FamilySpec {
  RotationNumber rot;
  AnalyticFamily fam;
};

// Complex numbers are written as [re, im]; plain numbers are accepted on input.
json complex_json(Complex z);
Complex parse_complex(const json& j);

// Keys: rotation (surd, quotient list, or "golden"), quotients (K, default 40),
// mode, higher | f0_higher + f1 | poly + param_radius, domain_radius.
// Unknown keys raise ParseError.
FamilySpec parse_family(const json& j);
FamilySpec load_family(const std::string& path);
// The golden-mean quadratic lambda0 z + z^2.
FamilySpec default_family(int K = 40);

json rotation_json(const RotationNumber& rot);
json model_json(const SiegelModel& model);
json certificate_json(const InclusionCertificate& cert);
json inclusion_json(const InclusionReport& rep);
json example2_json(const Example2Report& rep);

}  // namespace siegel
