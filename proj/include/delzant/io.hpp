#pragma once

#include "delzant/boundary.hpp"
#include "delzant/mixture.hpp"
#include "delzant/polytope.hpp"
#include "delzant/potential.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace delzant::io {

using Json = nlohmann::ordered_json;

/// Doubles are written rounded to 12 significant digits; ±inf and nan become
/// the strings "inf", "-inf", "nan".
Json number(double value);
Json vector(const Eigen::VectorXd& v);
Json matrix(const Eigen::MatrixXd& m);
Json indices(const IndexSet& set);
std::string format_number(double value);

/// Numbers, or strings holding a rational ("1/3") or a decimal.
double parse_real(const Json& j);
Rational parse_exact(const Json& j);
Eigen::VectorXd parse_vector(const Json& j);

/// {"dim", "bounded", "halfspaces": [{"normal": [...], "offset": "p/q"}]}
Polytope parse_polytope(const Json& j);
Json to_json(const Polytope& p);

/// {"scale", "log_terms": [{"normal", "offset", "weight"}],
///  "correction": {"monomials": [{"exponents", "coeff"}]}}
/// or {"guillemin_of": <polytope>, "scale", "correction"}. When
/// "guillemin_of" is absent or not an object, `context` is used.
SymplecticPotential parse_potential(const Json& j, const Polytope* context = nullptr);
Json to_json(const SymplecticPotential& phi);
Polynomial parse_polynomial(const Json& j, std::size_t dim);

/// {"alphas": [[...]], "betas": [...]}, rationals as "p/q" strings.
MixtureFamily parse_mixture(const Json& j);
Json to_json(const MixtureFamily& family);

Json to_json(const DelzantReport& report);
Json to_json(const ValidityReport& report);
Json to_json(const ContinuityReport& report);
Json to_json(const Pythagoras54Report& report);
Json to_json(const Pythagoras55Report& report);
Json to_json(const ProductCheckReport& report);
Json to_json(const TorificationReport& report);

/// A polytope with a potential: {"polytope": ..., "potential": ...}. Without
/// "potential" the Guillemin potential at "scale" (default 1/2) is used.
struct Problem {
  Polytope polytope;
  SymplecticPotential potential;
};
Problem parse_problem(const Json& j);

/// Throws Error(InvalidInput) when the file cannot be read or parsed.
Json read_file(const std::string& path);

}  // namespace delzant::io
