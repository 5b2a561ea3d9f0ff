#include "delzant/io.hpp"

#include "delzant/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace delzant::io {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::InvalidInput, message); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

IntVector parse_int_vector(const Json& j) {
  if (!j.is_array()) fail("expected an integer array");
  IntVector out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail("expected an integer, got " + v.dump());
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

std::string rational_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_number()) return j.dump();
  fail("expected a number or rational string, got " + j.dump());
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Json number(double value) {
  if (!std::isfinite(value)) return format_number(value);
  double rounded = std::strtod(format_number(value).c_str(), nullptr);
  if (rounded == 0.0) rounded = 0.0;  // no "-0.0"
  return rounded;
}

Json vector(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

Json matrix(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector(m.row(i).transpose()));
  return out;
}

Json indices(const IndexSet& set) {
  Json out = Json::array();
  for (Index r : set) out.push_back(r);
  return out;
}

Rational parse_exact(const Json& j) { return parse_rational(rational_text(j)); }

double parse_real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return to_double(parse_rational(s));
  }
  fail("expected a number, got " + j.dump());
}

Eigen::VectorXd parse_vector(const Json& j) {
  if (!j.is_array()) fail("expected an array of numbers, got " + j.dump());
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_real(j[i]);
  return v;
}

Polytope parse_polytope(const Json& j) {
  const Json& hs_json = field(j, "halfspaces");
  if (!hs_json.is_array()) fail("\"halfspaces\" must be an array");
  std::vector<HalfSpace> hs;
  for (const auto& h : hs_json) hs.push_back({parse_int_vector(field(h, "normal")), parse_exact(field(h, "offset"))});
  std::size_t dim = 0;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_unsigned()) fail("\"dim\" must be a nonnegative integer");
    dim = j["dim"].get<std::size_t>();
  } else if (!hs.empty()) {
    dim = hs.front().normal.size();
  }
  const bool bounded = j.value("bounded", true);
  return Polytope(dim, std::move(hs), bounded);
}

Json to_json(const Polytope& p) {
  Json hs = Json::array();
  for (const auto& h : p.halfspaces()) hs.push_back({{"normal", h.normal}, {"offset", format_rational(h.offset)}});
  return {{"dim", p.dim()}, {"bounded", p.bounded()}, {"halfspaces", hs}};
}

Polynomial parse_polynomial(const Json& j, std::size_t dim) {
  Polynomial f(dim);
  if (j.is_null()) return f;
  for (const auto& m : field(j, "monomials")) {
    const IntVector e = parse_int_vector(field(m, "exponents"));
    if (e.size() != dim) fail("monomial exponents have the wrong length");
    Polynomial::Exponents exps;
    for (auto v : e) {
      if (v < 0) fail("negative exponent");
      exps.push_back(static_cast<int>(v));
    }
    f.add_term(exps, parse_real(field(m, "coeff")));
  }
  return f;
}

SymplecticPotential parse_potential(const Json& j, const Polytope* context) {
  if (!j.is_object()) fail("potential must be an object");
  const double scale = j.contains("scale") ? parse_real(j["scale"]) : 0.5;
  if (j.contains("guillemin_of") || !j.contains("log_terms")) {
    std::optional<Polytope> own;
    if (j.contains("guillemin_of") && j["guillemin_of"].is_object()) own = parse_polytope(j["guillemin_of"]);
    const Polytope* p = own ? &*own : context;
    if (!p) fail("potential refers to a polytope but none was given");
    SymplecticPotential phi = guillemin(*p, scale);
    if (j.contains("correction")) phi = with_correction(phi, parse_polynomial(j["correction"], p->dim()));
    return phi;
  }
  std::vector<AffineLogTerm> terms;
  std::size_t dim = context ? context->dim() : 0;
  if (j.contains("dim")) dim = j["dim"].get<std::size_t>();
  for (const auto& t : j["log_terms"]) {
    AffineLogTerm term;
    term.normal = parse_vector(field(t, "normal"));
    term.offset = parse_real(field(t, "offset"));
    term.weight = t.contains("weight") ? parse_real(t["weight"]) : 1.0;
    if (!context && !j.contains("dim") && terms.empty()) dim = static_cast<std::size_t>(term.normal.size());
    terms.push_back(std::move(term));
  }
  Polynomial f = j.contains("correction") ? parse_polynomial(j["correction"], dim) : Polynomial(dim);
  return SymplecticPotential(dim, scale, std::move(terms), std::move(f));
}

Json to_json(const SymplecticPotential& phi) {
  Json terms = Json::array();
  for (const auto& t : phi.log_terms())
    terms.push_back({{"normal", vector(t.normal)}, {"offset", number(t.offset)}, {"weight", number(t.weight)}});
  Json monomials = Json::array();
  for (const auto& [e, c] : phi.correction().terms()) monomials.push_back({{"exponents", e}, {"coeff", number(c)}});
  return {{"dim", phi.dim()},
          {"scale", number(phi.scale())},
          {"log_terms", terms},
          {"correction", {{"monomials", monomials}}}};
}

MixtureFamily parse_mixture(const Json& j) {
  std::vector<RationalVector> alphas;
  for (const auto& a : field(j, "alphas")) {
    if (!a.is_array()) fail("each alpha must be an array");
    RationalVector row;
    for (const auto& v : a) row.push_back(parse_exact(v));
    alphas.push_back(std::move(row));
  }
  RationalVector betas;
  for (const auto& b : field(j, "betas")) betas.push_back(parse_exact(b));
  return MixtureFamily(std::move(alphas), std::move(betas));
}

Json to_json(const MixtureFamily& family) {
  Json alphas = Json::array();
  for (const auto& a : family.alphas()) {
    Json row = Json::array();
    for (const auto& v : a) row.push_back(format_rational(v));
    alphas.push_back(row);
  }
  Json betas = Json::array();
  for (const auto& b : family.betas()) betas.push_back(format_rational(b));
  return {{"alphas", alphas}, {"betas", betas}};
}

Json to_json(const DelzantReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"vertex", f.vertex},
                        {"coords", vector(f.coords)},
                        {"active", indices(f.active)},
                        {"determinant", f.determinant.str()},
                        {"reason", f.reason}});
  return {{"delzant", report.delzant()}, {"simple", report.simple}, {"rational", report.rational},
          {"smooth", report.smooth},     {"partial", report.partial}, {"failures", failures}};
}

Json to_json(const ValidityReport& report) {
  return {{"samples", report.samples},
          {"min_eigenvalue", number(report.min_eigenvalue)},
          {"min_det_product", number(report.min_det_product)},
          {"max_det_product", number(report.max_det_product)},
          {"indefinite", report.indefinite},
          {"nonpositive_product", report.nonpositive_product},
          {"pass", report.pass}};
}

Json to_json(const ContinuityReport& report) {
  Json steps = Json::array();
  for (const auto& s : report.steps)
    steps.push_back(
        {{"k", s.k}, {"distance", number(s.distance)}, {"estimate", number(s.estimate)}, {"gap", number(s.gap)}});
  return {{"target", number(report.target)},
          {"steps", steps},
          {"monotone", report.monotone},
          {"tolerance", number(report.tolerance)},
          {"pass", report.pass}};
}

Json to_json(const Pythagoras54Report& report) {
  return {{"face_divergence", number(report.face_divergence)},
          {"foot_divergence", number(report.foot_divergence)},
          {"total_divergence", number(report.total_divergence)},
          {"residual", number(report.residual)},
          {"perp_defect", number(report.perp_defect)}};
}

Json to_json(const Pythagoras55Report& report) {
  return {{"residual", number(report.residual)}, {"perp_value", number(report.perp_value)}};
}

Json to_json(const ProductCheckReport& report) {
  return {{"configurations", report.configurations},
          {"additivity_residual", number(report.additivity_residual)},
          {"bottom_face_residual", number(report.bottom_face_residual)},
          {"side_face_residual", number(report.side_face_residual)},
          {"additivity_tolerance", number(report.additivity_tolerance)},
          {"pythagoras_tolerance", number(report.pythagoras_tolerance)},
          {"pass", report.pass}};
}

Json to_json(const TorificationReport& report) {
  return {{"polytope", to_json(report.polytope)},
          {"delzant", to_json(report.delzant)},
          {"zero_sum", report.zero_sum},
          {"compact_torification", report.compact_torification}};
}

Problem parse_problem(const Json& j) {
  Polytope p = parse_polytope(j.contains("polytope") ? j["polytope"] : j);
  if (j.contains("potential")) {
    SymplecticPotential phi = parse_potential(j["potential"], &p);
    if (phi.dim() != p.dim()) fail("potential and polytope dimensions differ");
    return {std::move(p), std::move(phi)};
  }
  const double scale = j.contains("scale") ? parse_real(j["scale"]) : 0.5;
  SymplecticPotential phi = guillemin(p, scale);
  return {std::move(p), std::move(phi)};
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path + ": " + e.what());
  }
}

}  // namespace delzant::io
