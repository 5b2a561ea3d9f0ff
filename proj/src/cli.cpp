#include "delzant/cli.hpp"

#include "delzant/error.hpp"
#include "delzant/mixture.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace delzant::cli {

namespace {

using io::Json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  Json json;
  std::optional<Table> table;  // CSV layout; reports without one are flattened
  bool pass = true;
};

std::string join_indices(const IndexSet& set) {
  std::string s;
  for (Index r : set) s += (s.empty() ? "" : ";") + std::to_string(r);
  return s;
}

void append(std::vector<std::string>& row, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(io::format_number(v[i]));
}

void add_columns(std::vector<std::string>& header, const std::string& prefix, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) header.push_back(prefix + std::to_string(i));
}

void flatten(const Json& j, const std::string& path, Table& table) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), table);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), table);
  } else if (j.is_array()) {
    std::string s;
    for (const auto& v : j) s += (s.empty() ? "" : ";") + (v.is_string() ? v.get<std::string>() : v.dump());
    table.rows.push_back({path, s});
  } else {
    table.rows.push_back({path, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write(const Output& o, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << o.json.dump(2) << "\n";
    return;
  }
  Table table;
  if (o.table) {
    table = *o.table;
  } else {
    table.header = {"key", "value"};
    flatten(o.json, "", table);
  }
  auto line = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

Json load(const std::string& path) {
  try {
    return io::read_file(path);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

template <typename F>
auto parse_stage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

IndexSet parse_face(const std::string& text, const Polytope& p) {
  IndexSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad facet index \"" + item + "\"");
    }
    if (used != item.size() || v >= p.num_facets()) throw InputError("bad facet index \"" + item + "\"");
    out.push_back(static_cast<Index>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Json chart_json(const FaceChart& chart) {
  Json origin = Json::array();
  for (const auto& v : chart.origin()) origin.push_back(format_rational(v));
  Json basis = Json::array();
  for (std::size_t i = 0; i < chart.basis().rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < chart.basis().cols(); ++j) row.push_back(chart.basis()(i, j).str());
    basis.push_back(row);
  }
  return {{"active", io::indices(chart.active())}, {"origin", origin}, {"basis", basis}};
}

Output run_validate(const RunConfig& c) {
  const Json input = load(c.input_path);
  const bool has_potential = input.is_object() && input.contains("potential");
  const io::Problem problem = parse_stage([&] { return io::parse_problem(input); });
  const Polytope& p = problem.polytope;

  Output o;
  const DelzantReport report = validate_delzant(p);
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json exact = Json::array();
    for (const auto& x : v.exact) exact.push_back(format_rational(x));
    verts.push_back({{"coords", exact}, {"active", io::indices(v.active)}});
  }
  o.json = {{"command", "validate"},
            {"dim", p.dim()},
            {"facets", p.num_facets()},
            {"bounded", p.bounded()},
            {"vertices", verts},
            {"delzant", io::to_json(report)},
            {"zero_sum", zero_sum_check(p)}};
  o.pass = report.delzant();
  if (has_potential && p.bounded()) {
    const ValidityReport v = validity_scan(problem.potential, p, 700);
    o.json["potential_scan"] = io::to_json(v);
    o.pass = o.pass && v.pass;
  }
  o.json["pass"] = o.pass;
  return o;
}

std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> parse_pairs(const Json& j, const char* key) {
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> out;
  if (!j.contains(key)) return out;
  for (const auto& pair : j.at(key)) {
    if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::InvalidInput, std::string("each entry of \"") + key + "\" must be a pair");
    out.emplace_back(io::parse_vector(pair[0]), io::parse_vector(pair[1]));
  }
  return out;
}

Output run_divergence(const RunConfig& c) {
  const Json input = load(c.input_path);
  const Json points = load(c.aux_path);
  const io::Problem problem = parse_stage([&] { return io::parse_problem(input); });
  auto pairs = parse_stage([&] {
    auto out = parse_pairs(points, "pairs");
    if (points.contains("points")) {
      std::vector<Eigen::VectorXd> list;
      for (const auto& v : points["points"]) list.push_back(io::parse_vector(v));
      for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t k = 0; k < list.size(); ++k)
          if (i != k) out.emplace_back(list[i], list[k]);
    }
    for (const auto& [a, b] : out)
      if (static_cast<std::size_t>(a.size()) != problem.polytope.dim() || static_cast<std::size_t>(b.size()) != problem.polytope.dim())
        throw Error(ErrorKind::InvalidInput, "point dimension does not match the polytope");
    return out;
  });

  const Polytope& p = problem.polytope;
  const SymplecticPotential& phi = problem.potential;
  std::optional<MixtureFamily> family;
  if (zero_sum_check(p) && p.bounded()) family = to_mixture(p);

  Output o;
  Table t;
  add_columns(t.header, "x", p.dim());
  add_columns(t.header, "xp", p.dim());
  t.header.insert(t.header.end(), {"bregman", "bregman_expanded"});
  if (family) t.header.push_back("kl");
  Json rows = Json::array();
  for (const auto& [a, b] : pairs) {
    const double d = bregman(phi, a, b);
    const double e = bregman_expanded(phi, a, b);
    Json row = {{"x", io::vector(a)}, {"x_prime", io::vector(b)}, {"bregman", io::number(d)}, {"bregman_expanded", io::number(e)}};
    std::vector<std::string> csv;
    append(csv, a);
    append(csv, b);
    csv.push_back(io::format_number(d));
    csv.push_back(io::format_number(e));
    if (family) {
      const double k = kl(*family, a, b);
      row["kl"] = io::number(k);
      csv.push_back(io::format_number(k));
    }
    rows.push_back(row);
    t.rows.push_back(std::move(csv));
  }
  o.json = {{"command", "divergence"}, {"scale", io::number(phi.scale())}, {"rows", rows}};
  o.table = std::move(t);
  return o;
}

Output run_geodesic(const RunConfig& c) {
  const Json input = load(c.input_path);
  const Json spec_json = load(c.aux_path);
  const io::Problem problem = parse_stage([&] { return io::parse_problem(input); });
  struct Parsed {
    GeodesicSpec spec;
    std::vector<double> grid;
  };
  const Parsed parsed = parse_stage([&] {
    Parsed out;
    const std::string kind = spec_json.at("kind").get<std::string>();
    if (kind == "flat") out.spec.kind = GeodesicKind::Flat;
    else if (kind == "dual") out.spec.kind = GeodesicKind::Dual;
    else throw Error(ErrorKind::InvalidInput, "geodesic kind must be \"flat\" or \"dual\"");
    out.spec.start = io::parse_vector(spec_json.at("start"));
    out.spec.direction = io::parse_vector(spec_json.at("direction"));
    if (static_cast<std::size_t>(out.spec.start.size()) != problem.polytope.dim() ||
        out.spec.direction.size() != out.spec.start.size())
      throw Error(ErrorKind::InvalidInput, "start and direction must match the polytope dimension");
    if (spec_json.contains("t_grid")) {
      for (const auto& t : spec_json["t_grid"]) out.grid.push_back(io::parse_real(t));
    } else {
      out.grid = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    }
    return out;
  });

  const SymplecticPotential& phi = problem.potential;
  const std::size_t n = problem.polytope.dim();
  Output o;
  Table t;
  t.header = {"t"};
  add_columns(t.header, "x", n);
  add_columns(t.header, "y", n);
  t.header.push_back("face");
  Json rows = Json::array();
  o.json = {{"command", "geodesic"}, {"kind", parsed.spec.kind == GeodesicKind::Flat ? "flat" : "dual"}};

  const double exit = parsed.spec.kind == GeodesicKind::Flat ? flat_exit_time(phi, parsed.spec) : INFINITY;
  for (double tv : parsed.grid) {
    if (parsed.spec.kind == GeodesicKind::Flat && !phi.in_domain(parsed.spec.start + tv * parsed.spec.direction)) {
      o.json["truncated_at"] = io::number(tv);
      o.json["exit_time"] = io::number(exit);
      std::vector<std::string> csv{io::format_number(exit)};
      append(csv, parsed.spec.start + exit * parsed.spec.direction);
      for (std::size_t i = 0; i < n; ++i) csv.emplace_back();
      csv.emplace_back("exit");
      t.rows.push_back(std::move(csv));
      break;
    }
    const Eigen::VectorXd x = geodesic_point(phi, parsed.spec, tv);
    const Eigen::VectorXd y = grad(phi, x);
    rows.push_back({{"t", io::number(tv)}, {"x", io::vector(x)}, {"y", io::vector(y)}});
    std::vector<std::string> csv{io::format_number(tv)};
    append(csv, x);
    append(csv, y);
    csv.emplace_back();
    t.rows.push_back(std::move(csv));
  }
  o.json["rows"] = rows;
  if (parsed.spec.kind == GeodesicKind::Dual && problem.polytope.bounded() &&
      parsed.spec.direction.lpNorm<Eigen::Infinity>() > 0.0) {
    const GeodesicLimit limit = dual_geodesic_limit(phi, problem.polytope, parsed.spec);
    o.json["limit"] = {{"t", "inf"},
                       {"x", io::vector(limit.point)},
                       {"face", io::indices(limit.face)},
                       {"face_solve", limit.face_solve}};
    std::vector<std::string> csv{"inf"};
    append(csv, limit.point);
    for (std::size_t i = 0; i < n; ++i) csv.emplace_back();
    csv.push_back(join_indices(limit.face));
    t.rows.push_back(std::move(csv));
  }
  o.table = std::move(t);
  return o;
}

Output run_boundary(const RunConfig& c) {
  const Json input = load(c.input_path);
  const Json points = load(c.aux_path);
  const io::Problem problem = parse_stage([&] { return io::parse_problem(input); });
  const Polytope& p = problem.polytope;
  const SymplecticPotential& phi = problem.potential;
  const IndexSet active = parse_face(c.face, p);

  struct Parsed {
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs, limits;
    std::vector<Eigen::VectorXd> project;
    std::optional<RationalVector> origin;
    int k_max = 8;
  };
  const Parsed in = parse_stage([&] {
    Parsed out;
    out.pairs = parse_pairs(points, "pairs");
    out.limits = parse_pairs(points, "limits");
    if (points.contains("project"))
      for (const auto& v : points["project"]) out.project.push_back(io::parse_vector(v));
    if (points.contains("origin")) {
      RationalVector origin;
      for (const auto& v : points["origin"]) origin.push_back(io::parse_exact(v));
      out.origin = std::move(origin);
    }
    out.k_max = points.value("k_max", 8);
    return out;
  });

  FaceChart chart = face_chart(p, active);
  if (in.origin) chart = chart.with_origin(*in.origin, false);
  const std::size_t n = p.dim();

  Output o;
  Table t;
  t.header = {"kind", "i"};
  add_columns(t.header, "a", n);
  add_columns(t.header, "b", n);
  t.header.insert(t.header.end(), {"value", "status"});

  Json pairs = Json::array();
  for (std::size_t i = 0; i < in.pairs.size(); ++i) {
    const auto eta = BoundaryPoint::from_ambient(chart, in.pairs[i].first);
    const auto eta_prime = BoundaryPoint::from_ambient(chart, in.pairs[i].second);
    const double d = boundary_divergence(phi, chart, eta, eta_prime);
    const ContinuityReport cont = continuity_check(phi, chart, eta, eta_prime, in.k_max);
    o.pass = o.pass && cont.pass;
    pairs.push_back({{"eta", io::vector(eta.ambient())},
                     {"eta_prime", io::vector(eta_prime.ambient())},
                     {"eta_chart", io::vector(eta.chart_coords())},
                     {"eta_prime_chart", io::vector(eta_prime.chart_coords())},
                     {"boundary_divergence", io::number(d)},
                     {"continuity", io::to_json(cont)}});
    std::vector<std::string> row{"pair", std::to_string(i)};
    append(row, eta.ambient());
    append(row, eta_prime.ambient());
    row.push_back(io::format_number(d));
    row.push_back(cont.pass ? "continuity_pass" : "continuity_fail");
    t.rows.push_back(std::move(row));
  }

  Json limits = Json::array();
  for (std::size_t i = 0; i < in.limits.size(); ++i) {
    const auto eta = BoundaryPoint::from_ambient(chart, in.limits[i].first);
    const double d = limit_divergence(phi, chart, eta, in.limits[i].second);
    limits.push_back({{"eta", io::vector(eta.ambient())}, {"xi_prime", io::vector(in.limits[i].second)}, {"limit_divergence", io::number(d)}});
    std::vector<std::string> row{"limit", std::to_string(i)};
    append(row, eta.ambient());
    append(row, in.limits[i].second);
    row.push_back(io::format_number(d));
    row.emplace_back();
    t.rows.push_back(std::move(row));
  }

  Json feet = Json::array();
  for (std::size_t i = 0; i < in.project.size(); ++i) {
    const auto foot = project_to_face(phi, chart, in.project[i]);
    const double d = limit_divergence(phi, chart, foot, in.project[i]);
    feet.push_back({{"xi", io::vector(in.project[i])},
                    {"foot", io::vector(foot.ambient())},
                    {"foot_chart", io::vector(foot.chart_coords())},
                    {"limit_divergence", io::number(d)}});
    std::vector<std::string> row{"project", std::to_string(i)};
    append(row, in.project[i]);
    append(row, foot.ambient());
    row.push_back(io::format_number(d));
    row.emplace_back();
    t.rows.push_back(std::move(row));
  }

  o.json = {{"command", "boundary"}, {"chart", chart_json(chart)}, {"pairs", pairs}, {"limits", limits}, {"projections", feet}, {"pass", o.pass}};
  o.table = std::move(t);
  return o;
}

Json run_one_triple(const io::Problem& problem, const Json& j, const Tolerances& tol, bool& pass) {
  const Polytope& p = problem.polytope;
  const SymplecticPotential& phi = problem.potential;
  struct Parsed {
    std::string right_angle;  // "foot": at the foot on the face; "interior": at ξ
    IndexSet face;
    Eigen::VectorXd eta, xi, xi_prime;
    std::optional<Eigen::VectorXd> eta_prime;
  };
  const Parsed in = parse_stage([&] {
    Parsed out;
    out.right_angle = j.value("right_angle", std::string("foot"));
    if (out.right_angle != "foot" && out.right_angle != "interior")
      throw Error(ErrorKind::InvalidInput, "right_angle must be \"foot\" or \"interior\"");
    for (const auto& r : j.at("face")) {
      const auto v = r.get<std::size_t>();
      if (v >= p.num_facets()) throw Error(ErrorKind::InvalidInput, "facet index out of range");
      out.face.push_back(v);
    }
    std::sort(out.face.begin(), out.face.end());
    out.eta = io::parse_vector(j.at("eta"));
    out.xi = io::parse_vector(j.at("xi"));
    if (j.contains("eta_prime")) out.eta_prime = io::parse_vector(j["eta_prime"]);
    if (out.right_angle == "interior") out.xi_prime = io::parse_vector(j.at("xi_prime"));
    return out;
  });

  const FaceChart chart = face_chart(p, in.face);
  const auto eta = BoundaryPoint::from_ambient(chart, in.eta);
  if (in.right_angle == "foot") {
    const BoundaryPoint foot = in.eta_prime ? BoundaryPoint::from_ambient(chart, *in.eta_prime) : project_to_face(phi, chart, in.xi);
    const Pythagoras54Report rep = pythagoras_54(phi, chart, eta, foot, in.xi);
    const double t = tol.get("pythagoras_54");
    const bool ok = std::abs(rep.residual) <= t;
    pass = pass && ok;
    Json out = io::to_json(rep);
    out["right_angle"] = "foot";
    out["eta"] = io::vector(eta.ambient());
    out["eta_prime"] = io::vector(foot.ambient());
    out["eta_prime_projected"] = !in.eta_prime.has_value();
    out["xi"] = io::vector(in.xi);
    out["tolerance"] = io::number(t);
    out["pass"] = ok;
    return out;
  }
  const Pythagoras55Report rep = pythagoras_55(phi, chart, eta, in.xi, in.xi_prime);
  const double t = tol.get("pythagoras_55");
  const bool ok = std::abs(rep.residual - rep.perp_value) <= t;
  pass = pass && ok;
  Json out = io::to_json(rep);
  out["right_angle"] = "interior";
  out["orthogonal"] = std::abs(rep.perp_value) <= t;
  out["tolerance"] = io::number(t);
  out["pass"] = ok;
  return out;
}

Output run_pythagoras(const RunConfig& c) {
  const Json input = load(c.input_path);
  const Json triple = load(c.aux_path);
  const io::Problem problem = parse_stage([&] { return io::parse_problem(input); });
  Output o;
  Json results = Json::array();
  if (triple.contains("triples")) {
    for (const auto& j : triple["triples"]) results.push_back(run_one_triple(problem, j, c.tolerances, o.pass));
  } else {
    results.push_back(run_one_triple(problem, triple, c.tolerances, o.pass));
  }
  o.json = {{"command", "pythagoras"}, {"results", results}, {"pass", o.pass}};
  return o;
}

Output run_torify(const RunConfig& c) {
  const Json input = load(c.input_path);
  Output o;
  if (input.is_object() && input.contains("alphas")) {
    const MixtureFamily family = parse_stage([&] { return io::parse_mixture(input); });
    o.json = {{"command", "torify"}, {"direction", "mixture_to_polytope"}, {"mixture", io::to_json(family)}};
    try {
      const TorificationReport rep = from_mixture(family);
      o.json["report"] = io::to_json(rep);
      o.pass = rep.compact_torification;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoCompactTorification) throw;
      o.json["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
      o.pass = false;
    }
  } else {
    const io::Problem problem = parse_stage([&] { return io::parse_problem(input); });
    const bool zero_sum = zero_sum_check(problem.polytope);
    o.json = {{"command", "torify"}, {"direction", "polytope_to_mixture"}, {"zero_sum", zero_sum}};
    try {
      o.json["mixture"] = io::to_json(to_mixture(problem.polytope));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotTorifiable && e.kind() != ErrorKind::Degenerate) throw;
      o.json["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
      o.pass = false;
    }
  }
  o.json["pass"] = o.pass;
  return o;
}

Output run_verify_all(const RunConfig& c) {
  const Json input = load(c.input_path);
  const std::vector<Scenario> scenarios = parse_stage([&] {
    std::vector<Scenario> out;
    if (input.contains("scenarios")) {
      for (const auto& s : input["scenarios"]) out.push_back(parse_scenario(s));
    } else {
      out.push_back(parse_scenario(input));
    }
    return out;
  });

  Output o;
  Table t;
  t.header = {"scenario", "check", "residual", "tolerance", "pass"};
  Json list = Json::array();
  for (const auto& s : scenarios) {
    const auto checks = verify_scenario(s, c.seed, c.tolerances);
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : checks) {
      arr.push_back(to_json(r));
      all = all && r.pass;
      t.rows.push_back({s.name, r.check, io::format_number(r.residual), io::format_number(r.tolerance), r.pass ? "true" : "false"});
    }
    list.push_back({{"name", s.name}, {"checks", arr}, {"pass", all}});
    o.pass = o.pass && all;
  }
  o.json = {{"command", "verify-all"}, {"seed", c.seed}, {"scenarios", list}, {"pass", o.pass}};
  o.table = std::move(t);
  return o;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Output result;
  try {
    switch (config.command) {
      case Command::Validate: result = run_validate(config); break;
      case Command::Divergence: result = run_divergence(config); break;
      case Command::Geodesic: result = run_geodesic(config); break;
      case Command::Boundary: result = run_boundary(config); break;
      case Command::Pythagoras: result = run_pythagoras(config); break;
      case Command::Torify: result = run_torify(config); break;
      case Command::VerifyAll: result = run_verify_all(config); break;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }

  if (config.output_path.empty()) {
    write(result, config.format, out);
  } else {
    std::ofstream file(config.output_path);
    if (!file) {
      err << "error: cannot write " << config.output_path << "\n";
      return kInputError;
    }
    write(result, config.format, file);
  }
  return result.pass ? kOk : kCheckFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delzant polytopes, symplectic potentials and their dually flat structure"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "json";
  std::vector<std::string> tol_overrides;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", config.seed, "Seed for random sampling");
  app.add_option("--tol", tol_overrides, "Tolerance override name=value")->take_all();
  app.add_option("--out", config.output_path, "Output file (default stdout)");

  struct Sub {
    const char* name;
    Command command;
    const char* help;
    const char* aux;
  };
  const Sub subs[] = {
      {"validate", Command::Validate, "Delzant and zero-sum report", nullptr},
      {"divergence", Command::Divergence, "Bregman divergence table", "--points"},
      {"geodesic", Command::Geodesic, "Flat or dual geodesic trace", "--spec"},
      {"boundary", Command::Boundary, "Boundary and limit divergences on a face", "--points"},
      {"pythagoras", Command::Pythagoras, "Boundary Pythagorean relations", "--triple"},
      {"torify", Command::Torify, "Mixture family <-> polytope", nullptr},
      {"verify-all", Command::VerifyAll, "Run every check on scenario files", nullptr},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("file", config.input_path, "Input JSON")->required();
    if (s.aux) sub->add_option(s.aux, config.aux_path, "Auxiliary JSON")->required();
    if (s.command == Command::Boundary) sub->add_option("--face", config.face, "Facet indices, comma separated")->required();
    const Command command = s.command;
    sub->callback([&config, command] { config.command = command; });
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  config.format = format == "csv" ? Format::Csv : Format::Json;
  for (const auto& item : tol_overrides) {
    const auto eq = item.find('=');
    try {
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "expected name=value");
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      const double v = std::stod(value, &used);
      if (used != value.size()) throw Error(ErrorKind::InvalidInput, "bad number");
      config.tolerances.set(item.substr(0, eq), v);
    } catch (const std::exception& e) {
      err << "error: bad --tol \"" << item << "\": " << e.what() << "\n";
      return kInputError;
    }
  }
  return execute(config, out, err);
}

}  // namespace delzant::cli
