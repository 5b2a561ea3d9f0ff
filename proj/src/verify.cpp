#include "delzant/verify.hpp"

#include "delzant/error.hpp"
#include "delzant/mixture.hpp"
#include "delzant/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace delzant {

namespace {

CheckReport make(std::string name, io::Json inputs, double residual, double tolerance) {
  return {std::move(name), std::move(inputs), residual, tolerance, residual <= tolerance};
}

std::size_t count(const io::Json& j, const char* name, std::size_t fallback) {
  if (!j.contains(name)) return fallback;
  if (!j[name].is_number_unsigned()) throw Error(ErrorKind::InvalidInput, std::string("sample count \"") + name + "\" must be a nonnegative integer");
  return j[name].get<std::size_t>();
}

// A foot η' of a random ξ'' on the facet chart, with a random η on the same
// face. Draws whose foot falls on ∂F are redrawn.
struct FootDraw {
  Eigen::VectorXd xi;
  BoundaryPoint eta;
  BoundaryPoint foot;
};

std::optional<FootDraw> draw_foot(const SymplecticPotential& phi, const FaceChart& chart, Rng& rng, double shift) {
  const Polytope& p = chart.parent();
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Eigen::VectorXd xi = random_interior_point(p, rng);
    std::optional<BoundaryPoint> foot;
    try {
      foot = project_to_face(phi, chart, xi);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryOfFace) throw;
      continue;
    }
    const Eigen::VectorXd eta_amb = random_face_point(chart, rng);
    BoundaryPoint eta = BoundaryPoint::from_ambient(chart, eta_amb);
    if (shift > 0.0) {
      const Eigen::VectorXd diff = foot->chart_coords() - eta.chart_coords();
      if (diff.norm() == 0.0) continue;
      const Eigen::VectorXd moved = foot->chart_coords() + shift * diff / diff.norm();
      try {
        foot = BoundaryPoint::from_chart(chart, moved);
      } catch (const Error&) {
        continue;
      }
    }
    return FootDraw{xi, std::move(eta), std::move(*foot)};
  }
  return std::nullopt;
}

}  // namespace

io::Json to_json(const CheckReport& report) {
  return {{"check", report.check},
          {"inputs", report.inputs},
          {"residual", io::number(report.residual)},
          {"tolerance", io::number(report.tolerance)},
          {"pass", report.pass}};
}

Tolerances::Tolerances()
    : values_{{"roundtrip", 1e-9},  {"expanded", 1e-10},   {"cosine", 1e-9},      {"continuity", 1e-5},
              {"pythagoras_54", 1e-8}, {"pythagoras_55", 1e-9}, {"kl", 1e-12},     {"normalization", 1e-14},
              {"additivity", 1e-10}, {"product", 1e-9}} {}

double Tolerances::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw Error(ErrorKind::InvalidInput, "unknown tolerance \"" + name + "\"");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  get(name);
  if (!(value >= 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be nonnegative");
  values_[name] = value;
}

Scenario parse_scenario(const io::Json& j) {
  io::Problem problem = io::parse_problem(j);
  Scenario s{j.value("name", std::string("scenario")), std::move(problem.polytope), std::move(problem.potential), {}, 0.0};
  if (j.contains("samples")) {
    const io::Json& c = j["samples"];
    SampleCounts& n = s.samples;
    n.roundtrip = count(c, "roundtrip", n.roundtrip);
    n.expanded = count(c, "expanded", n.expanded);
    n.cosine = count(c, "cosine", n.cosine);
    n.continuity = count(c, "continuity", n.continuity);
    n.pythagoras_54 = count(c, "pythagoras_54", n.pythagoras_54);
    n.pythagoras_55 = count(c, "pythagoras_55", n.pythagoras_55);
    n.orthogonal = count(c, "orthogonal", n.orthogonal);
    n.kl = count(c, "kl", n.kl);
    n.product = count(c, "product", n.product);
  }
  if (j.contains("eta_prime_shift")) s.eta_prime_shift = io::parse_real(j["eta_prime_shift"]);
  return s;
}

std::vector<CheckReport> verify_scenario(const Scenario& scenario, std::uint64_t seed, const Tolerances& tol) {
  const Polytope& p = scenario.polytope;
  const SymplecticPotential& phi = scenario.potential;
  const SampleCounts& n = scenario.samples;
  Rng rng(seed);
  std::vector<CheckReport> out;

  const DelzantReport delzant = validate_delzant(p);
  out.push_back({"delzant", io::to_json(delzant), delzant.delzant() ? 0.0 : 1.0, 0.0, delzant.delzant()});

  {
    double worst = 0.0;
    for (std::size_t i = 0; i < n.roundtrip; ++i) {
      const Eigen::VectorXd x = random_interior_point(p, rng);
      const DualPair back = solve_dual(phi, to_dual(phi, x).y, p.interior_point_d()).pair;
      worst = std::max(worst, (back.x - x).lpNorm<Eigen::Infinity>());
    }
    out.push_back(make("legendre_roundtrip", {{"points", n.roundtrip}}, worst, tol.get("roundtrip")));
  }

  {
    double worst = 0.0;
    for (std::size_t i = 0; i < n.expanded; ++i) {
      const Eigen::VectorXd a = random_interior_point(p, rng);
      const Eigen::VectorXd b = random_interior_point(p, rng);
      worst = std::max(worst, std::abs(bregman(phi, a, b) - bregman_expanded(phi, a, b)));
    }
    out.push_back(make("bregman_expanded", {{"pairs", n.expanded}}, worst, tol.get("expanded")));
  }

  {
    double worst = 0.0;
    for (std::size_t i = 0; i < n.cosine; ++i) {
      const Eigen::VectorXd a = random_interior_point(p, rng);
      const Eigen::VectorXd b = random_interior_point(p, rng);
      const Eigen::VectorXd c = random_interior_point(p, rng);
      const double pairing = (a - b).dot(grad(phi, c) - grad(phi, b));
      const double three = bregman(phi, a, b) + bregman(phi, b, c) - bregman(phi, a, c);
      worst = std::max(worst, std::abs(three - pairing));
    }
    out.push_back(make("cosine_identity", {{"triples", n.cosine}}, worst, tol.get("cosine")));
  }

  std::vector<FaceChart> facets;
  for (Index r = 0; r < p.num_facets(); ++r) facets.push_back(face_chart(p, {r}));

  {
    double worst = 0.0;
    bool monotone = true;
    for (const auto& chart : facets) {
      for (std::size_t i = 0; i < n.continuity; ++i) {
        const auto eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const auto eta_prime = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const ContinuityReport rep = continuity_check(phi, chart, eta, eta_prime, 8);
        worst = std::max(worst, rep.steps.back().gap);
        monotone = monotone && rep.monotone;
      }
    }
    CheckReport c = make("continuity", {{"facets", facets.size()}, {"pairs_per_facet", n.continuity}, {"k_max", 8},
                                        {"monotone", monotone}},
                         worst, tol.get("continuity"));
    c.pass = c.pass && monotone;
    out.push_back(std::move(c));
  }

  {
    double worst = 0.0;
    double worst_defect = 0.0;
    std::size_t done = 0;
    for (std::size_t i = 0; i < n.pythagoras_54 && !facets.empty(); ++i) {
      const FaceChart& chart = facets[i % facets.size()];
      const auto draw = draw_foot(phi, chart, rng, scenario.eta_prime_shift);
      if (!draw) continue;
      const Pythagoras54Report rep = pythagoras_54(phi, chart, draw->eta, draw->foot, draw->xi);
      worst = std::max(worst, std::abs(rep.residual));
      worst_defect = std::max(worst_defect, rep.perp_defect);
      ++done;
    }
    CheckReport c = make("pythagoras_54",
                         {{"draws", done}, {"eta_prime_shift", io::number(scenario.eta_prime_shift)},
                          {"max_perp_defect", io::number(worst_defect)}},
                         worst, tol.get("pythagoras_54"));
    c.pass = c.pass && done == n.pythagoras_54;
    out.push_back(std::move(c));
  }

  {
    double worst = 0.0;
    for (std::size_t i = 0; i < n.pythagoras_55 && !facets.empty(); ++i) {
      const FaceChart& chart = facets[i % facets.size()];
      const auto eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
      const Eigen::VectorXd a = random_interior_point(p, rng);
      const Eigen::VectorXd b = random_interior_point(p, rng);
      const Pythagoras55Report rep = pythagoras_55(phi, chart, eta, a, b);
      worst = std::max(worst, std::abs(rep.residual - rep.perp_value));
    }
    out.push_back(make("pythagoras_55_identity", {{"triples", n.pythagoras_55}}, worst, tol.get("pythagoras_55")));
  }

  {
    double worst = 0.0;
    for (std::size_t i = 0; i < n.orthogonal && !facets.empty(); ++i) {
      const FaceChart& chart = facets[i % facets.size()];
      const auto eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
      const Eigen::VectorXd a = random_interior_point(p, rng);
      const Eigen::VectorXd d = eta.ambient() - a;
      Eigen::VectorXd w(a.size());
      for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = rng.uniform(-1.0, 1.0);
      w -= d * (d.dot(w) / d.squaredNorm());
      const Eigen::VectorXd b = solve_dual(phi, grad(phi, a) + w, a).pair.x;
      worst = std::max(worst, std::abs(pythagoras_55(phi, chart, eta, a, b).residual));
    }
    out.push_back(make("pythagoras_55_orthogonal", {{"triples", n.orthogonal}}, worst, tol.get("pythagoras_55")));
  }

  if (zero_sum_check(p) && p.bounded()) {
    const MixtureFamily family = to_mixture(p);
    Rational total = 0;
    for (const auto& h : p.halfspaces()) total += h.offset;
    const double s = phi.scale();
    const SymplecticPotential g = guillemin(p, s);
    double worst = 0.0;
    double worst_sum = 0.0;
    for (std::size_t i = 0; i < n.kl; ++i) {
      const Eigen::VectorXd a = random_interior_point(p, rng);
      const Eigen::VectorXd b = random_interior_point(p, rng);
      worst = std::max(worst, std::abs(bregman(g, a, b) - s * to_double(total) * kl(family, a, b)));
      worst_sum = std::max(worst_sum, std::abs(family.probabilities(a).sum() - 1.0));
    }
    out.push_back(make("kl_relation", {{"pairs", n.kl}, {"scale", io::number(s)}, {"offset_sum", format_rational(total)}},
                       worst, tol.get("kl")));
    out.push_back(make("mixture_normalization", {{"points", n.kl}}, worst_sum, tol.get("normalization")));
  } else {
    out.push_back({"kl_relation", {{"skipped", "not zero-sum"}}, 0.0, tol.get("kl"), true});
  }

  if (p.bounded() && n.product > 0) {
    const ProductCheckReport rep = product_boundary_check(p, phi.scale(), rng, n.product);
    io::Json inputs = {{"configurations", n.product}, {"scale", io::number(phi.scale())}};
    out.push_back(make("product_additivity", inputs, rep.additivity_residual, tol.get("additivity")));
    out.push_back(make("product_bottom_face", inputs, rep.bottom_face_residual, tol.get("product")));
    out.push_back(make("product_side_face", inputs, rep.side_face_residual, tol.get("product")));
  }
  return out;
}

}  // namespace delzant
