#include "delzant/boundary.hpp"

#include "delzant/error.hpp"
#include "delzant/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace delzant {

namespace {

constexpr double kOnFace = 1e-12;
constexpr double kInterior = 1e-8;

bool same_chart(const FaceChart& a, const FaceChart& b) {
  return &a.parent() == &b.parent() && a.active() == b.active() && a.origin() == b.origin() && a.basis() == b.basis();
}

// Chart coordinates of `point` with respect to `chart`, re-validating when the
// point was built on a different chart of the same face.
Eigen::VectorXd coords_in(const FaceChart& chart, const BoundaryPoint& point) {
  if (same_chart(chart, point.chart())) return point.chart_coords();
  return BoundaryPoint::from_ambient(chart, point.ambient()).chart_coords();
}

void check_inactive(const FaceChart& chart, const Eigen::VectorXd& ambient) {
  const Polytope& p = chart.parent();
  for (Index r = 0; r < p.num_facets(); ++r) {
    if (chart.is_active(r)) continue;
    const double v = p.halfspace(r).value(ambient);
    if (!(v > kInterior)) {
      std::ostringstream msg;
      msg << "point is not in the relative interior of the face: facet " << r << " has value " << v;
      throw Error(ErrorKind::BoundaryOfFace, msg.str());
    }
  }
}

void check_interior_point(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != phi.dim())
    throw Error(ErrorKind::InvalidInput, "interior point has the wrong dimension");
  if (!phi.in_domain(x)) throw Error(ErrorKind::Domain, "point is not in the interior of the polytope");
}

}  // namespace

BoundaryPoint::BoundaryPoint(std::shared_ptr<const FaceChart> chart, Eigen::VectorXd ambient,
                             Eigen::VectorXd chart_coords)
    : chart_(std::move(chart)), ambient_(std::move(ambient)), chart_coords_(std::move(chart_coords)) {}

BoundaryPoint BoundaryPoint::from_ambient(const FaceChart& chart, const Eigen::VectorXd& ambient) {
  const Polytope& p = chart.parent();
  if (static_cast<std::size_t>(ambient.size()) != p.dim())
    throw Error(ErrorKind::InvalidInput, "boundary point has the wrong dimension");
  const double tol = kOnFace * (1.0 + ambient.lpNorm<Eigen::Infinity>());
  for (Index r : chart.active()) {
    const double v = p.halfspace(r).value(ambient);
    if (std::abs(v) > tol) {
      std::ostringstream msg;
      msg << "point is not on the face: facet " << r << " has value " << v;
      throw Error(ErrorKind::InvalidInput, msg.str());
    }
  }
  check_inactive(chart, ambient);
  return BoundaryPoint(std::make_shared<const FaceChart>(chart), ambient, chart.to_chart(ambient));
}

BoundaryPoint BoundaryPoint::from_chart(const FaceChart& chart, const Eigen::VectorXd& chart_coords) {
  if (static_cast<std::size_t>(chart_coords.size()) != chart.dim_face())
    throw Error(ErrorKind::InvalidInput, "chart coordinates have the wrong dimension");
  Eigen::VectorXd ambient = chart.to_ambient(chart_coords);
  check_inactive(chart, ambient);
  return BoundaryPoint(std::make_shared<const FaceChart>(chart), std::move(ambient), chart_coords);
}

double boundary_divergence(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                           const BoundaryPoint& eta_prime) {
  const SymplecticPotential restricted = restrict_potential(phi, chart);
  return bregman(restricted, coords_in(chart, eta), coords_in(chart, eta_prime));
}

double limit_divergence(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                        const Eigen::VectorXd& xi_prime) {
  check_interior_point(phi, xi_prime);
  const Eigen::VectorXd& e = eta.ambient();
  if (!same_chart(chart, eta.chart())) BoundaryPoint::from_ambient(chart, e);
  return eval_extended(phi, e) - eval(phi, xi_prime) - (e - xi_prime).dot(grad(phi, xi_prime));
}

ContinuityReport continuity_check(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                                  const BoundaryPoint& eta_prime, int k_max) {
  if (k_max < 1) throw Error(ErrorKind::InvalidInput, "continuity check needs at least one step");
  const Polytope& p = chart.parent();
  const Eigen::VectorXd c = p.interior_point_d();
  double m_c = 1.0;
  if (!chart.active().empty()) {
    m_c = std::numeric_limits<double>::infinity();
    for (Index r : chart.active()) m_c = std::min(m_c, p.halfspace(r).value(c));
  }
  const double reach = std::min(1.0, 1.0 / m_c);
  const Eigen::VectorXd& e = eta.ambient();
  const Eigen::VectorXd& ep = eta_prime.ambient();

  ContinuityReport report;
  report.target = boundary_divergence(phi, chart, eta, eta_prime);
  for (int k = 1; k <= k_max; ++k) {
    const double tau = std::pow(10.0, -k) * reach;
    const Eigen::VectorXd outer = ep + tau * (c - ep);
    const Eigen::VectorXd inner = e + 1e-4 * tau * (c - e);
    ContinuityStep step;
    step.k = k;
    step.distance = tau * m_c;
    step.estimate = bregman(phi, inner, outer);
    step.gap = std::abs(step.estimate - report.target);
    report.steps.push_back(step);
  }
  report.monotone = true;
  const std::size_t first = report.steps.size() > 5 ? report.steps.size() - 5 : 0;
  for (std::size_t i = first + 1; i < report.steps.size(); ++i)
    if (!(report.steps[i].gap < report.steps[i - 1].gap)) report.monotone = false;
  report.pass = report.monotone && report.steps.back().gap <= report.tolerance;
  return report;
}

BoundaryPoint project_to_face(const SymplecticPotential& phi, const FaceChart& chart, const Eigen::VectorXd& xi) {
  check_interior_point(phi, xi);
  if (chart.dim_face() == 0) return BoundaryPoint::from_chart(chart, Eigen::VectorXd(0));

  const SymplecticPotential restricted = restrict_potential(phi, chart);
  const Eigen::VectorXd target = chart.basis_d().transpose() * grad(phi, xi);
  Eigen::VectorXd start = chart.to_chart(xi);
  if (!restricted.in_domain(start)) start = restrict_polytope(chart.parent(), chart).interior_point_d();

  Eigen::VectorXd u;
  try {
    u = solve_dual(restricted, target, start).pair.x;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NoSolution && err.kind() != ErrorKind::Numerical) throw;
    throw Error(ErrorKind::BoundaryOfFace, std::string("minimizer is not in the face interior: ") + err.what());
  }
  return BoundaryPoint::from_chart(chart, u);
}

Pythagoras54Report pythagoras_54(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                                 const BoundaryPoint& eta_prime, const Eigen::VectorXd& xi) {
  check_interior_point(phi, xi);
  const SymplecticPotential restricted = restrict_potential(phi, chart);
  const Eigen::VectorXd u = coords_in(chart, eta);
  const Eigen::VectorXd u_prime = coords_in(chart, eta_prime);

  Pythagoras54Report report;
  report.face_divergence = bregman(restricted, u, u_prime);
  report.foot_divergence = limit_divergence(phi, chart, eta_prime, xi);
  report.total_divergence = limit_divergence(phi, chart, eta, xi);
  report.residual = report.face_divergence + report.foot_divergence - report.total_divergence;
  const Eigen::VectorXd target = chart.basis_d().transpose() * grad(phi, xi);
  report.perp_defect =
      chart.dim_face() == 0 ? 0.0 : (grad(restricted, u_prime) - target).lpNorm<Eigen::Infinity>();
  return report;
}

Pythagoras55Report pythagoras_55(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                                 const Eigen::VectorXd& xi, const Eigen::VectorXd& xi_prime) {
  Pythagoras55Report report;
  report.residual =
      limit_divergence(phi, chart, eta, xi) + bregman(phi, xi, xi_prime) - limit_divergence(phi, chart, eta, xi_prime);
  report.perp_value = (eta.ambient() - xi).dot(grad(phi, xi_prime) - grad(phi, xi));
  return report;
}

Polytope half_line() { return Polytope(1, {HalfSpace{{1}, 0}}, false); }

ProductCheckReport product_boundary_check(const Polytope& p, double scale, Rng& rng, std::size_t configurations) {
  const std::size_t n = p.dim();
  const std::size_t facets = p.num_facets();
  if (facets == 0) throw Error(ErrorKind::InvalidInput, "polytope has no facets");
  const Polytope line = half_line();
  const Polytope prod = product(p, line);
  const SymplecticPotential phi_p = guillemin(p, scale);
  const SymplecticPotential phi_line = guillemin(line, 1.0);
  const SymplecticPotential phi = direct_sum(phi_p, phi_line);
  const FaceChart bottom = face_chart(prod, {facets});

  auto join = [n](const Eigen::VectorXd& a, double b) {
    Eigen::VectorXd v(n + 1);
    v << a, b;
    return v;
  };
  auto one = [](double v) { return Eigen::VectorXd::Constant(1, v); };

  ProductCheckReport report;
  report.configurations = configurations;
  for (std::size_t i = 0; i < configurations; ++i) {
    const Eigen::VectorXd x1 = random_interior_point(p, rng);
    const Eigen::VectorXd x1p = random_interior_point(p, rng);
    const double x2 = rng.uniform(0.05, 3.0);
    const double x2p = rng.uniform(0.05, 3.0);

    const double whole = bregman(phi, join(x1, x2), join(x1p, x2p));
    const double parts = bregman(phi_p, x1, x1p) + bregman(phi_line, one(x2), one(x2p));
    report.additivity_residual = std::max(report.additivity_residual, std::abs(whole - parts));

    const BoundaryPoint floor = BoundaryPoint::from_ambient(bottom, join(x1, 0.0));
    const double r_bottom = limit_divergence(phi, bottom, floor, join(x1p, x2)) -
                            limit_divergence(phi, bottom, floor, join(x1, x2)) -
                            bregman(phi, join(x1, x2), join(x1p, x2));
    report.bottom_face_residual = std::max(report.bottom_face_residual, std::abs(r_bottom));

    const Index r = static_cast<Index>(rng.next() % facets);
    const Eigen::VectorXd eta = random_face_point(face_chart(p, {r}), rng);
    const FaceChart side = face_chart(prod, {r});
    const BoundaryPoint wall = BoundaryPoint::from_ambient(side, join(eta, x2));
    const double r_side = limit_divergence(phi, side, wall, join(x1, x2p)) -
                          limit_divergence(phi, side, wall, join(x1, x2)) -
                          bregman(phi, join(x1, x2), join(x1, x2p));
    report.side_face_residual = std::max(report.side_face_residual, std::abs(r_side));
  }
  report.pass = report.additivity_residual <= report.additivity_tolerance &&
                report.bottom_face_residual <= report.pythagoras_tolerance &&
                report.side_face_residual <= report.pythagoras_tolerance;
  return report;
}

}  // namespace delzant
