#include "delzant/dually_flat.hpp"

#include "delzant/error.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <sstream>

namespace delzant {

namespace {

constexpr double kResidualTolerance = 1e-10;
constexpr int kMaxIterations = 200;
constexpr double kEscapeNorm = 1e12;

void check_dim(const SymplecticPotential& phi, const Eigen::VectorXd& v, const char* what) {
  if (static_cast<std::size_t>(v.size()) != phi.dim()) {
    std::ostringstream msg;
    msg << what << " has dimension " << v.size() << ", expected " << phi.dim();
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

void check_interior(const SymplecticPotential& phi, const Eigen::VectorXd& x, const char* what) {
  check_dim(phi, x, what);
  if (!phi.in_domain(x)) throw Error(ErrorKind::Domain, std::string(what) + " is not in the open domain");
}

// The limit lies on the face F_v maximizing v·ξ (ties within 1e-12), at the
// point of F_v∘ whose restricted gradient equals Bᵀ grad φ(start).
Eigen::VectorXd face_foot(const SymplecticPotential& phi, const Polytope& p, const GeodesicSpec& spec) {
  const auto& verts = p.vertices();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts) best = std::max(best, spec.direction.dot(v.coords));
  const double tie = 1e-12 * (1.0 + std::abs(best));
  IndexSet active;
  bool first = true;
  for (const auto& v : verts) {
    if (spec.direction.dot(v.coords) < best - tie) continue;
    if (first) {
      active = v.active;
      first = false;
    } else {
      IndexSet common;
      std::set_intersection(active.begin(), active.end(), v.active.begin(), v.active.end(), std::back_inserter(common));
      active = std::move(common);
    }
  }
  const FaceChart chart = face_chart(p, active);
  if (chart.dim_face() == 0) return chart.origin_d();
  const SymplecticPotential restricted = restrict_potential(phi, chart);
  const Eigen::VectorXd target = chart.basis_d().transpose() * grad(phi, spec.start);
  Eigen::VectorXd u0 = chart.to_chart(spec.start);
  if (!restricted.in_domain(u0)) u0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(chart.dim_face()));
  return chart.to_ambient(solve_dual(restricted, target, u0).pair.x);
}

}  // namespace

DualPair to_dual(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  check_interior(phi, x, "point");
  return {x, grad(phi, x)};
}

LegendreSolve solve_dual(const SymplecticPotential& phi, const Eigen::VectorXd& y, const Eigen::VectorXd& initial) {
  check_dim(phi, y, "dual coordinate");
  check_interior(phi, initial, "initial point");
  if (!y.allFinite()) throw Error(ErrorKind::InvalidInput, "dual coordinate is not finite");

  LegendreSolve out;
  Eigen::VectorXd x = initial;
  Eigen::VectorXd r = grad(phi, x) - y;
  for (int it = 0; it < kMaxIterations; ++it) {
    out.iterations = it;
    if (r.lpNorm<Eigen::Infinity>() <= kResidualTolerance) break;

    const Eigen::VectorXd d = -hessian(phi, x).ldlt().solve(r);
    if (!d.allFinite()) throw Error(ErrorKind::Numerical, "Newton direction is not finite");

    bool accepted = false;
    double step = 1.0;
    for (int halving = 0; halving < 80; ++halving, step *= 0.5) {
      const Eigen::VectorXd candidate = x + step * d;
      if (!phi.in_domain(candidate)) continue;
      Eigen::VectorXd rc = grad(phi, candidate) - y;
      if (rc.norm() < r.norm()) {
        x = candidate;
        r = std::move(rc);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      const double resolution = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x.lpNorm<Eigen::Infinity>());
      if (d.lpNorm<Eigen::Infinity>() <= resolution) {
        out.stagnated = true;
        break;
      }
      throw Error(ErrorKind::Numerical, "Newton line search failed to reduce the residual");
    }
    if (x.lpNorm<Eigen::Infinity>() > kEscapeNorm)
      throw Error(ErrorKind::NoSolution, "Newton iterate escaped to infinity: no preimage of y");
    out.iterations = it + 1;
  }

  out.residual = r.lpNorm<Eigen::Infinity>();
  if (out.residual > kResidualTolerance && !out.stagnated) {
    std::ostringstream msg;
    msg << "Newton did not converge in " << kMaxIterations << " iterations (residual " << out.residual << ")";
    throw Error(ErrorKind::NoSolution, msg.str());
  }
  out.pair = {x, grad(phi, x)};
  return out;
}

DualPair from_dual(const SymplecticPotential& phi, const Polytope& p, const Eigen::VectorXd& y) {
  return solve_dual(phi, y, p.centroid()).pair;
}

double dual_potential(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  check_interior(phi, x, "point");
  return -eval(phi, x) + x.dot(grad(phi, x));
}

double bregman(const SymplecticPotential& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime) {
  check_interior(phi, x, "first point");
  check_interior(phi, x_prime, "second point");
  return eval(phi, x) - eval(phi, x_prime) - (x - x_prime).dot(grad(phi, x_prime));
}

double bregman_expanded(const SymplecticPotential& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime) {
  check_interior(phi, x, "first point");
  check_interior(phi, x_prime, "second point");
  const Eigen::VectorXd diff = x - x_prime;
  double sum = 0.0;
  for (const auto& term : phi.log_terms()) {
    const double l = term.value(x);
    const double lp = term.value(x_prime);
    sum += term.weight * (l * std::log(l / lp) - diff.dot(term.normal));
  }
  const Polynomial& f = phi.correction();
  return phi.scale() * sum - diff.dot(f.gradient(x_prime)) + f.eval(x) - f.eval(x_prime);
}

double cosine_residual(const SymplecticPotential& phi, const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                       const Eigen::VectorXd& r) {
  const double value = (p - q).dot(grad(phi, r) - grad(phi, q));
  const double dpq = bregman(phi, p, q);
  const double dqr = bregman(phi, q, r);
  const double dpr = bregman(phi, p, r);
  const double identity = dpq + dqr - dpr;
  const double magnitude = std::abs(dpq) + std::abs(dqr) + std::abs(dpr) + std::abs(value);
  if (std::abs(identity - value) > 1e-9 * (1.0 + magnitude)) {
    std::ostringstream msg;
    msg << "three-point identity mismatch: " << identity << " vs " << value;
    throw Error(ErrorKind::Numerical, msg.str());
  }
  return value;
}

MetricPair metric_pair(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  check_interior(phi, x, "point");
  const Eigen::MatrixXd g = hessian(phi, x);
  if (!positive_definite(g)) throw Error(ErrorKind::Numerical, "Hessian is not positive definite");
  return {g, g.ldlt().solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()))};
}

double flat_exit_time(const SymplecticPotential& phi, const GeodesicSpec& spec) {
  check_interior(phi, spec.start, "geodesic start");
  check_dim(phi, spec.direction, "geodesic direction");
  return phi.exit_time(spec.start, spec.direction);
}

Eigen::VectorXd geodesic_point(const SymplecticPotential& phi, const GeodesicSpec& spec, double t) {
  check_interior(phi, spec.start, "geodesic start");
  check_dim(phi, spec.direction, "geodesic direction");
  if (spec.kind == GeodesicKind::Flat) {
    Eigen::VectorXd x = spec.start + t * spec.direction;
    if (!phi.in_domain(x)) {
      const double exit = t >= 0 ? phi.exit_time(spec.start, spec.direction) : -phi.exit_time(spec.start, -spec.direction);
      std::ostringstream msg;
      msg.precision(12);
      msg << "flat geodesic leaves the domain at t = " << exit;
      throw Error(ErrorKind::Domain, msg.str());
    }
    return x;
  }
  const Eigen::VectorXd y = grad(phi, spec.start) + t * spec.direction;
  return solve_dual(phi, y, spec.start).pair.x;
}

GeodesicLimit dual_geodesic_limit(const SymplecticPotential& phi, const Polytope& p, const GeodesicSpec& spec) {
  if (!p.bounded()) throw Error(ErrorKind::InvalidInput, "dual geodesic limit requires a bounded polytope");
  if (p.dim() != phi.dim()) throw Error(ErrorKind::InvalidInput, "potential and polytope dimensions differ");
  if (spec.kind != GeodesicKind::Dual) throw Error(ErrorKind::InvalidInput, "limit is defined for dual geodesics");
  check_interior(phi, spec.start, "geodesic start");
  check_dim(phi, spec.direction, "geodesic direction");
  if (spec.direction.lpNorm<Eigen::Infinity>() == 0.0)
    throw Error(ErrorKind::InvalidInput, "geodesic direction is zero");

  const Eigen::VectorXd y0 = grad(phi, spec.start);
  GeodesicLimit out;
  Eigen::VectorXd x = spec.start;
  Eigen::VectorXd previous = spec.start;
  int small = 0;
  bool converged = false;
  double t = 1.0;
  for (int k = 0; k <= 20; ++k, t *= 2.0) {
    try {
      x = solve_dual(phi, y0 + t * spec.direction, x).pair.x;
    } catch (const Error& e) {
      // Facet values near the limit face underflow before the schedule ends.
      if (e.kind() != ErrorKind::Numerical && e.kind() != ErrorKind::NoSolution) throw;
      break;
    }
    out.trace.emplace_back(t, x);
    small = (x - previous).lpNorm<Eigen::Infinity>() < 1e-12 ? small + 1 : 0;
    previous = x;
    if (small >= 2) {
      converged = true;
      break;
    }
  }

  Eigen::VectorXd limit = x;
  if (!converged) {
    limit = face_foot(phi, p, spec);
    out.face_solve = true;
  }

  out.point = limit;
  const Eigen::VectorXd values = p.facet_values(limit);
  for (Eigen::Index r = 0; r < values.size(); ++r)
    if (values[r] < 1e-8) out.face.push_back(static_cast<Index>(r));
  // a vertex limit is reported exactly rather than at the last iterate
  for (const Vertex& v : p.vertices())
    if (v.active == out.face) out.point = v.coords;
  return out;
}

}  // namespace delzant
