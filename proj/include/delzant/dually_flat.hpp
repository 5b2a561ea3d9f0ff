#pragma once

#include "delzant/polytope.hpp"
#include "delzant/potential.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace delzant {

/// A point in mixture coordinates x together with its dual coordinate
/// y = grad φ(x).
struct DualPair {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

enum class GeodesicKind { Flat, Dual };

/// Flat geodesics are straight in x (velocity given in x); dual geodesics are
/// straight in y (velocity given in y).
struct GeodesicSpec {
  GeodesicKind kind = GeodesicKind::Dual;
  Eigen::VectorXd start;
  Eigen::VectorXd direction;
};

struct LegendreSolve {
  DualPair pair;
  double residual = 0.0;  // ‖grad φ(x) − y‖∞ at the returned x
  int iterations = 0;
  bool stagnated = false;  // stopped at floating-point resolution before 1e-10
};

DualPair to_dual(const SymplecticPotential& phi, const Eigen::VectorXd& x);

/// Inverts the Legendre map by damped Newton on grad φ(x) = y, starting at the
/// vertex centroid of P. Iterates are kept strictly inside the domain of φ by
/// halving the step, and a step is only accepted if the residual decreases.
/// Convergence: ‖residual‖∞ <= 1e-10, or a Newton step below floating-point
/// resolution (the facet values near ∂P cannot resolve the log terms any
/// further; the point is then as accurate as the arithmetic allows).
DualPair from_dual(const SymplecticPotential& phi, const Polytope& p, const Eigen::VectorXd& y);

/// Same, from an explicit strictly interior starting point.
LegendreSolve solve_dual(const SymplecticPotential& phi, const Eigen::VectorXd& y, const Eigen::VectorXd& initial);

/// ψ(y(ξ)) = −φ(ξ) + ξ·grad φ(ξ).
double dual_potential(const SymplecticPotential& phi, const Eigen::VectorXd& x);

/// D(ξ‖ξ') = φ(ξ) − φ(ξ') − (ξ − ξ')·grad φ(ξ').
double bregman(const SymplecticPotential& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime);

/// The facet expansion
///   s·Σ_r w_r [L_r(ξ) log(L_r(ξ)/L_r(ξ')) − (ξ − ξ')·ν_r]
///     + (ξ' − ξ)·∇f(ξ') + f(ξ) − f(ξ'),
/// evaluated term by term. Agrees with `bregman` algebraically.
double bregman_expanded(const SymplecticPotential& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime);

/// (x_p − x_q)·(y_r − y_q), which equals D(p‖q) + D(q‖r) − D(p‖r). Throws
/// ErrorKind::Numerical if the two sides disagree by more than
/// 1e-9·(1 + magnitude).
double cosine_residual(const SymplecticPotential& phi, const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                       const Eigen::VectorXd& r);

struct MetricPair {
  Eigen::MatrixXd g;      // Hess φ: the torus-base block of the toric metric
  Eigen::MatrixXd g_inv;  // the fibre block
};

/// Throws ErrorKind::Numerical if Hess φ is not positive definite.
MetricPair metric_pair(const SymplecticPotential& phi, const Eigen::VectorXd& x);

/// Flat: start + t·direction (ErrorKind::Domain with the exit time if that
/// leaves the domain). Dual: the point whose y is y(start) + t·direction.
Eigen::VectorXd geodesic_point(const SymplecticPotential& phi, const GeodesicSpec& spec, double t);

/// First t > 0 at which a flat geodesic leaves the domain (+inf if never).
double flat_exit_time(const SymplecticPotential& phi, const GeodesicSpec& spec);

struct GeodesicLimit {
  Eigen::VectorXd point;
  IndexSet face;  // facets with value < 1e-8 at the limit
  std::vector<std::pair<double, Eigen::VectorXd>> trace;
  bool face_solve = false;  // schedule did not settle; limit solved on the face
};

/// Limit of a dual geodesic as t → ∞ on a bounded polytope. Follows
/// t = 1, 2, 4, …, 2^20 (warm-started Newton) until two consecutive
/// differences drop below 1e-12. If the schedule ends first (slow approach,
/// e.g. nearly tied direction components), the limit is computed directly:
/// it lies on the face maximizing v·ξ over P (components tied within 1e-12
/// count as equal), at the point where the restricted gradient equals
/// Bᵀ grad φ(start).
GeodesicLimit dual_geodesic_limit(const SymplecticPotential& phi, const Polytope& p, const GeodesicSpec& spec);

}  // namespace delzant
