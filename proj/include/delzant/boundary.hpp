#pragma once

#include "delzant/dually_flat.hpp"
#include "delzant/polytope.hpp"
#include "delzant/potential.hpp"
#include "delzant/random.hpp"

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

namespace delzant {

/// A point of the relative interior F∘ of a face, in ambient and chart
/// coordinates. "On F∘" means active facets within 1e-12 of zero and every
/// other facet above 1e-8.
class BoundaryPoint {
 public:
  static BoundaryPoint from_ambient(const FaceChart& chart, const Eigen::VectorXd& ambient);
  static BoundaryPoint from_chart(const FaceChart& chart, const Eigen::VectorXd& chart_coords);

  const Eigen::VectorXd& ambient() const { return ambient_; }
  const Eigen::VectorXd& chart_coords() const { return chart_coords_; }
  const FaceChart& chart() const { return *chart_; }

 private:
  BoundaryPoint(std::shared_ptr<const FaceChart> chart, Eigen::VectorXd ambient, Eigen::VectorXd chart_coords);

  std::shared_ptr<const FaceChart> chart_;
  Eigen::VectorXd ambient_;
  Eigen::VectorXd chart_coords_;
};

/// D_F: the Bregman divergence of the restricted potential φ_F on P_F, at the
/// chart coordinates of η and η'.
double boundary_divergence(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                           const BoundaryPoint& eta_prime);

/// D'_F(η‖ξ') = lim_{ξ→η} D(ξ‖ξ') in closed form:
/// φ(η) − φ(ξ') − (η − ξ')·grad φ(ξ') with φ(η) the continuous extension.
double limit_divergence(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                        const Eigen::VectorXd& xi_prime);

struct ContinuityStep {
  int k = 0;
  double distance = 0.0;  // facet distance of the outer point ξ'
  double estimate = 0.0;  // D(ξ‖ξ') with ξ a further 1e-4 closer to the face
  double gap = 0.0;       // |estimate − D_F(η‖η')|
};

struct ContinuityReport {
  double target = 0.0;
  std::vector<ContinuityStep> steps;
  bool monotone = false;  // gap strictly decreasing over the last four steps
  bool pass = false;      // monotone and final gap <= tolerance
  double tolerance = 1e-5;
};

/// Numerical iterated limit lim_{ξ'→η'} lim_{ξ→η} D(ξ‖ξ') compared with
/// D_F(η‖η'). Points approach the face along the segment toward the interior
/// point of P: ξ' at facet distance 10^-k (k = 1 … k_max) and ξ at 10^-(k+4).
ContinuityReport continuity_check(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                                  const BoundaryPoint& eta_prime, int k_max = 8);

/// The foot η' ∈ F∘ of ξ'': minimizer of D'_F(·‖ξ''), characterized by
/// grad φ_F(η') = Bᵀ grad φ(ξ''). This is where the dual geodesic from ξ''
/// with a direction normal to F lands. Throws ErrorKind::BoundaryOfFace if
/// the minimizer is not in F∘.
BoundaryPoint project_to_face(const SymplecticPotential& phi, const FaceChart& chart, const Eigen::VectorXd& xi);

struct Pythagoras54Report {
  double face_divergence = 0.0;   // D_F(η‖η')
  double foot_divergence = 0.0;   // D'_F(η'‖ξ'')
  double total_divergence = 0.0;  // D'_F(η‖ξ'')
  double residual = 0.0;          // first + second − third
  double perp_defect = 0.0;       // ‖grad φ_F(η') − Bᵀ grad φ(ξ'')‖∞
};

/// Boundary Pythagorean relation D_F(η‖η') + D'_F(η'‖ξ'') = D'_F(η‖ξ''). The
/// perpendicularity hypothesis is certified on the polytope side: it holds
/// exactly when η' is the foot of ξ'' (perp_defect = 0); the residual equals
/// (u − u')·(Bᵀ grad φ(ξ'') − grad φ_F(u')) in chart coordinates.
Pythagoras54Report pythagoras_54(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                                 const BoundaryPoint& eta_prime, const Eigen::VectorXd& xi);

struct Pythagoras55Report {
  double residual = 0.0;    // D'_F(η‖ξ) + D(ξ‖ξ') − D'_F(η‖ξ')
  double perp_value = 0.0;  // (η − ξ)·(y(ξ') − y(ξ))
};

/// Pythagorean relation with the right angle at the interior point ξ. The
/// residual equals perp_value identically, so it vanishes exactly when the
/// flat segment ξη and the dual segment ξξ' are G-orthogonal at ξ.
Pythagoras55Report pythagoras_55(const SymplecticPotential& phi, const FaceChart& chart, const BoundaryPoint& eta,
                                 const Eigen::VectorXd& xi, const Eigen::VectorXd& xi_prime);

struct ProductCheckReport {
  std::size_t configurations = 0;
  double additivity_residual = 0.0;     // max |D̃ − D_P − D_half|
  double bottom_face_residual = 0.0;    // face P∘ × {0}
  double side_face_residual = 0.0;      // faces ∂P × R>0
  double additivity_tolerance = 1e-10;
  double pythagoras_tolerance = 1e-9;
  bool pass = false;
};

/// Checks on P̃ = P × R≥0 with φ̃ = φ_P ⊕ ξ log ξ: additivity of the
/// divergence, and the two boundary Pythagorean equalities
///   D̃((ξ1,0)‖(ξ1',ξ2)) = D̃((ξ1,0)‖(ξ1,ξ2)) + D̃((ξ1,ξ2)‖(ξ1',ξ2)),
///   D̃((η,ξ2)‖(ξ1,ξ2')) = D̃((η,ξ2)‖(ξ1,ξ2)) + D̃((ξ1,ξ2)‖(ξ1,ξ2')),
/// each at `configurations` random draws.
ProductCheckReport product_boundary_check(const Polytope& p, double scale, Rng& rng, std::size_t configurations = 100);

/// R≥0 = {ξ >= 0} as an unbounded polytope.
Polytope half_line();

}  // namespace delzant
