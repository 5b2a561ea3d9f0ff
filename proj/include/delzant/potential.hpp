#pragma once

#include "delzant/polynomial.hpp"
#include "delzant/polytope.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace delzant {

/// weight · L log L with L(ξ) = ν·ξ + λ.
struct AffineLogTerm {
  Eigen::VectorXd normal;
  double offset = 0.0;
  double weight = 1.0;

  double value(const Eigen::VectorXd& x) const { return normal.dot(x) + offset; }
};

/// φ(ξ) = s·Σ w_r L_r(ξ) log L_r(ξ) + f(ξ), with f a polynomial.
///
/// With the facets of P as log terms, unit weights, f = 0 and s = 1/2 this is
/// the Guillemin potential. The scale is explicit because the triangle
/// conventions in the literature drop the factor 1/2.
class SymplecticPotential {
 public:
  SymplecticPotential(std::size_t dim, double scale, std::vector<AffineLogTerm> log_terms, Polynomial correction);

  std::size_t dim() const { return dim_; }
  double scale() const { return scale_; }
  const std::vector<AffineLogTerm>& log_terms() const { return log_terms_; }
  const Polynomial& correction() const { return correction_; }

  /// Values of every log argument at ξ.
  Eigen::VectorXd arguments(const Eigen::VectorXd& x) const;

  /// True when every log argument is strictly positive.
  bool in_domain(const Eigen::VectorXd& x) const;

  /// Largest t >= 0 such that x + t·d stays in the open domain (+inf when the
  /// ray never leaves it).
  double exit_time(const Eigen::VectorXd& x, const Eigen::VectorXd& d) const;

 private:
  std::size_t dim_;
  double scale_;
  std::vector<AffineLogTerm> log_terms_;
  Polynomial correction_;
};

/// One unit-weight log term per facet, zero correction.
SymplecticPotential guillemin(const Polytope& p, double scale = 0.5);

/// The same potential with `f` added to its correction.
SymplecticPotential with_correction(const SymplecticPotential& phi, const Polynomial& f);

/// φ1(ξ1) + φ2(ξ2) on the product space. Scales are folded into the weights,
/// the result has scale 1.
SymplecticPotential direct_sum(const SymplecticPotential& a, const SymplecticPotential& b);

/// Throws ErrorKind::Domain naming the first nonpositive log argument.
double eval(const SymplecticPotential& phi, const Eigen::VectorXd& x);

/// Continuous extension to the closed domain: 0·log 0 := 0 termwise.
/// Arguments in [-1e-12, 0] count as 0; anything more negative is outside.
double eval_extended(const SymplecticPotential& phi, const Eigen::VectorXd& x);

/// s·Σ w ν (log L + 1) + ∇f.
Eigen::VectorXd grad(const SymplecticPotential& phi, const Eigen::VectorXd& x);

/// s·Σ w ν νᵀ / L + Hess f.
Eigen::MatrixXd hessian(const SymplecticPotential& phi, const Eigen::VectorXd& x);

/// Positive definiteness by LDLT with pivots > 1e-12 · max diagonal.
bool positive_definite(const Eigen::MatrixXd& g);

struct ValidityReport {
  std::size_t samples = 0;
  double min_eigenvalue = 0.0;
  double min_det_product = 0.0;  // min over samples of det(G)·Π l_r
  double max_det_product = 0.0;
  std::size_t indefinite = 0;
  std::size_t nonpositive_product = 0;
  bool pass = false;
};

/// Sampling check of the symplectic-potential conditions: Hess φ positive
/// definite and det(Hess φ)·Π l_r positive, on quasi-random interior points
/// stratified toward every facet (facet distances 1e-1 down to 1e-6). A
/// heuristic, not a proof.
ValidityReport validity_scan(const SymplecticPotential& phi, const Polytope& p, std::size_t samples);

/// φ_F = φ ∘ (chart map). Terms vanishing on F are dropped (their 0·log 0
/// extension), terms constant on F fold into the correction, the remaining
/// terms and f are pulled back. Throws ErrorKind::Domain if a remaining term
/// is negative somewhere on F.
SymplecticPotential restrict_potential(const SymplecticPotential& phi, const FaceChart& chart);

}  // namespace delzant
