#pragma once

#include "delzant/polytope.hpp"
#include "delzant/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace delzant {

/// Mixture family p(r|ξ) = α_r·ξ + β_r on the finite set {0, …, N−1}. The
/// probabilities sum to one for every ξ, so Σ α_r = 0 and Σ β_r = 1 exactly.
class MixtureFamily {
 public:
  MixtureFamily(std::vector<RationalVector> alphas, RationalVector betas);

  std::size_t size() const { return betas_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<RationalVector>& alphas() const { return alphas_; }
  const RationalVector& betas() const { return betas_; }

  /// p(·|ξ). Entries within 1e-14 of zero are returned as exactly 0; more
  /// negative values throw ErrorKind::Domain.
  Eigen::VectorXd probabilities(const Eigen::VectorXd& x) const;

  /// Fisher metric Σ_r α_r α_rᵀ / p(r|ξ).
  Eigen::MatrixXd fisher_metric(const Eigen::VectorXd& x) const;

  friend bool operator==(const MixtureFamily&, const MixtureFamily&) = default;

 private:
  std::vector<RationalVector> alphas_;
  RationalVector betas_;
  std::size_t dim_;
};

/// Σ_r ν_r = 0, exactly.
bool zero_sum_check(const Polytope& p);

/// p(r|ξ) = l_r(ξ)/Σλ. Throws ErrorKind::NotTorifiable without the zero-sum
/// condition and ErrorKind::Degenerate when Σλ <= 0.
MixtureFamily to_mixture(const Polytope& p);

/// Σ p log(p/p') with 0·log(0/q) = 0 and p·log(p/0) = +inf (returned, not
/// thrown).
double kl(const MixtureFamily& family, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime);

struct TorificationReport {
  Polytope polytope;
  DelzantReport delzant;
  bool zero_sum = false;
  bool compact_torification = false;  // closure of U is Delzant
};

/// Closure of U = {p(r|ξ) > 0 ∀r} as a polytope: every α_r is scaled by the
/// lcm of all denominators, normals are made primitive, duplicates and
/// redundant constraints are dropped; then validated. Throws
/// ErrorKind::NoCompactTorification when U is unbounded and
/// ErrorKind::Degenerate when it is empty or lower-dimensional.
TorificationReport from_mixture(const MixtureFamily& family);

}  // namespace delzant
