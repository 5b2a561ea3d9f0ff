#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <vector>

namespace delzant {

/// Multivariate polynomial with real coefficients, used as the smooth
/// correction f of a symplectic potential. Closed-form derivatives.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(std::size_t dim = 0) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, double value);
  /// The affine polynomial a·x + b.
  static Polynomial affine(const Eigen::VectorXd& a, double b);

  std::size_t dim() const { return dim_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff·x^exponents (merging with an existing monomial).
  void add_term(const Exponents& exponents, double coeff);

  double eval(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  /// The polynomial u ↦ p(origin + basis·u) in basis.cols() variables.
  Polynomial pullback(const Eigen::VectorXd& origin, const Eigen::MatrixXd& basis) const;

  /// Re-embeds into `total_dim` variables, placing ours at `first`.
  Polynomial embed(std::size_t total_dim, std::size_t first) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);

 private:
  std::size_t dim_;
  std::map<Exponents, double> terms_;
};

}  // namespace delzant
