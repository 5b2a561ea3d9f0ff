#include "delzant/polynomial.hpp"

#include "delzant/error.hpp"

#include <cmath>

namespace delzant {

namespace {

double power(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

void check_dim(std::size_t dim, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != dim)
    throw Error(ErrorKind::InvalidInput, "polynomial in " + std::to_string(dim) + " variables evaluated at a point of dimension " +
                                             std::to_string(x.size()));
}

}  // namespace

Polynomial Polynomial::constant(std::size_t dim, double value) {
  Polynomial p(dim);
  p.add_term(Exponents(dim, 0), value);
  return p;
}

Polynomial Polynomial::affine(const Eigen::VectorXd& a, double b) {
  const auto dim = static_cast<std::size_t>(a.size());
  Polynomial p = constant(dim, b);
  for (std::size_t i = 0; i < dim; ++i) {
    Exponents e(dim, 0);
    e[i] = 1;
    p.add_term(e, a(static_cast<Eigen::Index>(i)));
  }
  return p;
}

void Polynomial::add_term(const Exponents& exponents, double coeff) {
  if (exponents.size() != dim_) throw Error(ErrorKind::InvalidInput, "monomial exponent vector has the wrong length");
  for (int e : exponents)
    if (e < 0) throw Error(ErrorKind::InvalidInput, "negative exponent in polynomial");
  const double merged = (terms_.count(exponents) ? terms_[exponents] : 0.0) + coeff;
  if (merged == 0.0)
    terms_.erase(exponents);
  else
    terms_[exponents] = merged;
}

double Polynomial::eval(const Eigen::VectorXd& x) const {
  check_dim(dim_, x);
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (std::size_t i = 0; i < dim_; ++i) m *= power(x(static_cast<Eigen::Index>(i)), e[i]);
    sum += m;
  }
  return sum;
}

Eigen::VectorXd Polynomial::gradient(const Eigen::VectorXd& x) const {
  check_dim(dim_, x);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& [e, c] : terms_) {
    for (std::size_t k = 0; k < dim_; ++k) {
      if (e[k] == 0) continue;
      double m = c * e[k];
      for (std::size_t i = 0; i < dim_; ++i)
        m *= power(x(static_cast<Eigen::Index>(i)), i == k ? e[i] - 1 : e[i]);
      g(static_cast<Eigen::Index>(k)) += m;
    }
  }
  return g;
}

Eigen::MatrixXd Polynomial::hessian(const Eigen::VectorXd& x) const {
  check_dim(dim_, x);
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [e, c] : terms_) {
    for (std::size_t a = 0; a < dim_; ++a) {
      for (std::size_t b = a; b < dim_; ++b) {
        Exponents d = e;
        double m = c;
        m *= d[a];
        d[a] -= 1;
        if (m == 0.0) continue;
        m *= d[b];
        d[b] -= 1;
        if (m == 0.0) continue;
        for (std::size_t i = 0; i < dim_; ++i) m *= power(x(static_cast<Eigen::Index>(i)), d[i]);
        h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += m;
        if (a != b) h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) += m;
      }
    }
  }
  return h;
}

Polynomial Polynomial::pullback(const Eigen::VectorXd& origin, const Eigen::MatrixXd& basis) const {
  if (static_cast<std::size_t>(origin.size()) != dim_ || static_cast<std::size_t>(basis.rows()) != dim_)
    throw Error(ErrorKind::InvalidInput, "pullback map does not match the polynomial dimension");
  const auto k = static_cast<std::size_t>(basis.cols());
  std::vector<Polynomial> coordinate;
  for (std::size_t i = 0; i < dim_; ++i)
    coordinate.push_back(affine(basis.row(static_cast<Eigen::Index>(i)).transpose(), origin(static_cast<Eigen::Index>(i))));
  Polynomial out(k);
  for (const auto& [e, c] : terms_) {
    Polynomial m = constant(k, c);
    for (std::size_t i = 0; i < dim_; ++i)
      for (int j = 0; j < e[i]; ++j) m = m * coordinate[i];
    out = out + m;
  }
  return out;
}

Polynomial Polynomial::embed(std::size_t total_dim, std::size_t first) const {
  if (first + dim_ > total_dim) throw Error(ErrorKind::InvalidInput, "embedding does not fit");
  Polynomial out(total_dim);
  for (const auto& [e, c] : terms_) {
    Exponents big(total_dim, 0);
    std::copy(e.begin(), e.end(), big.begin() + static_cast<std::ptrdiff_t>(first));
    out.add_term(big, c);
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorKind::InvalidInput, "adding polynomials of different dimension");
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorKind::InvalidInput, "multiplying polynomials of different dimension");
  Polynomial out(a.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(a.dim_);
      for (std::size_t i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial operator*(double s, const Polynomial& p) {
  Polynomial out(p.dim_);
  if (s == 0.0) return out;
  for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
  return out;
}

}  // namespace delzant
