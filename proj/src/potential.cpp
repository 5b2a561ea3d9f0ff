#include "delzant/potential.hpp"

#include "delzant/error.hpp"
#include "delzant/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace delzant {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

void check_dim(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != phi.dim())
    throw Error(ErrorKind::InvalidInput, "point has dimension " + std::to_string(x.size()) + ", potential has " +
                                             std::to_string(phi.dim()));
}

[[noreturn]] void throw_nonpositive(std::size_t r, double value) {
  std::ostringstream msg;
  msg << "log term " << r << " has nonpositive argument " << value;
  throw Error(ErrorKind::Domain, msg.str());
}

double x_log_x(double v) { return v == 0.0 ? 0.0 : v * std::log(v); }

}  // namespace

SymplecticPotential::SymplecticPotential(std::size_t dim, double scale, std::vector<AffineLogTerm> log_terms,
                                         Polynomial correction)
    : dim_(dim), scale_(scale), log_terms_(std::move(log_terms)), correction_(std::move(correction)) {
  for (std::size_t r = 0; r < log_terms_.size(); ++r)
    if (static_cast<std::size_t>(log_terms_[r].normal.size()) != dim_)
      throw Error(ErrorKind::InvalidInput, "log term " + std::to_string(r) + " has a normal of the wrong length");
  if (correction_.dim() != dim_) {
    if (!correction_.is_zero()) throw Error(ErrorKind::InvalidInput, "correction polynomial has the wrong dimension");
    correction_ = Polynomial(dim_);
  }
  if (!std::isfinite(scale_)) throw Error(ErrorKind::InvalidInput, "potential scale must be finite");
}

Eigen::VectorXd SymplecticPotential::arguments(const Eigen::VectorXd& x) const {
  check_dim(*this, x);
  Eigen::VectorXd out(static_cast<Eigen::Index>(log_terms_.size()));
  for (std::size_t r = 0; r < log_terms_.size(); ++r) out(static_cast<Eigen::Index>(r)) = log_terms_[r].value(x);
  return out;
}

bool SymplecticPotential::in_domain(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim_) return false;
  return std::all_of(log_terms_.begin(), log_terms_.end(), [&](const AffineLogTerm& t) { return t.value(x) > 0.0; });
}

double SymplecticPotential::exit_time(const Eigen::VectorXd& x, const Eigen::VectorXd& d) const {
  double t = std::numeric_limits<double>::infinity();
  for (const auto& term : log_terms_) {
    const double rate = term.normal.dot(d);
    if (rate < 0.0) t = std::min(t, term.value(x) / -rate);
  }
  return t;
}

SymplecticPotential guillemin(const Polytope& p, double scale) {
  std::vector<AffineLogTerm> terms;
  const Eigen::MatrixXd normals = p.normal_matrix();
  const Eigen::VectorXd offsets = p.offset_vector();
  for (Eigen::Index r = 0; r < normals.rows(); ++r)
    terms.push_back({normals.row(r).transpose(), offsets(r), 1.0});
  return SymplecticPotential(p.dim(), scale, std::move(terms), Polynomial(p.dim()));
}

SymplecticPotential with_correction(const SymplecticPotential& phi, const Polynomial& f) {
  return SymplecticPotential(phi.dim(), phi.scale(), phi.log_terms(), phi.correction() + f);
}

SymplecticPotential direct_sum(const SymplecticPotential& a, const SymplecticPotential& b) {
  const std::size_t n = a.dim() + b.dim();
  std::vector<AffineLogTerm> terms;
  for (const auto& t : a.log_terms()) {
    Eigen::VectorXd normal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    normal.head(static_cast<Eigen::Index>(a.dim())) = t.normal;
    terms.push_back({normal, t.offset, t.weight * a.scale()});
  }
  for (const auto& t : b.log_terms()) {
    Eigen::VectorXd normal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    normal.tail(static_cast<Eigen::Index>(b.dim())) = t.normal;
    terms.push_back({normal, t.offset, t.weight * b.scale()});
  }
  Polynomial f = a.correction().embed(n, 0) + b.correction().embed(n, a.dim());
  return SymplecticPotential(n, 1.0, std::move(terms), std::move(f));
}

double eval(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  check_dim(phi, x);
  double sum = 0.0;
  const auto& terms = phi.log_terms();
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const double v = terms[r].value(x);
    if (!(v > 0.0)) throw_nonpositive(r, v);
    sum += terms[r].weight * v * std::log(v);
  }
  return phi.scale() * sum + phi.correction().eval(x);
}

double eval_extended(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  check_dim(phi, x);
  double sum = 0.0;
  const auto& terms = phi.log_terms();
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const double v = terms[r].value(x);
    if (v < -kBoundaryTolerance || std::isnan(v)) {
      std::ostringstream msg;
      msg << "point lies outside the closed domain (log term " << r << " = " << v << ")";
      throw Error(ErrorKind::Domain, msg.str());
    }
    sum += terms[r].weight * x_log_x(std::max(v, 0.0));
  }
  return phi.scale() * sum + phi.correction().eval(x);
}

Eigen::VectorXd grad(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  check_dim(phi, x);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(phi.dim()));
  const auto& terms = phi.log_terms();
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const double v = terms[r].value(x);
    if (!(v > 0.0)) throw_nonpositive(r, v);
    g += terms[r].weight * (std::log(v) + 1.0) * terms[r].normal;
  }
  return phi.scale() * g + phi.correction().gradient(x);
}

Eigen::MatrixXd hessian(const SymplecticPotential& phi, const Eigen::VectorXd& x) {
  check_dim(phi, x);
  const auto n = static_cast<Eigen::Index>(phi.dim());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const auto& terms = phi.log_terms();
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const double v = terms[r].value(x);
    if (!(v > 0.0)) throw_nonpositive(r, v);
    h += (terms[r].weight / v) * terms[r].normal * terms[r].normal.transpose();
  }
  return phi.scale() * h + phi.correction().hessian(x);
}

bool positive_definite(const Eigen::MatrixXd& g) {
  if (g.rows() == 0) return true;
  const double largest = g.diagonal().cwiseAbs().maxCoeff();
  if (!(largest > 0.0)) return false;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success) return false;
  return (ldlt.vectorD().array() > 1e-12 * largest).all();
}

ValidityReport validity_scan(const SymplecticPotential& phi, const Polytope& p, std::size_t samples) {
  if (!p.bounded()) throw Error(ErrorKind::InvalidInput, "validity_scan requires a bounded polytope");
  ValidityReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  report.min_det_product = std::numeric_limits<double>::infinity();
  report.max_det_product = -std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd& x : stratified_samples(p, samples)) {
    if (!phi.in_domain(x)) {
      ++report.indefinite;
      continue;
    }
    const Eigen::MatrixXd g = hessian(phi, x);
    const double lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly).eigenvalues()(0);
    report.min_eigenvalue = std::min(report.min_eigenvalue, lambda);
    if (!positive_definite(g)) ++report.indefinite;
    const double product = g.determinant() * p.facet_values(x).prod();
    report.min_det_product = std::min(report.min_det_product, product);
    report.max_det_product = std::max(report.max_det_product, product);
    if (!(product > 0.0)) ++report.nonpositive_product;
    ++report.samples;
  }
  report.pass = report.samples > 0 && report.indefinite == 0 && report.nonpositive_product == 0;
  return report;
}

SymplecticPotential restrict_potential(const SymplecticPotential& phi, const FaceChart& chart) {
  if (chart.parent().dim() != phi.dim())
    throw Error(ErrorKind::InvalidInput, "chart and potential live in different dimensions");
  const std::size_t k = chart.dim_face();
  const Eigen::VectorXd origin = chart.origin_d();
  const Eigen::MatrixXd basis = chart.basis_d();
  const std::vector<Vertex> corners = chart.face_vertices();
  std::vector<Eigen::VectorXd> rays;
  for (const auto& ray : chart.parent().rays()) {
    const bool on_face = std::all_of(chart.active().begin(), chart.active().end(), [&](Index a) {
      return std::binary_search(ray.active.begin(), ray.active.end(), a);
    });
    if (!on_face) continue;
    Eigen::VectorXd d(static_cast<Eigen::Index>(ray.direction.size()));
    for (std::size_t j = 0; j < ray.direction.size(); ++j) d(static_cast<Eigen::Index>(j)) = static_cast<double>(ray.direction[j]);
    rays.push_back(d);
  }

  std::vector<AffineLogTerm> terms;
  Polynomial correction = phi.correction().pullback(origin, basis);
  double constant = 0.0;
  const auto& source = phi.log_terms();
  for (std::size_t r = 0; r < source.size(); ++r) {
    const AffineLogTerm& t = source[r];
    const Eigen::VectorXd normal = basis.transpose() * t.normal;
    const double offset = t.value(origin);
    const double scale = std::max(1.0, t.normal.cwiseAbs().maxCoeff());
    if (normal.cwiseAbs().maxCoeff() <= kBoundaryTolerance * scale || k == 0) {
      if (std::abs(offset) <= kBoundaryTolerance * scale) continue;
      if (offset < 0.0) throw_nonpositive(r, offset);
      constant += t.weight * offset * std::log(offset);
      continue;
    }
    for (const auto& v : corners)
      if (t.value(v.coords) < -kBoundaryTolerance * scale)
        throw Error(ErrorKind::Domain, "log term " + std::to_string(r) + " is negative on the face");
    for (const auto& d : rays)
      if (t.normal.dot(d) < 0.0)
        throw Error(ErrorKind::Domain, "log term " + std::to_string(r) + " becomes negative along the face");
    terms.push_back({normal, offset, t.weight});
  }
  if (constant != 0.0) correction = correction + Polynomial::constant(k, phi.scale() * constant);
  return SymplecticPotential(k, phi.scale(), std::move(terms), std::move(correction));
}

}  // namespace delzant
