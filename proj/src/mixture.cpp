#include "delzant/mixture.hpp"

#include "delzant/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace delzant {

namespace {

constexpr double kZeroProbability = 1e-14;

std::int64_t narrow(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorKind::InvalidInput, "integer normal exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}

}  // namespace

MixtureFamily::MixtureFamily(std::vector<RationalVector> alphas, RationalVector betas)
    : alphas_(std::move(alphas)), betas_(std::move(betas)), dim_(0) {
  if (alphas_.empty()) throw Error(ErrorKind::InvalidInput, "mixture family needs at least one outcome");
  if (alphas_.size() != betas_.size()) throw Error(ErrorKind::InvalidInput, "alphas and betas differ in length");
  dim_ = alphas_.front().size();
  if (dim_ == 0) throw Error(ErrorKind::InvalidInput, "mixture family has no parameters");
  RationalVector alpha_sum(dim_, Rational(0));
  Rational beta_sum = 0;
  for (std::size_t r = 0; r < alphas_.size(); ++r) {
    if (alphas_[r].size() != dim_) throw Error(ErrorKind::InvalidInput, "alphas have inconsistent dimensions");
    for (std::size_t j = 0; j < dim_; ++j) alpha_sum[j] += alphas_[r][j];
    beta_sum += betas_[r];
  }
  for (const auto& s : alpha_sum)
    if (s != 0) throw Error(ErrorKind::InvalidInput, "alphas do not sum to zero");
  if (beta_sum != 1) throw Error(ErrorKind::InvalidInput, "betas do not sum to one");
}

Eigen::VectorXd MixtureFamily::probabilities(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim_) throw Error(ErrorKind::InvalidInput, "parameter has the wrong dimension");
  Eigen::VectorXd p(size());
  for (std::size_t r = 0; r < size(); ++r) {
    double v = to_double(betas_[r]);
    for (std::size_t j = 0; j < dim_; ++j) v += to_double(alphas_[r][j]) * x[static_cast<Eigen::Index>(j)];
    if (std::abs(v) <= kZeroProbability) v = 0.0;
    if (v < 0.0) {
      std::ostringstream msg;
      msg << "probability of outcome " << r << " is negative (" << v << ")";
      throw Error(ErrorKind::Domain, msg.str());
    }
    p[static_cast<Eigen::Index>(r)] = v;
  }
  return p;
}

Eigen::MatrixXd MixtureFamily::fisher_metric(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd p = probabilities(x);
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t r = 0; r < size(); ++r) {
    const double pr = p[static_cast<Eigen::Index>(r)];
    if (pr <= 0.0) throw Error(ErrorKind::Domain, "Fisher metric needs strictly positive probabilities");
    Eigen::VectorXd a(n);
    for (Eigen::Index j = 0; j < n; ++j) a[j] = to_double(alphas_[r][static_cast<std::size_t>(j)]);
    g += a * a.transpose() / pr;
  }
  return g;
}

bool zero_sum_check(const Polytope& p) {
  IntVector sum(p.dim(), 0);
  for (const auto& h : p.halfspaces())
    for (std::size_t j = 0; j < p.dim(); ++j) sum[j] += h.normal[j];
  for (auto v : sum)
    if (v != 0) return false;
  return true;
}

MixtureFamily to_mixture(const Polytope& p) {
  if (!zero_sum_check(p)) throw Error(ErrorKind::NotTorifiable, "facet normals do not sum to zero");
  Rational total = 0;
  for (const auto& h : p.halfspaces()) total += h.offset;
  if (total <= 0) throw Error(ErrorKind::Degenerate, "sum of facet offsets is not positive");
  std::vector<RationalVector> alphas;
  RationalVector betas;
  for (const auto& h : p.halfspaces()) {
    RationalVector a;
    for (auto v : h.normal) a.push_back(Rational(v) / total);
    alphas.push_back(std::move(a));
    betas.push_back(h.offset / total);
  }
  return MixtureFamily(std::move(alphas), std::move(betas));
}

double kl(const MixtureFamily& family, const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime) {
  const Eigen::VectorXd p = family.probabilities(x);
  const Eigen::VectorXd q = family.probabilities(x_prime);
  double sum = 0.0;
  for (Eigen::Index r = 0; r < p.size(); ++r) {
    if (p[r] == 0.0) continue;
    if (q[r] == 0.0) return std::numeric_limits<double>::infinity();
    sum += p[r] * std::log(p[r] / q[r]);
  }
  return sum;
}

TorificationReport from_mixture(const MixtureFamily& family) {
  const std::size_t n = family.dim();
  Integer scale = 1;
  for (const auto& a : family.alphas())
    for (const auto& v : a) scale = lcm(scale, denominator(v));

  std::vector<HalfSpace> hs;
  for (std::size_t r = 0; r < family.size(); ++r) {
    IntVector normal(n);
    for (std::size_t j = 0; j < n; ++j) normal[j] = narrow(numerator(Rational(family.alphas()[r][j] * scale)));
    Rational offset = family.betas()[r] * scale;
    const std::int64_t g = content(normal);
    if (g == 0) {
      if (offset <= 0) throw Error(ErrorKind::Degenerate, "an outcome has probability identically <= 0");
      continue;
    }
    for (auto& v : normal) v /= g;
    offset /= g;
    hs.push_back({std::move(normal), offset});
  }

  // With Σα = 0 every recession direction is a lineality direction, so the
  // region is unbounded exactly when the normals fail to span.
  lattice::RationalMatrix normals(hs.size(), n);
  for (std::size_t r = 0; r < hs.size(); ++r)
    for (std::size_t j = 0; j < n; ++j) normals(r, j) = hs[r].normal[j];
  if (lattice::rank(normals) < n)
    throw Error(ErrorKind::NoCompactTorification, "the positivity region is unbounded");

  Irredundant reduced = remove_redundant(n, std::move(hs));
  if (reduced.empty) throw Error(ErrorKind::Degenerate, "the positivity region is empty");
  if (!reduced.bounded) throw Error(ErrorKind::NoCompactTorification, "the positivity region is unbounded");
  try {
    Polytope p(n, std::move(reduced.halfspaces), true);
    DelzantReport delzant = validate_delzant(p);
    const bool zero_sum = zero_sum_check(p);
    const bool compact = delzant.delzant();
    return TorificationReport{std::move(p), std::move(delzant), zero_sum, compact};
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Inconsistency) throw;
    throw Error(ErrorKind::Degenerate, std::string("the positivity region is degenerate: ") + err.what());
  }
}

}  // namespace delzant
