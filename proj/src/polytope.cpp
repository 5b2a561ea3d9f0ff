#include "delzant/polytope.hpp"

#include "delzant/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace delzant {

using lattice::IntMatrix;
using lattice::RationalMatrix;

namespace {

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const IndexSet&)>& visit) {
  if (k > n) return;
  IndexSet idx(k);
  std::iota(idx.begin(), idx.end(), Index{0});
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Rational dot(const IntVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Integer(a[i]) * b[i];
  return s;
}

Eigen::VectorXd to_eigen(const RationalVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = to_double(v[i]);
  return out;
}

std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorKind::Numerical, "integer overflow converting lattice data");
  return x.convert_to<std::int64_t>();
}

struct Enumeration {
  std::vector<Vertex> vertices;
  std::vector<Ray> rays;
};

Enumeration enumerate(std::size_t n, const std::vector<HalfSpace>& hs) {
  Enumeration out;
  const std::size_t count = hs.size();
  if (n == 0) {
    out.vertices.push_back(Vertex{Eigen::VectorXd(0), {}, {}});
    return out;
  }
  std::set<RationalVector> seen;
  for_each_subset(count, n, [&](const IndexSet& subset) {
    RationalMatrix a(n, n);
    RationalVector b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = hs[subset[i]].normal[j];
      b[i] = -hs[subset[i]].offset;
    }
    RationalVector x;
    if (!lattice::solve(a, b, x)) return;
    if (seen.count(x)) return;
    IndexSet active;
    for (std::size_t r = 0; r < count; ++r) {
      const Rational v = hs[r].value(x);
      if (v < 0) return;
      if (v == 0) active.push_back(r);
    }
    seen.insert(x);
    out.vertices.push_back(Vertex{to_eigen(x), x, std::move(active)});
  });

  std::set<IntVector> seen_rays;
  for_each_subset(count, n - 1, [&](const IndexSet& subset) {
    IntMatrix a(subset.size(), n);
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = hs[subset[i]].normal[j];
    const IntMatrix k = lattice::integer_kernel(a);
    if (k.cols() != 1) return;
    for (int sign : {1, -1}) {
      IntVector d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = sign * to_int64(k(j, 0));
      IndexSet active;
      bool feasible = true;
      for (std::size_t r = 0; r < count && feasible; ++r) {
        const Integer v = dot(hs[r].normal, d);
        if (v < 0) feasible = false;
        if (v == 0) active.push_back(r);
      }
      if (!feasible || seen_rays.count(d)) continue;
      seen_rays.insert(d);
      out.rays.push_back(Ray{d, std::move(active)});
    }
  });
  return out;
}

// Affine dimension of conv(points) + cone(dirs).
std::size_t affine_dimension(const std::vector<const RationalVector*>& points, const std::vector<const IntVector*>& dirs,
                             std::size_t n) {
  if (points.empty()) return 0;
  RationalMatrix m(points.size() - 1 + dirs.size(), n);
  std::size_t row = 0;
  for (std::size_t i = 1; i < points.size(); ++i, ++row)
    for (std::size_t j = 0; j < n; ++j) m(row, j) = (*points[i])[j] - (*points[0])[j];
  for (const IntVector* d : dirs) {
    for (std::size_t j = 0; j < n; ++j) m(row, j) = (*d)[j];
    ++row;
  }
  return lattice::rank(m);
}

bool contains_all(const IndexSet& haystack, const IndexSet& needles) {
  return std::all_of(needles.begin(), needles.end(), [&](Index r) {
    return std::binary_search(haystack.begin(), haystack.end(), r);
  });
}

RationalVector face_interior_point(const std::vector<Vertex>& verts, const std::vector<Ray>& rays, const IndexSet& active,
                                   const std::vector<HalfSpace>& hs, std::size_t n) {
  RationalVector point(n, Rational(0));
  std::size_t count = 0;
  for (const auto& v : verts) {
    if (!contains_all(v.active, active)) continue;
    for (std::size_t j = 0; j < n; ++j) point[j] += v.exact[j];
    ++count;
  }
  if (count == 0) return {};
  for (auto& x : point) x /= count;
  for (const auto& r : rays) {
    bool on_face = std::all_of(active.begin(), active.end(), [&](Index a) { return dot(hs[a].normal, r.direction) == 0; });
    if (!on_face) continue;
    for (std::size_t j = 0; j < n; ++j) point[j] += r.direction[j];
  }
  return point;
}

std::vector<const RationalVector*> face_points(const std::vector<Vertex>& verts, const IndexSet& active) {
  std::vector<const RationalVector*> pts;
  for (const auto& v : verts)
    if (contains_all(v.active, active)) pts.push_back(&v.exact);
  return pts;
}

std::vector<const IntVector*> face_rays(const std::vector<Ray>& rays, const IndexSet& active) {
  std::vector<const IntVector*> out;
  for (const auto& r : rays)
    if (contains_all(r.active, active)) out.push_back(&r.direction);
  return out;
}

}  // namespace

Rational HalfSpace::value(const RationalVector& point) const { return dot(normal, point) + offset; }

double HalfSpace::value(const Eigen::VectorXd& point) const {
  double s = to_double(offset);
  for (std::size_t i = 0; i < normal.size(); ++i) s += static_cast<double>(normal[i]) * point(static_cast<Eigen::Index>(i));
  return s;
}

Polytope::Polytope(std::size_t dim, std::vector<HalfSpace> halfspaces, bool bounded)
    : dim_(dim), halfspaces_(std::move(halfspaces)), bounded_(bounded) {
  for (std::size_t r = 0; r < halfspaces_.size(); ++r) {
    const auto& h = halfspaces_[r];
    if (h.normal.size() != dim_)
      throw Error(ErrorKind::InvalidInput, "halfspace " + std::to_string(r) + " has normal of length " +
                                               std::to_string(h.normal.size()) + ", expected " + std::to_string(dim_));
    if (content(h.normal) == 0) throw Error(ErrorKind::InvalidInput, "halfspace " + std::to_string(r) + " has zero normal");
    if (!is_primitive(h.normal))
      throw Error(ErrorKind::InvalidInput, "halfspace " + std::to_string(r) + " has a non-primitive normal");
    for (std::size_t s = 0; s < r; ++s)
      if (halfspaces_[s] == h)
        throw Error(ErrorKind::InvalidInput,
                    "halfspaces " + std::to_string(s) + " and " + std::to_string(r) + " are identical");
  }

  auto geometry = std::make_shared<Geometry>();
  Enumeration e = enumerate(dim_, halfspaces_);
  if (e.vertices.empty())
    throw Error(ErrorKind::Inconsistency, "polyhedron is empty or contains a line (no vertices)");
  if (bounded_ && !e.rays.empty())
    throw Error(ErrorKind::Inconsistency, "polyhedron flagged bounded but has a recession direction");
  geometry->interior = face_interior_point(e.vertices, e.rays, {}, halfspaces_, dim_);
  for (std::size_t r = 0; r < halfspaces_.size(); ++r)
    if (halfspaces_[r].value(geometry->interior) <= 0)
      throw Error(ErrorKind::Inconsistency, "polyhedron is not full-dimensional (facet " + std::to_string(r) +
                                                " holds with equality throughout)");
  geometry->vertices = std::move(e.vertices);
  geometry->rays = std::move(e.rays);
  geometry_ = std::move(geometry);
}

Eigen::VectorXd Polytope::interior_point_d() const { return to_eigen(geometry_->interior); }

Eigen::VectorXd Polytope::centroid() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& v : vertices()) c += v.coords;
  c /= static_cast<double>(vertices().size());
  if (!rays().empty()) return interior_point_d();
  return c;
}

Eigen::VectorXd Polytope::facet_values(const Eigen::VectorXd& point) const {
  if (static_cast<std::size_t>(point.size()) != dim_)
    throw Error(ErrorKind::InvalidInput, "point has dimension " + std::to_string(point.size()) + ", expected " +
                                             std::to_string(dim_));
  Eigen::VectorXd out(static_cast<Eigen::Index>(halfspaces_.size()));
  for (std::size_t r = 0; r < halfspaces_.size(); ++r) out(static_cast<Eigen::Index>(r)) = halfspaces_[r].value(point);
  return out;
}

Eigen::MatrixXd Polytope::normal_matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(halfspaces_.size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < halfspaces_.size(); ++r)
    for (std::size_t j = 0; j < dim_; ++j)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = static_cast<double>(halfspaces_[r].normal[j]);
  return m;
}

Eigen::VectorXd Polytope::offset_vector() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(halfspaces_.size()));
  for (std::size_t r = 0; r < halfspaces_.size(); ++r) v(static_cast<Eigen::Index>(r)) = to_double(halfspaces_[r].offset);
  return v;
}

double facet_value(const Polytope& p, Index r, const Eigen::VectorXd& point) {
  if (static_cast<std::size_t>(point.size()) != p.dim())
    throw Error(ErrorKind::InvalidInput, "point has dimension " + std::to_string(point.size()) + ", expected " +
                                             std::to_string(p.dim()));
  if (r >= p.num_facets())
    throw Error(ErrorKind::InvalidInput, "facet index " + std::to_string(r) + " out of range");
  return p.halfspace(r).value(point);
}

std::vector<Vertex> vertices(const Polytope& p) { return p.vertices(); }

bool contains(const Polytope& p, const Eigen::VectorXd& point, bool strict) {
  const Eigen::VectorXd values = p.facet_values(point);
  return strict ? (values.array() > 0).all() : (values.array() >= 0).all();
}

DelzantReport validate_delzant(const Polytope& p) {
  DelzantReport report;
  report.partial = !p.bounded();
  const std::size_t n = p.dim();
  const auto& verts = p.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Vertex& v = verts[i];
    if (v.active.size() != n) {
      report.simple = false;
      report.smooth = false;
      report.failures.push_back({i, v.coords, v.active, 0,
                                 "not simple: " + std::to_string(v.active.size()) + " facets meet at the vertex"});
      continue;
    }
    IntMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t j = 0; j < n; ++j) m(a, j) = p.halfspace(v.active[a]).normal[j];
    const Integer det = lattice::determinant(m);
    if (abs(det) != 1) {
      report.smooth = false;
      report.failures.push_back({i, v.coords, v.active, det, "not smooth: normal determinant " + det.str()});
    }
  }
  return report;
}

FaceChart::FaceChart(Unchecked, const Polytope& parent, IndexSet active, RationalVector origin, IntMatrix basis)
    : parent_(std::make_shared<const Polytope>(parent)),
      active_(std::move(active)),
      origin_(std::move(origin)),
      basis_(std::move(basis)) {
  const Eigen::MatrixXd b = basis_d();
  if (b.cols() > 0)
    pseudo_inverse_ = (b.transpose() * b).ldlt().solve(b.transpose());
  else
    pseudo_inverse_ = Eigen::MatrixXd(0, b.rows());
}

FaceChart::FaceChart(const Polytope& parent, IndexSet active, RationalVector origin, IntMatrix basis)
    : FaceChart(Unchecked{}, parent, std::move(active), std::move(origin), std::move(basis)) {
  const std::size_t n = parent.dim();
  std::sort(active_.begin(), active_.end());
  if (origin_.size() != n || basis_.rows() != n)
    throw Error(ErrorKind::InvalidInput, "chart data does not match the polytope dimension");
  for (Index r : active_)
    if (r >= parent.num_facets()) throw Error(ErrorKind::InvalidInput, "facet index out of range in chart");
  if (basis_.cols() + active_.size() != n)
    throw Error(ErrorKind::InvalidInput, "chart basis must have n - |A| columns");
  for (Index r : active_)
    for (std::size_t c = 0; c < basis_.cols(); ++c) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += basis_(j, c) * parent.halfspace(r).normal[j];
      if (s != 0) throw Error(ErrorKind::InvalidInput, "chart basis column is not orthogonal to an active normal");
    }
  if (!lattice::columns_saturated(basis_))
    throw Error(ErrorKind::NonSmoothFace, "chart basis does not extend to a Z-basis");
  for (std::size_t r = 0; r < parent.num_facets(); ++r) {
    const Rational v = parent.halfspace(r).value(origin_);
    if (is_active(r) ? v != 0 : v <= 0)
      throw Error(ErrorKind::InvalidInput, "chart origin is not in the relative interior of the face");
  }
}

bool FaceChart::is_active(Index r) const { return std::binary_search(active_.begin(), active_.end(), r); }

Eigen::VectorXd FaceChart::origin_d() const { return to_eigen(origin_); }

Eigen::MatrixXd FaceChart::basis_d() const {
  Eigen::MatrixXd b(static_cast<Eigen::Index>(basis_.rows()), static_cast<Eigen::Index>(basis_.cols()));
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    for (std::size_t j = 0; j < basis_.cols(); ++j)
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis_(i, j).convert_to<double>();
  return b;
}

Eigen::VectorXd FaceChart::to_ambient(const Eigen::VectorXd& chart_coords) const {
  if (static_cast<std::size_t>(chart_coords.size()) != dim_face())
    throw Error(ErrorKind::InvalidInput, "chart coordinates have the wrong dimension");
  return origin_d() + basis_d() * chart_coords;
}

Eigen::VectorXd FaceChart::to_chart(const Eigen::VectorXd& ambient) const {
  if (static_cast<std::size_t>(ambient.size()) != origin_.size())
    throw Error(ErrorKind::InvalidInput, "ambient point has the wrong dimension");
  return pseudo_inverse_ * (ambient - origin_d());
}

std::vector<Vertex> FaceChart::face_vertices() const {
  std::vector<Vertex> out;
  for (const auto& v : parent_->vertices())
    if (contains_all(v.active, active_)) out.push_back(v);
  return out;
}

FaceChart FaceChart::with_origin(RationalVector origin, bool require_interior) const {
  if (require_interior) return FaceChart(*parent_, active_, std::move(origin), basis_);
  for (Index r : active_)
    if (parent_->halfspace(r).value(origin) != 0)
      throw Error(ErrorKind::InvalidInput, "chart origin is not on the affine hull of the face");
  return FaceChart(Unchecked{}, *parent_, active_, std::move(origin), basis_);
}

FaceChart FaceChart::with_basis(IntMatrix basis) const { return FaceChart(*parent_, active_, origin_, std::move(basis)); }

FaceChart face_chart(const Polytope& p, IndexSet active) {
  const std::size_t n = p.dim();
  std::sort(active.begin(), active.end());
  if (std::adjacent_find(active.begin(), active.end()) != active.end())
    throw Error(ErrorKind::InvalidInput, "repeated facet index in face");
  for (Index r : active)
    if (r >= p.num_facets())
      throw Error(ErrorKind::InvalidInput, "facet index " + std::to_string(r) + " out of range");
  if (active.empty()) {
    return FaceChart(FaceChart::Unchecked{}, p, {}, RationalVector(n, Rational(0)), IntMatrix::identity(n));
  }
  if (active.size() > n) throw Error(ErrorKind::InvalidInput, "more active facets than the dimension");

  IntMatrix normals(active.size(), n);
  RationalMatrix normals_q(active.size(), n);
  for (std::size_t a = 0; a < active.size(); ++a)
    for (std::size_t j = 0; j < n; ++j) {
      normals(a, j) = p.halfspace(active[a]).normal[j];
      normals_q(a, j) = p.halfspace(active[a]).normal[j];
    }
  if (lattice::rank(normals_q) != active.size())
    throw Error(ErrorKind::InvalidInput, "active normals are linearly dependent");

  const auto pts = face_points(p.vertices(), active);
  if (pts.empty()) throw Error(ErrorKind::EmptyFace, "the active facets have no common point in P");
  if (affine_dimension(pts, face_rays(p.rays(), active), n) != n - active.size())
    throw Error(ErrorKind::EmptyFace, "the active facets do not cut out a face of codimension " +
                                          std::to_string(active.size()));

  if (!lattice::columns_saturated(normals.transpose()))
    throw Error(ErrorKind::NonSmoothFace, "active normals do not span a saturated sublattice");
  IntMatrix basis = lattice::integer_kernel(normals);
  if (!lattice::columns_saturated(basis))
    throw Error(ErrorKind::NonSmoothFace, "face lattice kernel is not saturated");

  RationalVector origin = face_interior_point(p.vertices(), p.rays(), active, p.halfspaces(), n);
  return FaceChart(FaceChart::Unchecked{}, p, std::move(active), std::move(origin), std::move(basis));
}

Polytope restrict_polytope(const Polytope& p, const FaceChart& chart) {
  const std::size_t n = p.dim();
  const std::size_t k = chart.dim_face();
  const IntMatrix& b = chart.basis();
  std::vector<HalfSpace> pulled;
  for (std::size_t r = 0; r < p.num_facets(); ++r) {
    if (chart.is_active(r)) continue;
    const HalfSpace& h = p.halfspace(r);
    IntVector normal(k);
    for (std::size_t c = 0; c < k; ++c) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += b(j, c) * h.normal[j];
      normal[c] = to_int64(s);
    }
    Rational offset = h.value(chart.origin());
    const std::int64_t g = content(normal);
    if (g == 0) {
      if (offset < 0) throw Error(ErrorKind::EmptyFace, "face lies outside a facet");
      continue;
    }
    for (auto& x : normal) x /= g;
    offset /= g;
    pulled.push_back(HalfSpace{std::move(normal), offset});
  }
  Irredundant reduced = remove_redundant(k, std::move(pulled));
  return Polytope(k, std::move(reduced.halfspaces), reduced.bounded);
}

Irredundant remove_redundant(std::size_t dim, std::vector<HalfSpace> halfspaces) {
  std::vector<HalfSpace> unique;
  for (auto& h : halfspaces)
    if (std::find(unique.begin(), unique.end(), h) == unique.end()) unique.push_back(std::move(h));

  // Keep only constraints that support a (dim-1)-dimensional face.
  const Enumeration e = enumerate(dim, unique);
  Irredundant out;
  out.bounded = e.rays.empty();
  out.empty = e.vertices.empty();
  for (std::size_t r = 0; r < unique.size(); ++r) {
    const IndexSet single{r};
    if (dim > 0 && affine_dimension(face_points(e.vertices, single), face_rays(e.rays, single), dim) == dim - 1)
      out.halfspaces.push_back(unique[r]);
  }
  return out;
}

Polytope product(const Polytope& a, const Polytope& b) {
  const std::size_t n = a.dim() + b.dim();
  std::vector<HalfSpace> hs;
  for (const auto& h : a.halfspaces()) {
    IntVector normal(n, 0);
    std::copy(h.normal.begin(), h.normal.end(), normal.begin());
    hs.push_back({std::move(normal), h.offset});
  }
  for (const auto& h : b.halfspaces()) {
    IntVector normal(n, 0);
    std::copy(h.normal.begin(), h.normal.end(), normal.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    hs.push_back({std::move(normal), h.offset});
  }
  return Polytope(n, std::move(hs), a.bounded() && b.bounded());
}

Polytope integral_affine_image(const Polytope& p, const IntMatrix& m, const RationalVector& shift) {
  const std::size_t n = p.dim();
  if (m.rows() != n || m.cols() != n || shift.size() != n)
    throw Error(ErrorKind::InvalidInput, "transformation does not match the polytope dimension");
  if (abs(lattice::determinant(m)) != 1) throw Error(ErrorKind::InvalidInput, "matrix is not unimodular");
  // Columns of M^{-T} e_j solve M^T x = e_j.
  RationalMatrix mt(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mt(i, j) = Rational(m(j, i));
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces()) {
    RationalVector rhs(h.normal.begin(), h.normal.end());
    RationalVector x;
    lattice::solve(mt, rhs, x);
    IntVector normal(n);
    for (std::size_t j = 0; j < n; ++j) normal[j] = to_int64(numerator(x[j]));
    hs.push_back({normal, h.offset - dot(normal, shift)});
  }
  return Polytope(n, std::move(hs), p.bounded());
}

Polytope point_polytope() { return Polytope(0, {}, true); }

}  // namespace delzant
