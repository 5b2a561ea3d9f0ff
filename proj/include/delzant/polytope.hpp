#pragma once

#include "delzant/lattice.hpp"
#include "delzant/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace delzant {

using Index = std::size_t;
using IndexSet = std::vector<Index>;

/// One defining inequality l(ξ) = ν·ξ + λ >= 0 with a primitive integer
/// inward normal ν and an exact offset λ.
struct HalfSpace {
  IntVector normal;
  Rational offset;

  Rational value(const RationalVector& point) const;
  double value(const Eigen::VectorXd& point) const;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

struct Vertex {
  Eigen::VectorXd coords;
  RationalVector exact;
  IndexSet active;  // sorted; every listed facet vanishes exactly
};

/// An extreme ray of the recession cone, as a primitive integer direction.
struct Ray {
  IntVector direction;
  IndexSet active;
};

/// Convex polyhedron in half-space form. Construction validates the data and
/// enumerates vertices and extreme rays exactly; afterwards the object is
/// immutable, so it can be shared freely between threads.
///
/// Facets are kept in input order. Nothing downstream depends on the order:
/// potentials and divergences are sums over facets.
class Polytope {
 public:
  /// Throws ErrorKind::InvalidInput for malformed normals or duplicate
  /// half-spaces and ErrorKind::Inconsistency when the region is empty, not
  /// full-dimensional, has no vertex, or is unbounded while `bounded` is set.
  Polytope(std::size_t dim, std::vector<HalfSpace> halfspaces, bool bounded = true);

  std::size_t dim() const { return dim_; }
  std::size_t num_facets() const { return halfspaces_.size(); }
  bool bounded() const { return bounded_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const HalfSpace& halfspace(Index r) const { return halfspaces_.at(r); }

  const std::vector<Vertex>& vertices() const { return geometry_->vertices; }
  const std::vector<Ray>& rays() const { return geometry_->rays; }

  /// A strictly interior rational point: the vertex mean plus the sum of the
  /// extreme rays (a strictly positive combination of all generators).
  const RationalVector& interior_point() const { return geometry_->interior; }
  Eigen::VectorXd interior_point_d() const;

  /// Vertex centroid (the Newton starting point for the Legendre inverse).
  Eigen::VectorXd centroid() const;

  /// Facet values l_r(ξ) for every r.
  Eigen::VectorXd facet_values(const Eigen::VectorXd& point) const;

  /// Normals as rows of an N x n floating matrix, offsets as an N-vector.
  Eigen::MatrixXd normal_matrix() const;
  Eigen::VectorXd offset_vector() const;

 private:
  struct Geometry {
    std::vector<Vertex> vertices;
    std::vector<Ray> rays;
    RationalVector interior;
  };

  std::size_t dim_;
  std::vector<HalfSpace> halfspaces_;
  bool bounded_;
  std::shared_ptr<const Geometry> geometry_;
};

/// l_r(ξ) = ξ·ν_r + λ_r. Throws InvalidInput on dimension or index mismatch.
double facet_value(const Polytope& p, Index r, const Eigen::VectorXd& point);

/// All vertices with their full active sets (possibly more than n entries on
/// a non-simple polytope). Found by solving every n-subset of facets exactly.
std::vector<Vertex> vertices(const Polytope& p);

bool contains(const Polytope& p, const Eigen::VectorXd& point, bool strict);

struct DelzantFailure {
  Index vertex = 0;
  Eigen::VectorXd coords;
  IndexSet active;
  Integer determinant = 0;  // 0 when the vertex is not simple
  std::string reason;
};

struct DelzantReport {
  bool simple = true;
  bool rational = true;
  bool smooth = true;
  bool partial = false;  // unbounded input: only existing vertices certified
  std::vector<DelzantFailure> failures;

  bool delzant() const { return simple && rational && smooth; }
};

/// Simple: n facets at every vertex. Rational: always, normals are integral.
/// Smooth: the n active normals at every vertex have determinant ±1, which for
/// a simple vertex is equivalent to the primitive edge vectors forming a
/// Z-basis.
DelzantReport validate_delzant(const Polytope& p);

/// Lattice-adapted parametrization η = origin + basis·u of the face
/// F = {l_r = 0, r ∈ A} ∩ P.
class FaceChart {
 public:
  /// Validates a user-chosen chart: basis columns annihilate the active
  /// normals, are saturated in Z^n and span the face directions; origin lies
  /// in the relative interior of F.
  FaceChart(const Polytope& parent, IndexSet active, RationalVector origin, lattice::IntMatrix basis);

  const Polytope& parent() const { return *parent_; }
  const IndexSet& active() const { return active_; }
  const RationalVector& origin() const { return origin_; }
  const lattice::IntMatrix& basis() const { return basis_; }
  std::size_t dim_face() const { return basis_.cols(); }
  bool is_active(Index r) const;

  Eigen::VectorXd origin_d() const;
  Eigen::MatrixXd basis_d() const;

  Eigen::VectorXd to_ambient(const Eigen::VectorXd& chart_coords) const;
  /// Least-squares inverse of to_ambient (exact for points on aff(F)).
  Eigen::VectorXd to_chart(const Eigen::VectorXd& ambient) const;

  /// Vertices of P lying on F.
  std::vector<Vertex> face_vertices() const;

  /// Same face and basis re-anchored at another relative-interior point of F
  /// (or at any point of aff(F) when `require_interior` is false).
  FaceChart with_origin(RationalVector origin, bool require_interior = true) const;

  /// Same face with basis replaced by basis·U for a unimodular U.
  FaceChart with_basis(lattice::IntMatrix basis) const;

 private:
  friend FaceChart face_chart(const Polytope& p, IndexSet active);
  struct Unchecked {};
  FaceChart(Unchecked, const Polytope& parent, IndexSet active, RationalVector origin, lattice::IntMatrix basis);

  std::shared_ptr<const Polytope> parent_;
  IndexSet active_;
  RationalVector origin_;
  lattice::IntMatrix basis_;
  Eigen::MatrixXd pseudo_inverse_;
};

/// Canonical chart of the face defined by `active`. The basis is the Hermite
/// normal form of the integer kernel of the active normals; the origin is the
/// mean of the face vertices plus the face's extreme rays. An empty set gives
/// the identity chart (origin 0, basis I).
FaceChart face_chart(const Polytope& p, IndexSet active);

/// The polytope P_F in chart coordinates: inactive facets pulled back through
/// the chart, re-primitivized, with redundant constraints dropped.
Polytope restrict_polytope(const Polytope& p, const FaceChart& chart);

struct Irredundant {
  std::vector<HalfSpace> halfspaces;
  bool bounded = true;
  bool empty = false;  // no vertex
};

/// Drops duplicate half-spaces and those not supporting a facet.
Irredundant remove_redundant(std::size_t dim, std::vector<HalfSpace> halfspaces);

/// P1 x P2 with block-concatenated constraints; facets of P1 come first.
Polytope product(const Polytope& a, const Polytope& b);

/// Image under ξ ↦ Mξ + shift for M in GL(n, Z): normals become M^{-T}ν.
Polytope integral_affine_image(const Polytope& p, const lattice::IntMatrix& m, const RationalVector& shift);

/// Zero-dimensional polytope (a single point).
Polytope point_polytope();

}  // namespace delzant
