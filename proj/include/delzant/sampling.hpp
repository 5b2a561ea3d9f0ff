#pragma once

#include "delzant/polytope.hpp"
#include "delzant/random.hpp"

#include <Eigen/Dense>

#include <vector>

namespace delzant {

/// Random strictly interior point: Dirichlet(1,…,1) combination of the
/// vertices plus exponential multiples of the extreme rays.
Eigen::VectorXd random_interior_point(const Polytope& p, Rng& rng);

/// Random point in the relative interior of the face of `chart`.
Eigen::VectorXd random_face_point(const FaceChart& chart, Rng& rng);

/// Deterministic quasi-random interior points (Halton), cycling through
/// seven strata: the bulk, then facet distances 1e-1 … 1e-6 toward facet
/// r = (i / 7) mod N.
std::vector<Eigen::VectorXd> stratified_samples(const Polytope& p, std::size_t count);

}  // namespace delzant
