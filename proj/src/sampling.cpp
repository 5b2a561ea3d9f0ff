#include "delzant/sampling.hpp"

#include "delzant/error.hpp"

#include <algorithm>
#include <cmath>

namespace delzant {

namespace {

std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> primes;
  for (unsigned candidate = 2; primes.size() < count; ++candidate) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0, f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

// Convex combination of the vertices with Dirichlet weights built from
// uniforms in (0, 1), plus exponential multiples of the rays.
Eigen::VectorXd combine(const Polytope& p, const std::vector<double>& uniforms) {
  const auto& verts = p.vertices();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.dim()));
  double total = 0.0;
  std::size_t u = 0;
  for (const auto& v : verts) {
    const double w = -std::log(uniforms[u++]);
    x += w * v.coords;
    total += w;
  }
  x /= total;
  for (const auto& ray : p.rays()) {
    const double w = -std::log(uniforms[u++]);
    for (std::size_t j = 0; j < ray.direction.size(); ++j)
      x(static_cast<Eigen::Index>(j)) += w * static_cast<double>(ray.direction[j]);
  }
  return x;
}

}  // namespace

Eigen::VectorXd random_interior_point(const Polytope& p, Rng& rng) {
  std::vector<double> uniforms(p.vertices().size() + p.rays().size());
  for (;;) {
    for (auto& u : uniforms) u = rng.open_uniform();
    Eigen::VectorXd x = combine(p, uniforms);
    if (contains(p, x, true)) return x;
  }
}

Eigen::VectorXd random_face_point(const FaceChart& chart, Rng& rng) {
  const Polytope& parent = chart.parent();
  if (chart.active().empty()) return random_interior_point(parent, rng);
  const std::vector<Vertex> corners = chart.face_vertices();
  std::vector<Eigen::VectorXd> face_rays;
  for (const auto& ray : parent.rays()) {
    if (!std::all_of(chart.active().begin(), chart.active().end(),
                     [&](Index a) { return std::binary_search(ray.active.begin(), ray.active.end(), a); }))
      continue;
    Eigen::VectorXd d(static_cast<Eigen::Index>(ray.direction.size()));
    for (std::size_t j = 0; j < ray.direction.size(); ++j) d(static_cast<Eigen::Index>(j)) = static_cast<double>(ray.direction[j]);
    face_rays.push_back(d);
  }
  for (;;) {
    // Work in chart coordinates so the point lies on aff(F) to rounding.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(chart.dim_face()));
    double total = 0.0;
    for (const auto& v : corners) {
      const double w = -std::log(rng.open_uniform());
      u += w * chart.to_chart(v.coords);
      total += w;
    }
    u /= total;
    const Eigen::VectorXd zero = chart.to_chart(chart.origin_d());
    for (const auto& d : face_rays) u += -std::log(rng.open_uniform()) * (chart.to_chart(chart.origin_d() + d) - zero);
    const Eigen::VectorXd x = chart.to_ambient(u);
    bool ok = true;
    for (std::size_t r = 0; r < parent.num_facets() && ok; ++r)
      if (!chart.is_active(r)) ok = parent.halfspace(r).value(x) > 1e-8;
    if (ok) return x;
  }
}

std::vector<Eigen::VectorXd> stratified_samples(const Polytope& p, std::size_t count) {
  const auto& verts = p.vertices();
  const std::size_t dims = verts.size() + p.rays().size() + 1;
  const std::vector<unsigned> primes = first_primes(dims);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  std::vector<double> uniforms(dims - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t index = i + 1;
    for (std::size_t d = 0; d + 1 < dims; ++d) uniforms[d] = std::clamp(radical_inverse(index, primes[d]), 1e-12, 1.0 - 1e-12);
    Eigen::VectorXd q = combine(p, uniforms);
    const std::size_t stratum = i % 7;
    if (stratum == 0 || p.num_facets() == 0) {
      out.push_back(q);
      continue;
    }
    const double distance = std::pow(10.0, -static_cast<double>(stratum));
    const std::size_t r = (i / 7) % p.num_facets();
    std::vector<const Vertex*> on_facet;
    for (const auto& v : verts)
      if (std::binary_search(v.active.begin(), v.active.end(), r)) on_facet.push_back(&v);
    const Vertex& anchor =
        *on_facet[static_cast<std::size_t>(radical_inverse(index, primes[dims - 1]) * on_facet.size()) % on_facet.size()];
    const double lq = p.halfspace(r).value(q);
    const double t = std::min(1.0, distance / lq);
    out.push_back(anchor.coords + t * (q - anchor.coords));
  }
  return out;
}

}  // namespace delzant
