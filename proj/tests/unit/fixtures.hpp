#pragma once

#include "delzant/polytope.hpp"
#include "delzant/random.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace fx {

using delzant::HalfSpace;
using delzant::Polytope;

inline Polytope make(std::size_t dim, const std::vector<std::pair<delzant::IntVector, std::string>>& hs,
                     bool bounded = true) {
  std::vector<HalfSpace> out;
  for (const auto& [n, o] : hs) out.push_back({n, delzant::parse_rational(o)});
  return Polytope(dim, std::move(out), bounded);
}

inline Polytope triangle() { return make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -1}, "1"}}); }
inline Polytope square() { return make(2, {{{1, 0}, "0"}, {{-1, 0}, "1"}, {{0, 1}, "0"}, {{0, -1}, "1"}}); }
inline Polytope trapezoid() { return make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -1}, "2"}, {{0, -1}, "1"}}); }
inline Polytope hexagon() {
  return make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{1, 1}, "-1"}, {{-1, 0}, "2"}, {{0, -1}, "2"}, {{-1, -1}, "3"}});
}
inline Polytope nonsmooth_triangle() { return make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -2}, "2"}}); }
inline Polytope interval() { return make(1, {{{1}, "0"}, {{-1}, "1"}}); }
inline Polytope half_line() { return make(1, {{{1}, "0"}}, false); }
inline Polytope simplex3() {
  return make(3, {{{1, 0, 0}, "0"}, {{0, 1, 0}, "0"}, {{0, 0, 1}, "0"}, {{-1, -1, -1}, "1"}});
}
inline Polytope cube() {
  return make(3, {{{1, 0, 0}, "0"}, {{-1, 0, 0}, "1"}, {{0, 1, 0}, "0"}, {{0, -1, 0}, "1"}, {{0, 0, 1}, "0"}, {{0, 0, -1}, "1"}});
}
// Scaled simplex with a rational offset, exercising non-integer vertices.
inline Polytope simplex_half() { return make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -1}, "1/2"}}); }

/// Bounded Delzant corpus used by property tests.
inline std::vector<std::pair<std::string, Polytope>> corpus() {
  return {{"triangle", triangle()}, {"square", square()},   {"trapezoid", trapezoid()}, {"hexagon", hexagon()},
          {"simplex3", simplex3()}, {"cube", cube()},       {"simplex_half", simplex_half()}};
}

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace fx
