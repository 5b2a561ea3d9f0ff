#include "delzant/boundary.hpp"
#include "delzant/error.hpp"
#include "delzant/sampling.hpp"
#include "fixtures.hpp"

#include <cmath>
#include <functional>

using namespace delzant;
using fx::vec;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::InvalidInput;
}

double xlogy(double x, double y) { return x == 0 ? 0 : x * std::log(x / y); }

struct Setup {
  Polytope p;
  SymplecticPotential phi;
};

std::vector<Setup> setups() {
  std::vector<Setup> out;
  out.push_back({fx::triangle(), guillemin(fx::triangle(), 1.0)});
  out.push_back({fx::square(), guillemin(fx::square())});
  out.push_back({fx::trapezoid(), guillemin(fx::trapezoid())});
  out.push_back({fx::simplex3(), guillemin(fx::simplex3())});
  return out;
}

}  // namespace

TEST_CASE("boundary points") {
  const Polytope t = fx::triangle();
  const FaceChart edge = face_chart(t, {2});
  const BoundaryPoint b = BoundaryPoint::from_ambient(edge, vec({0.3, 0.7}));
  CHECK(b.chart_coords()[0] == doctest::Approx(-0.2));
  const BoundaryPoint c = BoundaryPoint::from_chart(edge, vec({-0.2}));
  CHECK((c.ambient() - vec({0.3, 0.7})).norm() < 1e-15);
  CHECK(kind_of([&] { BoundaryPoint::from_ambient(edge, vec({0.3, 0.6})); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { BoundaryPoint::from_ambient(edge, vec({1.0, 0.0})); }) == ErrorKind::BoundaryOfFace);
  CHECK(kind_of([&] { BoundaryPoint::from_chart(edge, vec({0.7})); }) == ErrorKind::BoundaryOfFace);
  CHECK(kind_of([&] { BoundaryPoint::from_chart(edge, vec({0.1, 0.1})); }) == ErrorKind::InvalidInput);
}

TEST_CASE("boundary divergence goldens") {
  const Polytope t = fx::triangle();
  const SymplecticPotential phi = guillemin(t, 1.0);
  const FaceChart edge = face_chart(t, {2});
  const auto at = [&](double x) { return BoundaryPoint::from_ambient(edge, vec({x, 1 - x})); };
  const double golden = 0.5 * std::log(1 / 0.8) + 0.5 * std::log(1 / 1.2);
  CHECK(boundary_divergence(phi, edge, at(0.5), at(0.4)) == doctest::Approx(golden).epsilon(1e-13));
  CHECK(golden == doctest::Approx(0.020411).epsilon(1e-5));
  CHECK(boundary_divergence(phi, edge, at(0.3), at(0.3)) == 0.0);
  for (double e : {0.1, 0.45, 0.9})
    for (double ep : {0.2, 0.6})
      CHECK(boundary_divergence(phi, edge, at(e), at(ep)) ==
            doctest::Approx(xlogy(e, ep) + xlogy(1 - e, 1 - ep)).epsilon(1e-12));

  const FaceChart whole = face_chart(t, {});
  const Eigen::VectorXd x = vec({0.2, 0.3}), xp = vec({0.5, 0.1});
  CHECK(boundary_divergence(phi, whole, BoundaryPoint::from_ambient(whole, x), BoundaryPoint::from_ambient(whole, xp)) ==
        doctest::Approx(bregman(phi, x, xp)).epsilon(1e-14));
}

TEST_CASE("limit divergence goldens") {
  const Polytope t = fx::triangle();
  const SymplecticPotential phi = guillemin(t, 1.0);
  const FaceChart edge = face_chart(t, {2});
  const double a = 0.25, b = 0.25;
  const BoundaryPoint foot = BoundaryPoint::from_ambient(edge, vec({a / (a + b), b / (a + b)}));
  CHECK(std::abs(limit_divergence(phi, edge, foot, vec({a, b})) - std::log(2.0)) <= 1e-12);
  for (const auto& [a2, b2] : std::vector<std::pair<double, double>>{{0.1, 0.3}, {0.6, 0.2}}) {
    const BoundaryPoint f2 = BoundaryPoint::from_ambient(edge, vec({a2 / (a2 + b2), b2 / (a2 + b2)}));
    CHECK(limit_divergence(phi, edge, f2, vec({a2, b2})) == doctest::Approx(-std::log(a2 + b2)).epsilon(1e-12));
    for (double e : {0.2, 0.7}) {
      const BoundaryPoint eta = BoundaryPoint::from_ambient(edge, vec({e, 1 - e}));
      CHECK(limit_divergence(phi, edge, eta, vec({a2, b2})) ==
            doctest::Approx(xlogy(e, a2) + xlogy(1 - e, b2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("limit divergence is the limit of interior divergences along any path") {
  Rng rng(31);
  for (const auto& [p, phi] : setups()) {
    for (Index r = 0; r < p.num_facets(); ++r) {
      const FaceChart chart = face_chart(p, {r});
      for (int i = 0; i < 10; ++i) {
        const BoundaryPoint eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const Eigen::VectorXd xp = random_interior_point(p, rng);
        const double closed = limit_divergence(phi, chart, eta, xp);
        CHECK(closed > 0);
        // straight toward a random interior point, and along the facet-normal direction
        const Eigen::VectorXd target = random_interior_point(p, rng);
        for (int k : {8}) {
          const double s = std::pow(10.0, -k);
          const Eigen::VectorXd x = eta.ambient() + s * (target - eta.ambient());
          CHECK(std::abs(bregman(phi, x, xp) - closed) <= 1e-5);
        }
        Eigen::VectorXd nu(p.dim());
        for (std::size_t j = 0; j < p.dim(); ++j) nu[j] = static_cast<double>(p.halfspace(r).normal[j]);
        const Eigen::VectorXd x = eta.ambient() + 1e-8 * nu / nu.squaredNorm();
        if (contains(p, x, true)) CHECK(std::abs(bregman(phi, x, xp) - closed) <= 1e-6);
      }
    }
  }
}

TEST_CASE("active facets contribute s l(xi') to the limit divergence") {
  Rng rng(32);
  for (const Polytope& p : {fx::triangle(), fx::trapezoid(), fx::hexagon()}) {
    const SymplecticPotential phi = guillemin(p);
    for (Index r = 0; r < p.num_facets(); ++r) {
      const FaceChart chart = face_chart(p, {r});
      for (int i = 0; i < 10; ++i) {
        const BoundaryPoint eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const Eigen::VectorXd xp = random_interior_point(p, rng);
        double inactive = 0;
        for (Index q = 0; q < p.num_facets(); ++q) {
          if (q == r) continue;
          const double l = facet_value(p, q, eta.ambient()), lp = facet_value(p, q, xp);
          inactive += phi.scale() * (l * std::log(l / lp) - l + lp);
        }
        CHECK(limit_divergence(phi, chart, eta, xp) - inactive ==
              doctest::Approx(phi.scale() * facet_value(p, r, xp)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("boundary divergence does not depend on the chart") {
  Rng rng(33);
  const Polytope s3 = fx::simplex3();
  const SymplecticPotential phi = guillemin(s3);
  const FaceChart chart = face_chart(s3, {3});
  const FaceChart moved = chart.with_origin({Rational(1, 5), Rational(1, 2), Rational(3, 10)});
  const FaceChart sheared = chart.with_basis(chart.basis() * lattice::from_rows({{1, 1}, {0, 1}}, 2));
  const FaceChart flipped = moved.with_basis(chart.basis() * lattice::from_rows({{0, 1}, {1, 0}}, 2));
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd e = random_face_point(chart, rng);
    const Eigen::VectorXd ep = random_face_point(chart, rng);
    const auto in = [&](const FaceChart& c) {
      return boundary_divergence(phi, c, BoundaryPoint::from_ambient(c, e), BoundaryPoint::from_ambient(c, ep));
    };
    const double base = in(chart);
    for (const FaceChart* c : {&moved, &sheared, &flipped}) CHECK(std::abs(in(*c) - base) < 1e-10);
    // a point built in one chart used with another
    CHECK(std::abs(boundary_divergence(phi, sheared, BoundaryPoint::from_ambient(chart, e),
                                       BoundaryPoint::from_ambient(moved, ep)) -
                   base) < 1e-10);
  }
}

TEST_CASE("continuity of the iterated limit") {
  const Polytope t = fx::triangle();
  const SymplecticPotential phi = guillemin(t, 1.0);
  const FaceChart edge = face_chart(t, {2});
  const auto at = [&](double x) { return BoundaryPoint::from_ambient(edge, vec({x, 1 - x})); };
  const ContinuityReport r = continuity_check(phi, edge, at(0.5), at(0.4));
  CHECK(r.pass);
  CHECK(r.target == doctest::Approx(0.020411).epsilon(1e-5));
  CHECK(r.steps.size() == 8);
  CHECK(r.steps.back().gap <= 1e-5);
  const ContinuityReport same = continuity_check(phi, edge, at(0.3), at(0.3));
  CHECK(same.target == 0.0);
  CHECK(same.steps.back().gap <= 1e-5);

  const Polytope sq = fx::square();
  const SymplecticPotential half = guillemin(sq);
  const FaceChart bottom = face_chart(sq, {2});
  const ContinuityReport s =
      continuity_check(half, bottom, BoundaryPoint::from_ambient(bottom, vec({0.2, 0})),
                       BoundaryPoint::from_ambient(bottom, vec({0.7, 0})));
  CHECK(s.pass);
  CHECK(s.target == doctest::Approx(0.5 * (xlogy(0.2, 0.7) + xlogy(0.8, 0.3))).epsilon(1e-12));
  CHECK_THROWS_AS(continuity_check(half, bottom, BoundaryPoint::from_ambient(bottom, vec({0.2, 0})),
                                   BoundaryPoint::from_ambient(bottom, vec({0.7, 0})), 0),
                  Error);
}

TEST_CASE("feet of interior points") {
  const Polytope t = fx::triangle();
  const SymplecticPotential phi = guillemin(t, 1.0);
  const FaceChart edge = face_chart(t, {2});
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{0.25, 0.25}, {0.1, 0.3}, {0.6, 0.05}}) {
    const BoundaryPoint foot = project_to_face(phi, edge, vec({a, b}));
    CHECK((foot.ambient() - vec({a / (a + b), b / (a + b)})).cwiseAbs().maxCoeff() < 1e-10);
    const GeodesicLimit lim = dual_geodesic_limit(phi, t, {GeodesicKind::Dual, vec({a, b}), vec({1, 1})});
    CHECK((lim.point - foot.ambient()).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK((project_to_face(phi, edge, vec({1.0 / 3, 1.0 / 3})).ambient() - vec({0.5, 0.5})).norm() < 1e-12);

  // minimizer of D'_F(. | xi''): compare against nearby face points
  Rng rng(34);
  const Polytope s3 = fx::simplex3();
  const SymplecticPotential phi3 = guillemin(s3);
  const FaceChart face = face_chart(s3, {3});
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd xi = random_interior_point(s3, rng);
    const BoundaryPoint foot = project_to_face(phi3, face, xi);
    const double best = limit_divergence(phi3, face, foot, xi);
    for (int j = 0; j < 10; ++j) {
      const Eigen::VectorXd u = foot.chart_coords() + 1e-3 * vec({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      CHECK(limit_divergence(phi3, face, BoundaryPoint::from_chart(face, u), xi) >= best);
    }
    const GeodesicLimit lim = dual_geodesic_limit(phi3, s3, {GeodesicKind::Dual, xi, vec({1, 1, 1})});
    CHECK((lim.point - foot.ambient()).cwiseAbs().maxCoeff() < 1e-8);
  }

  const FaceChart vertex = face_chart(t, {0, 1});
  CHECK(project_to_face(phi, vertex, vec({0.2, 0.2})).ambient() == vec({0, 0}));
}

TEST_CASE("boundary Pythagorean relation with the foot on the face") {
  const Polytope t = fx::triangle();
  const SymplecticPotential phi = guillemin(t, 1.0);
  const FaceChart edge = face_chart(t, {2});
  const Eigen::VectorXd xi = vec({0.25, 0.25});
  const BoundaryPoint foot = project_to_face(phi, edge, xi);
  const BoundaryPoint eta = BoundaryPoint::from_ambient(edge, vec({0.3, 0.7}));
  const Pythagoras54Report r = pythagoras_54(phi, edge, eta, foot, xi);
  CHECK(std::abs(r.residual) <= 1e-9);
  CHECK(r.perp_defect <= 1e-9);
  CHECK(r.foot_divergence == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(r.total_divergence == doctest::Approx(xlogy(0.3, 0.25) + xlogy(0.7, 0.25)).epsilon(1e-12));
  CHECK(std::abs(pythagoras_54(phi, edge, foot, foot, xi).residual) <= 1e-15);

  const BoundaryPoint wrong = BoundaryPoint::from_ambient(edge, vec({0.55, 0.45}));
  const Pythagoras54Report bad = pythagoras_54(phi, edge, eta, wrong, xi);
  CHECK(std::abs(bad.residual) >= 1e-4);
  CHECK(bad.perp_defect > 1e-2);

  Rng rng(35);
  for (const auto& [p, ph] : setups()) {
    for (Index r2 = 0; r2 < p.num_facets(); ++r2) {
      const FaceChart chart = face_chart(p, {r2});
      for (int i = 0; i < 50; ++i) {
        const Eigen::VectorXd x = random_interior_point(p, rng);
        const BoundaryPoint e = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const Pythagoras54Report rep = pythagoras_54(ph, chart, e, project_to_face(ph, chart, x), x);
        CHECK(rep.perp_defect <= 1e-8);
        CHECK(std::abs(rep.residual) <= 1e-8);
      }
    }
  }
}

TEST_CASE("boundary Pythagorean relation with the right angle inside") {
  Rng rng(36);
  for (const auto& [p, phi] : setups()) {
    const FaceChart chart = face_chart(p, {0});
    for (int i = 0; i < 1000; ++i) {
      const BoundaryPoint eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
      const Eigen::VectorXd xi = random_interior_point(p, rng);
      const Eigen::VectorXd xp = random_interior_point(p, rng);
      const Pythagoras55Report r = pythagoras_55(phi, chart, eta, xi, xp);
      const double pairing = (eta.ambient() - xi).dot(to_dual(phi, xp).y - to_dual(phi, xi).y);
      CHECK(std::abs(r.perp_value - pairing) <= 1e-12 * (1 + std::abs(pairing)));
      CHECK(std::abs(r.residual - r.perp_value) <= 1e-9 * (1 + std::abs(r.residual)));
    }
    for (int i = 0; i < 50; ++i) {
      const BoundaryPoint eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
      const Eigen::VectorXd xi = random_interior_point(p, rng);
      CHECK(pythagoras_55(phi, chart, eta, xi, xi).residual == doctest::Approx(0.0));
      // y(ξ') − y(ξ) orthogonal to η − ξ
      const Eigen::VectorXd d = eta.ambient() - xi;
      Eigen::VectorXd w(p.dim());
      for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = rng.uniform(-1, 1);
      w -= d * (d.dot(w) / d.squaredNorm());
      const Eigen::VectorXd xp = from_dual(phi, p, to_dual(phi, xi).y + w).x;
      CHECK(std::abs(pythagoras_55(phi, chart, eta, xi, xp).residual) <= 1e-9);
    }
  }
}

TEST_CASE("product with the half-line") {
  Rng rng(37);
  for (const Polytope& p : {fx::triangle(), fx::square(), fx::interval()}) {
    const ProductCheckReport r = product_boundary_check(p, 1.0, rng, 100);
    CHECK(r.pass);
    CHECK(r.configurations == 100);
    CHECK(r.additivity_residual <= 1e-10);
    CHECK(r.bottom_face_residual <= 1e-9);
    CHECK(r.side_face_residual <= 1e-9);
  }
  CHECK(half_line().rays().size() == 1);
}
