#include "delzant/dually_flat.hpp"
#include "delzant/error.hpp"
#include "delzant/mixture.hpp"
#include "delzant/sampling.hpp"
#include "fixtures.hpp"

#include <cmath>
#include <functional>
#include <set>

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

RationalVector rv(std::initializer_list<const char*> v) {
  RationalVector out;
  for (auto s : v) out.push_back(parse_rational(s));
  return out;
}

double offset_sum(const Polytope& p) {
  Rational s = 0;
  for (const auto& h : p.halfspaces()) s += h.offset;
  return to_double(s);
}

MixtureFamily categorical3() { return MixtureFamily({rv({"1", "0"}), rv({"0", "1"}), rv({"-1", "-1"})}, rv({"0", "0", "1"})); }

}  // namespace

TEST_CASE("zero-sum condition") {
  CHECK(zero_sum_check(fx::triangle()));
  CHECK(zero_sum_check(fx::square()));
  CHECK(zero_sum_check(fx::cube()));
  CHECK_FALSE(zero_sum_check(fx::trapezoid()));
  CHECK(validate_delzant(fx::trapezoid()).delzant());
  CHECK_FALSE(zero_sum_check(fx::half_line()));

  Rng rng(41);
  const lattice::IntMatrix shear = lattice::from_rows({{1, 2}, {0, 1}}, 2);
  for (const Polytope& p : {fx::triangle(), fx::trapezoid(), fx::hexagon(), fx::nonsmooth_triangle()}) {
    const Polytope image = integral_affine_image(p, shear, {Rational(1, 3), Rational(-2)});
    CHECK(zero_sum_check(image) == zero_sum_check(p));
    std::vector<HalfSpace> hs = p.halfspaces();
    std::reverse(hs.begin(), hs.end());
    CHECK(zero_sum_check(Polytope(2, hs)) == zero_sum_check(p));
  }
}

TEST_CASE("categorical families from polytopes") {
  const MixtureFamily tri = to_mixture(fx::triangle());
  CHECK(tri == categorical3());
  const Eigen::VectorXd p = tri.probabilities(vec({0.2, 0.3}));
  CHECK((p - vec({0.2, 0.3, 0.5})).cwiseAbs().maxCoeff() < 1e-16);

  const MixtureFamily sq = to_mixture(fx::square());
  CHECK((sq.probabilities(vec({0.2, 0.6})) - vec({0.1, 0.4, 0.3, 0.2})).cwiseAbs().maxCoeff() < 1e-16);

  const Polytope scaled = fx::make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -1}, "2"}});
  CHECK((to_mixture(scaled).probabilities(vec({0.5, 1.0})) - vec({0.25, 0.5, 0.25})).cwiseAbs().maxCoeff() < 1e-16);

  CHECK(kind_of([] { to_mixture(fx::trapezoid()); }) == ErrorKind::NotTorifiable);

  Rng rng(42);
  for (const auto& [name, poly] : fx::corpus()) {
    if (!zero_sum_check(poly)) continue;
    const MixtureFamily fam = to_mixture(poly);
    for (int i = 0; i < 100; ++i) CHECK(std::abs(fam.probabilities(random_interior_point(poly, rng)).sum() - 1) <= 1e-14);
  }
}

TEST_CASE("family invariants are enforced") {
  CHECK_THROWS_AS(MixtureFamily({rv({"1", "0"}), rv({"0", "1"})}, rv({"0", "1"})), Error);
  CHECK_THROWS_AS(MixtureFamily({rv({"1"}), rv({"-1"})}, rv({"1/2", "1/3"})), Error);
  CHECK_THROWS_AS(MixtureFamily({rv({"1"}), rv({"-1", "0"})}, rv({"1/2", "1/2"})), Error);
  CHECK_THROWS_AS(categorical3().probabilities(vec({0.7, 0.7})), Error);
  CHECK(categorical3().probabilities(vec({1, 0}))[2] == 0.0);
}

TEST_CASE("Kullback-Leibler divergence") {
  const MixtureFamily tri = categorical3();
  CHECK(kl(tri, vec({0.2, 0.3}), vec({0.2, 0.3})) == 0.0);
  CHECK(kl(tri, vec({0.25, 0.25}), vec({1.0 / 3, 1.0 / 3})) == doctest::Approx(0.058892).epsilon(1e-5));
  CHECK(std::isinf(kl(tri, vec({0.25, 0.25}), vec({0.5, 0.5}))));
  CHECK(kl(tri, vec({0.5, 0.5}), vec({0.25, 0.25})) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("Bregman divergence is a scaled KL divergence under the zero-sum condition") {
  Rng rng(43);
  for (const auto& [name, p] : fx::corpus()) {
    if (!zero_sum_check(p)) continue;
    CAPTURE(name);
    const MixtureFamily fam = to_mixture(p);
    for (double s : {0.5, 1.0}) {
      const SymplecticPotential phi = guillemin(p, s);
      for (int i = 0; i < 100; ++i) {
        const Eigen::VectorXd x = random_interior_point(p, rng);
        const Eigen::VectorXd xp = random_interior_point(p, rng);
        const double k = s * offset_sum(p) * kl(fam, x, xp);
        CHECK(std::abs(bregman(phi, x, xp) - k) <= 1e-12 * (1 + k));
      }
    }
  }
}

TEST_CASE("Fisher metric is the scaled Hessian of the Guillemin potential") {
  Rng rng(44);
  for (const Polytope& p : {fx::triangle(), fx::square(), fx::hexagon(), fx::simplex_half()}) {
    if (!zero_sum_check(p)) continue;
    const MixtureFamily fam = to_mixture(p);
    const SymplecticPotential unit = guillemin(p, 1.0);
    const double lam = offset_sum(p);
    for (int i = 0; i < 50; ++i) {
      const Eigen::VectorXd x = random_interior_point(p, rng);
      const Eigen::MatrixXd h = hessian(unit, x) / lam;
      CHECK(fx::max_abs(fam.fisher_metric(x) - h) <= 1e-8 * (1 + fx::max_abs(h)));
      // second differences of the negative entropy Σ p log p
      auto negent = [&](const Eigen::VectorXd& z) {
        const Eigen::VectorXd q = fam.probabilities(z);
        return (q.array() * q.array().log()).sum();
      };
      if (p.facet_values(x).minCoeff() < 0.05) continue;
      const double e = 1e-5;
      for (Eigen::Index a = 0; a < x.size(); ++a) {
        Eigen::VectorXd ea = Eigen::VectorXd::Zero(x.size());
        ea[a] = e;
        const double fd = (negent(x + ea) - 2 * negent(x) + negent(x - ea)) / (e * e);
        CHECK(fd == doctest::Approx(h(a, a)).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("polytopes from mixture families") {
  const TorificationReport tri = from_mixture(categorical3());
  CHECK(tri.compact_torification);
  CHECK(tri.zero_sum);
  CHECK(tri.delzant.delzant());
  CHECK(tri.polytope.halfspaces() == fx::triangle().halfspaces());
  CHECK(to_mixture(tri.polytope) == categorical3());

  // non-unimodular corner at (1/2, 0)
  const MixtureFamily bad({rv({"1", "0"}), rv({"0", "1"}), rv({"-2", "-1"}), rv({"1", "0"})}, rv({"0", "0", "1", "0"}));
  const TorificationReport r = from_mixture(bad);
  CHECK_FALSE(r.compact_torification);
  CHECK_FALSE(r.delzant.smooth);
  REQUIRE(r.delzant.failures.size() == 1);
  CHECK(abs(r.delzant.failures[0].determinant) == 2);
  CHECK(r.delzant.failures[0].coords[0] == doctest::Approx(0.5));
  CHECK(r.polytope.num_facets() == 3);

  // rational slopes are cleared to primitive integer normals
  const MixtureFamily halves({rv({"1/2", "0"}), rv({"0", "1/2"}), rv({"-1/2", "-1/2"})}, rv({"0", "0", "1"}));
  const TorificationReport h = from_mixture(halves);
  CHECK(h.compact_torification);
  CHECK(h.polytope.halfspaces() == fx::make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -1}, "2"}}).halfspaces());
  const MixtureFamily thirds({rv({"1/2", "0"}), rv({"0", "1/3"}), rv({"-1/2", "-1/3"})}, rv({"0", "0", "1"}));
  const TorificationReport t3 = from_mixture(thirds);
  std::set<IntVector> normals;
  for (const auto& hs : t3.polytope.halfspaces()) normals.insert(hs.normal);
  CHECK(normals == std::set<IntVector>{{1, 0}, {0, 1}, {-3, -2}});
  CHECK_FALSE(t3.compact_torification);

  const MixtureFamily strip({rv({"1", "0"}), rv({"-1", "0"})}, rv({"1/2", "1/2"}));
  CHECK(kind_of([&] { from_mixture(strip); }) == ErrorKind::NoCompactTorification);
  const MixtureFamily empty({rv({"1"}), rv({"-1"}), rv({"0"})}, rv({"-1", "-1", "3"}));
  CHECK(kind_of([&] { from_mixture(empty); }) == ErrorKind::Degenerate);
}
