// One line per acceptance criterion. Tolerances are fixed here, not read from
// the library defaults, so a change there cannot loosen a criterion.
#include "delzant/boundary.hpp"
#include "delzant/dually_flat.hpp"
#include "delzant/error.hpp"
#include "delzant/mixture.hpp"
#include "delzant/potential.hpp"
#include "delzant/sampling.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace delzant;

namespace {

constexpr std::uint64_t kSeed = 20240611;

Polytope make(std::size_t dim, const std::vector<std::pair<IntVector, const char*>>& hs) {
  std::vector<HalfSpace> out;
  for (const auto& [n, o] : hs) out.push_back({n, parse_rational(o)});
  return Polytope(dim, out);
}

Polytope triangle() { return make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -1}, "1"}}); }
Polytope square() { return make(2, {{{1, 0}, "0"}, {{-1, 0}, "1"}, {{0, 1}, "0"}, {{0, -1}, "1"}}); }
Polytope trapezoid() { return make(2, {{{1, 0}, "0"}, {{0, 1}, "0"}, {{-1, -1}, "2"}, {{0, -1}, "1"}}); }

Eigen::VectorXd v2(double a, double b) { return Eigen::Vector2d(a, b); }
Eigen::VectorXd v1(double a) { return Eigen::VectorXd::Constant(1, a); }

double xlogy(double x, double y) { return x == 0 ? 0 : x * std::log(x / y); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  int failed = 0;
  void report(int id, const std::string& title, const Outcome& o) {
    std::printf("[%s] criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
    if (!o.pass) ++failed;
  }
};

std::string fmt(const char* format, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

Outcome guard(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {false, std::string("raised ") + e.what()};
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const Polytope t = triangle();
  const SymplecticPotential phi = guillemin(t, 1.0);
  const double a = 0.25, b = 0.25;
  Outcome o;
  double worst = 0;

  const Eigen::VectorXd y = to_dual(phi, v2(a, b)).y;
  // y = (log x1/(1−x1−x2), log x2/(1−x1−x2))
  const double dy = std::max(std::abs(y[0] - std::log(a / (1 - a - b))), std::abs(y[1] - std::log(b / (1 - a - b))));
  o.pass &= dy <= 1e-12;

  Eigen::Matrix2d g;
  g << 1 / a + 1 / (1 - a - b), 1 / (1 - a - b), 1 / (1 - a - b), 1 / b + 1 / (1 - a - b);
  const double dg = (hessian(phi, v2(a, b)) - g).cwiseAbs().maxCoeff();
  o.pass &= dg <= 1e-12;

  const GeodesicLimit lim = dual_geodesic_limit(phi, t, {GeodesicKind::Dual, v2(a, b), v2(1, 1)});
  const double dl = (lim.point - v2(a / (a + b), b / (a + b))).cwiseAbs().maxCoeff();
  o.pass &= dl <= 1e-8;

  const FaceChart edge = face_chart(t, {2});
  const BoundaryPoint foot = BoundaryPoint::from_ambient(edge, lim.point);
  const double dprime = limit_divergence(phi, edge, foot, v2(a, b));
  const double dd = std::abs(dprime - (-std::log(a + b)));
  o.pass &= dd <= 1e-8;

  const BoundaryPoint eta = BoundaryPoint::from_ambient(edge, v2(0.3, 0.7));
  const double lhs = limit_divergence(phi, edge, eta, v2(a, b));
  const double rhs = boundary_divergence(phi, edge, eta, foot) + dprime;
  const double dp = std::abs(lhs - rhs);
  // closed form on the edge
  const double closed = xlogy(0.3, a) + xlogy(0.7, b);
  const double dc = std::abs(lhs - closed);
  o.pass &= dp <= 1e-8 && dc <= 1e-8;

  const double elapsed = seconds_since(start);
  o.pass &= elapsed < 1.0;
  worst = std::max({dy, dg, dl, dd, dp, dc});
  o.detail = "max deviation " + fmt("%.3g", worst) + ", y tol 1e-12, G tol 1e-12, limit/D'/Pythagoras tol 1e-8, " +
             fmt("%.3f s", elapsed) + " < 1 s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const SymplecticPotential half = guillemin(half_line(), 1.0);
  const double d12 = std::abs(bregman(half, v1(1), v1(2)) - (1 - std::log(2.0)));
  o.pass &= d12 <= 1e-12;

  Rng rng(kSeed);
  const ProductCheckReport lib = product_boundary_check(triangle(), 1.0, rng, 100);

  // the same equalities with closed-form divergences on both factors
  const Polytope t = triangle();
  const Polytope prod = product(t, half_line());
  const SymplecticPotential phi = direct_sum(guillemin(t, 1.0), half);
  auto d_tri = [](const Eigen::VectorXd& x, const Eigen::VectorXd& xp) {
    return xlogy(x[0], xp[0]) + xlogy(x[1], xp[1]) + xlogy(1 - x[0] - x[1], 1 - xp[0] - xp[1]);
  };
  auto d_half = [](double x, double xp) { return xlogy(x, xp) + xp - x; };
  auto join = [](const Eigen::VectorXd& a, double b) {
    Eigen::VectorXd out(a.size() + 1);
    out << a, b;
    return out;
  };
  double additivity = 0, bottom = 0, side = 0;
  const FaceChart floor = face_chart(prod, {3});
  const FaceChart wall = face_chart(prod, {2});
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd x1 = random_interior_point(t, rng), x1p = random_interior_point(t, rng);
    const double x2 = rng.uniform(0.05, 5), x2p = rng.uniform(0.05, 5);
    const double total = bregman(phi, join(x1, x2), join(x1p, x2p));
    additivity = std::max(additivity, std::abs(total - d_tri(x1, x1p) - d_half(x2, x2p)));

    // face P∘ × {0}: D̃((ξ1,0)‖(ξ1',ξ2)) = D̃((ξ1,0)‖(ξ1,ξ2)) + D̃((ξ1,ξ2)‖(ξ1',ξ2))
    const BoundaryPoint on_floor = BoundaryPoint::from_ambient(floor, join(x1, 0));
    const double lb = limit_divergence(phi, floor, on_floor, join(x1p, x2));
    const double rb = limit_divergence(phi, floor, on_floor, join(x1, x2)) + bregman(phi, join(x1, x2), join(x1p, x2));
    bottom = std::max(bottom, std::abs(lb - rb));
    bottom = std::max(bottom, std::abs(lb - (d_tri(x1, x1p) + x2)));

    // face ∂P × R>0 (edge 1−x1−x2 = 0): D̃((η,ξ2)‖(ξ1,ξ2')) = D̃((η,ξ2)‖(ξ1,ξ2)) + D̃((ξ1,ξ2)‖(ξ1,ξ2'))
    const double e = rng.uniform(0.05, 0.95);
    const BoundaryPoint on_wall = BoundaryPoint::from_ambient(wall, join(v2(e, 1 - e), x2));
    const double ls = limit_divergence(phi, wall, on_wall, join(x1, x2p));
    const double rs = limit_divergence(phi, wall, on_wall, join(x1, x2)) + bregman(phi, join(x1, x2), join(x1, x2p));
    side = std::max(side, std::abs(ls - rs));
  }
  o.pass &= additivity <= 1e-9 && bottom <= 1e-9 && side <= 1e-9 && lib.pass;
  o.detail = "|D(1||2) - (1 - log 2)| = " + fmt("%.3g", d12) + " (tol 1e-12); over 100 configurations additivity " +
             fmt("%.3g", std::max(additivity, lib.additivity_residual)) + ", bottom face " +
             fmt("%.3g", std::max(bottom, lib.bottom_face_residual)) + ", side face " +
             fmt("%.3g", std::max(side, lib.side_face_residual)) + " (tol 1e-9)";
  return o;
}

Outcome criterion3() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  Rng rng(kSeed + 3);
  double worst = 0;
  int runs = 0, nonmonotone = 0;
  for (const Polytope& p : {triangle(), square()}) {
    const SymplecticPotential phi = guillemin(p, p.num_facets() == 3 ? 1.0 : 0.5);
    for (Index r = 0; r < p.num_facets(); ++r) {
      const FaceChart chart = face_chart(p, {r});
      for (int i = 0; i < 20; ++i) {
        const BoundaryPoint eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const BoundaryPoint eta_p = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const ContinuityReport rep = continuity_check(phi, chart, eta, eta_p, 8);
        const auto& steps = rep.steps;
        bool monotone = steps.size() >= 5;
        for (std::size_t k = steps.size() - 4; monotone && k < steps.size(); ++k)
          monotone = steps[k].gap < steps[k - 1].gap || steps[k].gap <= 1e-12;
        worst = std::max(worst, steps.back().gap);
        if (!monotone) ++nonmonotone;
        ++runs;
      }
    }
  }
  const double elapsed = seconds_since(start);
  o.pass = worst <= 1e-5 && nonmonotone == 0 && elapsed < 10.0;
  o.detail = std::to_string(runs) + " pairs, worst gap at distance 1e-8 " + fmt("%.3g", worst) + " (tol 1e-5), " +
             std::to_string(nonmonotone) + " non-monotone, " + fmt("%.2f s", elapsed) + " < 10 s";
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(kSeed + 4);
  double worst = 0, weakest_control = INFINITY;
  int draws = 0;
  for (const Polytope& p : {triangle(), square(), trapezoid()}) {
    const SymplecticPotential phi = guillemin(p, 1.0);
    for (Index r = 0; r < p.num_facets(); ++r) {
      const FaceChart chart = face_chart(p, {r});
      const Polytope pf = restrict_polytope(p, chart);
      for (int i = 0; i < 50; ++i) {
        const Eigen::VectorXd xi = random_interior_point(p, rng);
        const BoundaryPoint eta = BoundaryPoint::from_ambient(chart, random_face_point(chart, rng));
        const BoundaryPoint foot = project_to_face(phi, chart, xi);
        worst = std::max(worst, std::abs(pythagoras_54(phi, chart, eta, foot, xi).residual));
        ++draws;

        // η' moved 0.05 along F, away from η
        const double u = eta.chart_coords()[0], u_foot = foot.chart_coords()[0];
        const double shifted = u_foot + (u_foot >= u ? 0.05 : -0.05);
        if (!contains(pf, v1(shifted), true) || pf.facet_values(v1(shifted)).minCoeff() <= 1e-8) continue;
        const BoundaryPoint wrong = BoundaryPoint::from_chart(chart, v1(shifted));
        weakest_control = std::min(weakest_control, std::abs(pythagoras_54(phi, chart, eta, wrong, xi).residual));
      }
    }
  }
  o.pass = worst <= 1e-8 && weakest_control >= 1e-4;
  o.detail = std::to_string(draws) + " draws on triangle/square/trapezoid, worst residual " + fmt("%.3g", worst) +
             " (tol 1e-8); negative control smallest residual " + fmt("%.3g", weakest_control) + " (needs >= 1e-4)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(kSeed + 5);
  const Polytope t = triangle();
  const SymplecticPotential phi = guillemin(t, 1.0);
  const FaceChart edge = face_chart(t, {2});
  double identity = 0, literal = 0, orth = 0;
  for (int i = 0; i < 1000; ++i) {
    const BoundaryPoint eta = BoundaryPoint::from_ambient(edge, random_face_point(edge, rng));
    const Eigen::VectorXd xi = random_interior_point(t, rng), xp = random_interior_point(t, rng);
    const double res = pythagoras_55(phi, edge, eta, xi, xp).residual;
    const double pairing = (eta.ambient() - xi).dot(grad(phi, xi) - grad(phi, xp));
    identity = std::max(identity, std::abs(res + pairing));
    literal = std::max(literal, std::abs(res - pairing));
  }
  for (int i = 0; i < 100; ++i) {
    const BoundaryPoint eta = BoundaryPoint::from_ambient(edge, random_face_point(edge, rng));
    const Eigen::VectorXd xi = random_interior_point(t, rng);
    const Eigen::VectorXd d = eta.ambient() - xi;
    const Eigen::VectorXd w = v2(-d[1], d[0]) * (rng.uniform(-2, 2) / d.norm());
    const Eigen::VectorXd xp = from_dual(phi, t, grad(phi, xi) + w).x;
    orth = std::max(orth, std::abs(pythagoras_55(phi, edge, eta, xi, xp).residual));
  }
  o.pass = identity <= 1e-9 && orth <= 1e-9;
  o.detail = "1000 triples: |residual + (eta-xi).(y(xi)-y(xi'))| <= " + fmt("%.3g", identity) +
             " (tol 1e-9; with the literal sign the gap reaches " + fmt("%.3g", literal) +
             ", the pairing enters with a minus); constructed-orthogonal residual " + fmt("%.3g", orth) + " (tol 1e-9)";
  return o;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(kSeed + 6);
  double norm = 0, relation = 0;
  for (const Polytope& p : {triangle(), square()}) {
    double lambda = 0;
    for (const auto& h : p.halfspaces()) lambda += to_double(h.offset);
    const MixtureFamily fam = to_mixture(p);
    for (double s : {0.5, 1.0}) {
      const SymplecticPotential phi = guillemin(p, s);
      for (int i = 0; i < 100; ++i) {
        const Eigen::VectorXd x = random_interior_point(p, rng), xp = random_interior_point(p, rng);
        norm = std::max(norm, std::abs(fam.probabilities(x).sum() - 1));
        // p(r|ξ) = l_r(ξ)/Σλ computed from the facets directly
        double k = 0;
        for (Index r = 0; r < p.num_facets(); ++r)
          k += xlogy(facet_value(p, r, x) / lambda, facet_value(p, r, xp) / lambda);
        relation = std::max(relation, std::abs(bregman(phi, x, xp) - s * lambda * k));
        relation = std::max(relation, std::abs(kl(fam, x, xp) - k));
      }
    }
  }
  const bool trap_delzant = validate_delzant(trapezoid()).delzant();
  const bool trap_zero_sum = zero_sum_check(trapezoid());
  const bool zero_sum_ok = zero_sum_check(triangle()) && zero_sum_check(square());
  o.pass = norm <= 1e-14 && relation <= 1e-12 && trap_delzant && !trap_zero_sum && zero_sum_ok;
  o.detail = "|sum p - 1| " + fmt("%.3g", norm) + " (tol 1e-14), |D - s*sum(lambda)*KL| " + fmt("%.3g", relation) +
             " (tol 1e-12), trapezoid Delzant=" + (trap_delzant ? "true" : "false") +
             " zero_sum=" + (trap_zero_sum ? "true" : "false");
  return o;
}

Outcome criterion7() {
  Outcome o;
  Rng rng(kSeed + 7);
  double roundtrip = 0, grad_err = 0, hess_err = 0, expanded = 0;
  Polynomial f(2);
  f.add_term({3, 0}, 0.1);
  f.add_term({1, 2}, -0.05);
  struct Case {
    Polytope p;
    SymplecticPotential phi;
  };
  std::vector<Case> cases = {{triangle(), guillemin(triangle(), 1.0)},
                             {square(), guillemin(square())},
                             {trapezoid(), guillemin(trapezoid())},
                             {triangle(), with_correction(guillemin(triangle(), 1.0), f)}};
  for (const auto& [p, phi] : cases) {
    for (int i = 0; i < 100; ++i) {
      const Eigen::VectorXd x = random_interior_point(p, rng);
      roundtrip = std::max(roundtrip, (from_dual(phi, p, to_dual(phi, x).y).x - x).cwiseAbs().maxCoeff());
      const Eigen::VectorXd xp = random_interior_point(p, rng);
      expanded = std::max(expanded, std::abs(bregman(phi, x, xp) - bregman_expanded(phi, x, xp)));

      if (p.facet_values(x).minCoeff() < 1e-2) continue;
      const double h = 1e-6;
      const Eigen::VectorXd g = grad(phi, x);
      const Eigen::MatrixXd hs = hessian(phi, x);
      Eigen::VectorXd fd_g(2);
      Eigen::MatrixXd fd_h(2, 2);
      for (int j = 0; j < 2; ++j) {
        Eigen::VectorXd a = x, b = x;
        a[j] += h;
        b[j] -= h;
        fd_g[j] = (eval(phi, a) - eval(phi, b)) / (2 * h);
        fd_h.col(j) = (grad(phi, a) - grad(phi, b)) / (2 * h);
      }
      grad_err = std::max(grad_err, (g - fd_g).cwiseAbs().maxCoeff() / (1 + g.cwiseAbs().maxCoeff()));
      hess_err = std::max(hess_err, (hs - fd_h).cwiseAbs().maxCoeff() / (1 + hs.cwiseAbs().maxCoeff()));
    }
  }
  o.pass = roundtrip <= 1e-9 && grad_err <= 1e-5 && hess_err <= 1e-4 && expanded <= 1e-10;
  o.detail = "roundtrip " + fmt("%.3g", roundtrip) + " (tol 1e-9), FD gradient " + fmt("%.3g", grad_err) +
             " (tol 1e-5 rel), FD Hessian " + fmt("%.3g", hess_err) + " (tol 1e-4 rel), direct vs expanded " +
             fmt("%.3g", expanded) + " (tol 1e-10, includes a cubic correction)";
  return o;
}

}  // namespace

int main() {
  Tally tally;
  tally.report(1, "worked triangle goldens", guard(criterion1));
  tally.report(2, "half-line and product goldens", guard(criterion2));
  tally.report(3, "iterated boundary limit", guard(criterion3));
  tally.report(4, "boundary Pythagoras with the foot on the face", guard(criterion4));
  tally.report(5, "boundary Pythagoras with the right angle inside", guard(criterion5));
  tally.report(6, "mixture families and KL", guard(criterion6));
  tally.report(7, "numerical analysis suite", guard(criterion7));
  std::printf("%d of 7 criteria passed\n", 7 - tally.failed);
  return tally.failed == 0 ? 0 : 1;
}
