#include "esmt/cpr.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "esmt/exact.hpp"
#include "test_util.hpp"

using namespace esmt;

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kPi = std::numbers::pi;

std::vector<Point> trapezoid(int n, double lam) {
  const double m = 1.0 / (2.0 * std::tan(kPi / n));
  return {{-0.5, m}, {0.5, m}, {-lam / 2.0, lam * m}, {lam / 2.0, lam * m}};
}

double fork_formula(int n, double lam) {
  return (lam - 1.0) / (2.0 * std::tan(kPi / n)) + kSqrt3 * (lam + 1.0) / 2.0;
}

}  // namespace

TEST_CASE("lambda_v closed forms") {
  CHECK(lambda_v(4) == doctest::Approx(2.0 + kSqrt3).epsilon(1e-15));
  CHECK(lambda_v(6) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS(lambda_v(3));
  double prev = lambda_v(4);
  for (int n = 5; n <= 2000; n += 7) {
    const double cur = lambda_v(n);
    CHECK(cur < prev);
    CHECK(cur > 1.0);
    prev = cur;
  }
  CHECK(lambda_v(100000) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("lambda_1 table and monotonicity") {
  CHECK(std::abs(lambda_1(13) - 23.3987) < 5e-5);
  CHECK(std::abs(lambda_1(20) - 2.6719) < 5e-5);
  CHECK(std::abs(lambda_1(40) - 1.4574) < 5e-5);
  CHECK(std::abs(lambda_1(100) - 1.1437) < 5e-5);
  CHECK(std::abs(lambda_1(500) - 1.0258) < 5e-5);
  CHECK_THROWS(lambda_1(12));
  double prev = lambda_1(13);
  for (int n = 14; n <= 1000; ++n) {
    const double cur = lambda_1(n);
    CHECK(cur < prev);
    CHECK(cur > 1.0);
    CHECK(cur >= lambda_v(n));  // the regime implies fork feasibility
    prev = cur;
  }
}

TEST_CASE("vertical fork at the n=4 threshold and beyond") {
  const double lv = lambda_v(4);
  const auto pts = trapezoid(4, lv);
  const auto fork = build_vertical_fork(pts[0], pts[1], pts[2], pts[3], 4);
  CHECK(fork.length == doctest::Approx(2.0 + 2.0 * kSqrt3).epsilon(1e-12));
  // Contact is degenerate at the threshold: merged single Steiner point.
  CHECK(fork.steiner_points.size() == 1);

  const auto pts8 = trapezoid(8, 3.0);
  const auto fork8 = build_vertical_fork(pts8[0], pts8[1], pts8[2], pts8[3], 8);
  CHECK(fork8.length ==
        doctest::Approx(1.0 / std::tan(kPi / 8) + 2.0 * kSqrt3).epsilon(1e-12));
  CHECK(fork8.length == doctest::Approx(fork_formula(8, 3.0)).epsilon(1e-12));
  CHECK(fork8.steiner_points.size() == 2);

  const auto bad = trapezoid(4, 1.5);
  CHECK_THROWS(build_vertical_fork(bad[0], bad[1], bad[2], bad[3], 4));
}

TEST_CASE("fork Steiner points sit on MN at the stated offsets") {
  for (const int n : {4, 6, 8, 13}) {
    const double lam = 1.5 * lambda_v(n) + 0.25;
    const auto pts = trapezoid(n, lam);
    const auto fork = build_vertical_fork(pts[0], pts[1], pts[2], pts[3], n);
    REQUIRE(fork.steiner_points.size() == 2);
    const Point m{0.0, pts[0].y}, nn{0.0, pts[2].y};
    const Point s1 = fork.steiner_points[0], s2 = fork.steiner_points[1];
    CHECK(std::abs(s1.x) < 1e-12);  // on the perpendicular bisector
    CHECK(std::abs(s2.x) < 1e-12);
    CHECK(dist(s1, m) == doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-12));
    CHECK(dist(s2, nn) == doctest::Approx(lam / (2.0 * kSqrt3)).epsilon(1e-12));
    // Order M, S1, S2, N along the axis.
    CHECK(m.y < s1.y);
    CHECK(s1.y < s2.y);
    CHECK(s2.y < nn.y);
  }
}

TEST_CASE("cpr instances") {
  const auto inst = generate_cpr_instance({.n = 4,
                                           .lambda = 2.0,
                                           .rotation = kPi / 4,
                                           .center = {0, 0},
                                           .inner_side = std::numbers::sqrt2});
  REQUIRE(inst.terminals.size() == 8);
  // Axis-aligned inner square with corners at (+-1/sqrt(2), +-1/sqrt(2)).
  CHECK(inst.terminals[0].x == doctest::Approx(std::numbers::sqrt2 / 2));
  CHECK(inst.terminals[0].y == doctest::Approx(std::numbers::sqrt2 / 2));
  for (int i = 0; i < 4; ++i) {
    CHECK(inst.terminals[4 + i].x == doctest::Approx(2 * inst.terminals[i].x));
    CHECK(inst.terminals[4 + i].y == doctest::Approx(2 * inst.terminals[i].y));
  }

  const auto tri = generate_cpr_instance({.n = 3, .lambda = 2.0});
  for (int i = 0; i < 3; ++i)
    CHECK(dist({0, 0}, tri.terminals[3 + i]) ==
          doctest::Approx(2.0 * dist({0, 0}, tri.terminals[i])));

  // The convex hull is exactly the outer polygon.
  for (const int n : {3, 4, 7, 13}) {
    const auto any = generate_cpr_instance({.n = n, .lambda = 1.7});
    const auto hull = convex_hull(any.terminals);
    CHECK(hull.size() == static_cast<size_t>(n));
    for (const int h : hull) CHECK(h >= n);
  }
}

TEST_CASE("solve_cpr n=3 matches the closed form and the exact solver") {
  for (const double lam : {1.5, 2.0, 10.0}) {
    const auto sol = solve_cpr({.n = 3, .lambda = lam});
    CHECK(sol.topology_tag == CprTopology::kTorricelli3Gon);
    REQUIRE(sol.tree.has_value());
    CHECK(sol.predicted_length == doctest::Approx(kSqrt3 * lam).epsilon(1e-15));
    CHECK(sol.tree->length ==
          doctest::Approx(sol.predicted_length).epsilon(1e-9));
    CHECK(validate_smt_structure(*sol.tree).passed);
    // Inner terminals lie on the segments from the centre to the outer ones.
    for (int i = 0; i < 3; ++i) {
      const Point a = sol.tree->terminals[i], b = sol.tree->terminals[3 + i];
      CHECK(std::abs(cross(b, a)) < 1e-9);
      CHECK(dot(a, b) > 0);
    }
    const auto exact = solve_exact(generate_cpr_instance({.n = 3, .lambda = lam}));
    CHECK(sol.tree->length == doctest::Approx(exact.length).epsilon(1e-6));
  }
}

TEST_CASE("solve_cpr n=4 picks the right topology") {
  const auto t1 = solve_cpr({.n = 4, .lambda = 10.0});
  CHECK(t1.topology_tag == CprTopology::kSquareTopologyI);
  const double expect1 =
      2.0 * std::numbers::sqrt2 * 10.0 + 1.0 + kSqrt3 - 2.0 * std::numbers::sqrt2;
  CHECK(t1.predicted_length == doctest::Approx(expect1).epsilon(1e-12));
  CHECK(t1.tree->length == doctest::Approx(expect1).epsilon(1e-9));
  CHECK(validate_smt_structure(*t1.tree).passed);

  const auto t2 = solve_cpr({.n = 4, .lambda = 25.0});
  CHECK(t2.topology_tag == CprTopology::kSquareTopologyII);
  const double expect2 = (1.0 + kSqrt3) * 25.0 + kSqrt3;
  CHECK(t2.predicted_length == doctest::Approx(expect2).epsilon(1e-12));
  CHECK(t2.tree->length == doctest::Approx(expect2).epsilon(1e-9));
  CHECK(validate_smt_structure(*t2.tree).passed);

  // Below the fork threshold only Topology-I is constructible.
  const auto low = solve_cpr({.n = 4, .lambda = 2.0});
  CHECK(low.topology_tag == CprTopology::kSquareTopologyI);
}

TEST_CASE("exact solver confirms Topology-II past the crossover") {
  const double lam = 25.0;
  const auto sol = solve_cpr({.n = 4, .lambda = lam});
  REQUIRE(sol.topology_tag == CprTopology::kSquareTopologyII);
  const auto exact = solve_exact(generate_cpr_instance({.n = 4, .lambda = lam}));
  CHECK(sol.tree->length == doctest::Approx(exact.length).epsilon(1e-6));
}

TEST_CASE("n=4 crossover sits at 18.972") {
  const double crossover = (2.0 * std::numbers::sqrt2 - 1.0) /
                           (2.0 * std::numbers::sqrt2 - 1.0 - kSqrt3);
  CHECK(std::abs(crossover - 18.972) < 5e-4);

  const auto len_i = [](double lam) {
    return 2.0 * std::numbers::sqrt2 * lam + 1.0 + kSqrt3 -
           2.0 * std::numbers::sqrt2;
  };
  const auto len_ii = [](double lam) { return (1.0 + kSqrt3) * lam + kSqrt3; };
  CHECK(len_i(18.9) < len_ii(18.9));
  CHECK(len_i(19.1) > len_ii(19.1));
  CHECK(solve_cpr({.n = 4, .lambda = 18.9}).topology_tag ==
        CprTopology::kSquareTopologyI);
  CHECK(solve_cpr({.n = 4, .lambda = 19.1}).topology_tag ==
        CprTopology::kSquareTopologyII);
}

TEST_CASE("singly connected constructions") {
  const std::pair<int, double> cases[] = {{13, 30.0}, {20, 5.0}, {40, 2.0},
                                          {100, 2.0}};
  for (const auto& [n, lam] : cases) {
    const auto sol = solve_cpr({.n = n, .lambda = lam});
    REQUIRE(sol.topology_tag == CprTopology::kSinglyConnected);
    REQUIRE(sol.tree.has_value());
    const double expect =
        (lam - 1.0) / (2.0 * std::tan(kPi / n)) +
        (n - 2 + kSqrt3 / 2.0) * (lam + 1.0);
    CHECK(sol.predicted_length == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sol.tree->length == doctest::Approx(expect).epsilon(1e-9));
    CHECK(validate_smt_structure(*sol.tree).passed);
    const auto inst = generate_cpr_instance({.n = n, .lambda = lam});
    CHECK(sol.tree->length <= euclidean_mst(inst.terminals).length);
  }
}

TEST_CASE("unsupported regimes are refused, not guessed") {
  CHECK(solve_cpr({.n = 7, .lambda = 5.0}).topology_tag ==
        CprTopology::kUnsupportedRegime);
  CHECK(solve_cpr({.n = 12, .lambda = 100.0}).topology_tag ==
        CprTopology::kUnsupportedRegime);
  const double below = lambda_1(13) - 0.5;
  CHECK(solve_cpr({.n = 13, .lambda = below}).topology_tag ==
        CprTopology::kUnsupportedRegime);
  CHECK(!solve_cpr({.n = 7, .lambda = 5.0}).tree.has_value());
}

TEST_CASE("spec validation") {
  CHECK_THROWS(solve_cpr({.n = 2, .lambda = 2.0}));
  CHECK_THROWS(solve_cpr({.n = 5, .lambda = 1.0}));
  CHECK_THROWS(solve_cpr({.n = 5, .lambda = 2.0, .rotation = 0.0,
                          .center = {0, 0}, .inner_side = 0.0}));
}

TEST_CASE("inner_side scales everything linearly") {
  const auto unit = solve_cpr({.n = 20, .lambda = 5.0});
  const auto scaled = solve_cpr({.n = 20,
                                 .lambda = 5.0,
                                 .rotation = 0.0,
                                 .center = {0, 0},
                                 .inner_side = 3.25});
  CHECK(scaled.predicted_length ==
        doctest::Approx(3.25 * unit.predicted_length).epsilon(1e-12));
  CHECK(scaled.tree->length ==
        doctest::Approx(3.25 * unit.tree->length).epsilon(1e-12));
}
