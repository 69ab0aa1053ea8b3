#include "esmt/cpr.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace esmt {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Point unit(Point v, double len) { return {v.x / len, v.y / len}; }

SteinerTree square_smt(Point a1, Point a2, Point a3, Point a4) {
  // Fork pairing {a1,a2} and {a4,a3}; Steiner points sit on the segment
  // joining the two side midpoints, side/(2*sqrt(3)) in from each end.
  const double side = dist(a1, a2);
  const Point m{0.5 * (a1.x + a2.x), 0.5 * (a1.y + a2.y)};
  const Point n{0.5 * (a3.x + a4.x), 0.5 * (a3.y + a4.y)};
  const Point u = unit(n - m, dist(m, n));
  const double off = side / (2.0 * kSqrt3);
  SteinerTree t;
  t.terminals = {a1, a2, a3, a4};
  t.steiner_points = {m + off * u, n - off * u};
  t.edges = {{0, 4}, {1, 4}, {4, 5}, {5, 3}, {5, 2}};
  t.length = t.computed_length();
  return t;
}

}  // namespace

void CprSpec::validate() const {
  if (n < 3) throw std::invalid_argument("CprSpec: n >= 3 required");
  if (!(lambda > 1.0)) throw std::invalid_argument("CprSpec: lambda > 1 required");
  if (!(inner_side > 0.0))
    throw std::invalid_argument("CprSpec: inner_side > 0 required");
}

std::string to_string(CprTopology tag) {
  switch (tag) {
    case CprTopology::kTorricelli3Gon: return "TORRICELLI_3GON";
    case CprTopology::kSquareTopologyI: return "SQ_TOPOLOGY_I";
    case CprTopology::kSquareTopologyII: return "SQ_TOPOLOGY_II";
    case CprTopology::kSinglyConnected: return "SINGLY_CONNECTED";
    case CprTopology::kUnsupportedRegime: return "UNSUPPORTED_REGIME";
  }
  return "UNKNOWN";
}

double lambda_v(int n) {
  if (n < 4) throw std::invalid_argument("lambda_v: n >= 4 required");
  const double t = std::tan(std::numbers::pi / n);
  return (kSqrt3 + t) / (kSqrt3 - t);
}

double lambda_1(int n) {
  if (n < 13)
    throw std::invalid_argument("lambda_1: n >= 13 required (else undefined)");
  return 1.0 / (1.0 - 4.0 * std::sin(std::numbers::pi / n));
}

SteinerTree build_vertical_fork(Point a, Point b, Point p, Point q, int n,
                                const Tolerance& tol) {
  tol.validate();
  if (n < 4) throw std::invalid_argument("build_vertical_fork: n >= 4");
  const double ab = dist(a, b), pq = dist(p, q);
  if (ab <= tol.eps_len || pq <= tol.eps_len)
    throw std::invalid_argument("build_vertical_fork: degenerate side");
  if (std::abs(cross(b - a, q - p)) > tol.eps_len * ab * pq)
    throw std::invalid_argument("build_vertical_fork: AB and PQ not parallel");
  if (std::abs(dist(a, p) - dist(b, q)) > 1e-6 * std::max(ab, pq))
    throw std::invalid_argument("build_vertical_fork: not isosceles");
  const Point m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const Point nn{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
  const double mn = dist(m, nn);
  if (mn <= tol.eps_len)
    throw std::invalid_argument("build_vertical_fork: coincident sides");
  const double half_apex = std::atan(0.5 * std::abs(pq - ab) / mn);
  if (std::abs(half_apex - std::numbers::pi / n) > 1e-6)
    throw std::invalid_argument("build_vertical_fork: apex angle is not 2*pi/n");

  const double s1m = ab / (2.0 * kSqrt3);
  const double s2n = pq / (2.0 * kSqrt3);
  if (s1m + s2n > mn + tol.eps_len)
    throw std::invalid_argument(
        "build_vertical_fork: fork infeasible (lambda below lambda_v)");

  const Point u = unit(nn - m, mn);
  const Point s1 = m + s1m * u;
  const Point s2 = nn - s2n * u;
  SteinerTree t;
  t.terminals = {a, b, p, q};
  if (dist(s1, s2) <= tol.eps_len) {
    // Threshold case: the middle edge vanishes; merge into one degree-4
    // Steiner point.
    t.steiner_points = {Point{0.5 * (s1.x + s2.x), 0.5 * (s1.y + s2.y)}};
    t.edges = {{0, 4}, {1, 4}, {4, 2}, {4, 3}};
  } else {
    t.steiner_points = {s1, s2};
    t.edges = {{0, 4}, {1, 4}, {4, 5}, {5, 2}, {5, 3}};
  }
  t.length = t.computed_length();
  return t;
}

Instance generate_cpr_instance(const CprSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const double circumradius =
      spec.inner_side / (2.0 * std::sin(std::numbers::pi / n));
  Instance inst;
  inst.name = "cpr-n" + std::to_string(n) + "-lambda" + fmt(spec.lambda);
  inst.terminals.reserve(2 * n);
  for (int ring = 0; ring < 2; ++ring) {
    const double r = ring == 0 ? circumradius : spec.lambda * circumradius;
    for (int i = 0; i < n; ++i) {
      const double theta = spec.rotation + 2.0 * std::numbers::pi * i / n;
      inst.terminals.emplace_back(spec.center.x + r * std::cos(theta),
                                  spec.center.y + r * std::sin(theta));
    }
  }
  inst.metadata["kind"] = "cpr";
  inst.metadata["n"] = std::to_string(n);
  inst.metadata["lambda"] = fmt(spec.lambda);
  inst.metadata["rotation"] = fmt(spec.rotation);
  inst.metadata["inner_side"] = fmt(spec.inner_side);
  inst.metadata["center_x"] = fmt(spec.center.x);
  inst.metadata["center_y"] = fmt(spec.center.y);
  return inst;
}

CprSolution solve_cpr(const CprSpec& spec, const Tolerance& tol) {
  tol.validate();
  spec.validate();
  const Instance inst = generate_cpr_instance(spec);
  const auto& pts = inst.terminals;
  const int n = spec.n;
  const double lam = spec.lambda;
  const double side = spec.inner_side;
  CprSolution sol;

  if (n == 3) {
    SteinerTree t;
    t.terminals = pts;
    t.steiner_points = {spec.center};
    t.edges = {{6, 0}, {6, 1}, {6, 2}, {0, 3}, {1, 4}, {2, 5}};
    t.length = t.computed_length();
    sol.tree = std::move(t);
    sol.topology_tag = CprTopology::kTorricelli3Gon;
    sol.predicted_length = kSqrt3 * lam * side;
    return sol;
  }

  if (n == 4) {
    const double len_1 =
        side * (2.0 * std::numbers::sqrt2 * lam +
                (1.0 + kSqrt3 - 2.0 * std::numbers::sqrt2));
    const double len_2 = side * ((1.0 + kSqrt3) * lam + kSqrt3);
    const bool fork_ok = lam >= lambda_v(4);
    if (fork_ok && len_2 < len_1) {
      SteinerTree t;
      t.terminals = pts;
      const SteinerTree f1 =
          build_vertical_fork(pts[0], pts[3], pts[4], pts[7], 4, tol);
      const SteinerTree f2 =
          build_vertical_fork(pts[1], pts[2], pts[5], pts[6], 4, tol);
      // f1 terminals (A1, A4, B1, B4) -> 0, 3, 4, 7; f2 -> 1, 2, 5, 6.
      const int remap1[] = {0, 3, 4, 7};
      const int remap2[] = {1, 2, 5, 6};
      const auto add_fork = [&](const SteinerTree& f, const int* remap) {
        const int base = t.vertex_count();
        for (const Point& s : f.steiner_points) t.steiner_points.push_back(s);
        for (const auto& [u, v] : f.edges)
          t.edges.emplace_back(u < 4 ? remap[u] : base + (u - 4),
                               v < 4 ? remap[v] : base + (v - 4));
      };
      add_fork(f1, remap1);
      add_fork(f2, remap2);
      t.edges.emplace_back(0, 1);  // joining edge A1A2
      t.length = t.computed_length();
      sol.tree = std::move(t);
      sol.topology_tag = CprTopology::kSquareTopologyII;
      sol.predicted_length = len_2;
    } else {
      SteinerTree t;
      t.terminals = pts;
      const SteinerTree inner = square_smt(pts[0], pts[1], pts[2], pts[3]);
      const int base = 8;
      for (const Point& s : inner.steiner_points)
        t.steiner_points.push_back(s);
      for (const auto& [u, v] : inner.edges)
        t.edges.emplace_back(u < 4 ? u : base + (u - 4),
                             v < 4 ? v : base + (v - 4));
      for (int i = 0; i < 4; ++i) t.edges.emplace_back(i, 4 + i);
      t.length = t.computed_length();
      sol.tree = std::move(t);
      sol.topology_tag = CprTopology::kSquareTopologyI;
      sol.predicted_length = len_1;
    }
    return sol;
  }

  if (n >= 13 && lam >= lambda_1(n)) {
    SteinerTree t;
    t.terminals = pts;
    const SteinerTree fork =
        build_vertical_fork(pts[0], pts[1], pts[n], pts[n + 1], n, tol);
    const int remap[] = {0, 1, n, n + 1};
    const int base = 2 * n;
    for (const Point& s : fork.steiner_points) t.steiner_points.push_back(s);
    for (const auto& [u, v] : fork.edges)
      t.edges.emplace_back(u < 4 ? remap[u] : base + (u - 4),
                           v < 4 ? remap[v] : base + (v - 4));
    // Inner and outer chains A_2..A_n and B_2..B_n; the gadget edge and the
    // closing polygon edge are both omitted (n-2 edges per polygon).
    for (int i = 1; i + 1 < n; ++i) t.edges.emplace_back(i, i + 1);
    for (int i = n + 1; i + 1 < 2 * n; ++i) t.edges.emplace_back(i, i + 1);
    t.length = t.computed_length();
    sol.tree = std::move(t);
    sol.topology_tag = CprTopology::kSinglyConnected;
    sol.predicted_length =
        side * ((lam - 1.0) / (2.0 * std::tan(std::numbers::pi / n)) +
                (n - 2 + kSqrt3 / 2.0) * (lam + 1.0));
    return sol;
  }

  sol.topology_tag = CprTopology::kUnsupportedRegime;
  return sol;
}

}  // namespace esmt
