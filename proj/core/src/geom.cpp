#include "esmt/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esmt {

namespace {

constexpr double kTwoPiThirds = 2.0 * std::numbers::pi / 3.0;

Point rotate_about(Point center, Point p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const Point v = p - center;
  return {center.x + c * v.x - s * v.y, center.y + s * v.x + c * v.y};
}

// Intersection of the lines through (p, p+u) and (q, q+v); nullopt if
// parallel.
std::optional<Point> line_intersection(Point p, Point u, Point q, Point v) {
  const double den = cross(u, v);
  if (den == 0.0) return std::nullopt;
  const double t = cross(q - p, v) / den;
  return p + t * u;
}

}  // namespace

Point::Point(double px, double py) : x(px), y(py) {
  if (!std::isfinite(px) || !std::isfinite(py))
    throw std::invalid_argument("Point: coordinates must be finite");
}

void Tolerance::validate() const {
  if (!(eps_len > 0.0) || !(eps_ang > 0.0))
    throw std::invalid_argument("Tolerance: eps_len and eps_ang must be > 0");
}

double dist(Point p, Point q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

Point third_equilateral_point(Point p, Point q, Side side,
                              const Tolerance& tol) {
  if (dist(p, q) <= tol.eps_len)
    throw std::invalid_argument("third_equilateral_point: coincident points");
  const double angle =
      side == Side::kLeft ? std::numbers::pi / 3.0 : -std::numbers::pi / 3.0;
  return rotate_about(p, q, angle);
}

Circle circumcircle(Point a, Point b, Point c, const Tolerance& tol) {
  const double area2 = cross(b - a, c - a);
  const double longest =
      std::max({dist(a, b), dist(b, c), dist(c, a)});
  if (std::abs(area2) <= tol.eps_len * longest)
    throw std::invalid_argument("circumcircle: collinear points");
  const double d = 2.0 * area2;
  const double na = dot(a, a), nb = dot(b, b), nc = dot(c, c);
  const double ux = (na * (b.y - c.y) + nb * (c.y - a.y) + nc * (a.y - b.y)) / d;
  const double uy = (na * (c.x - b.x) + nb * (a.x - c.x) + nc * (b.x - a.x)) / d;
  const Point center{ux, uy};
  return {center, dist(center, a)};
}

std::vector<Point> line_circle_intersections(Point p, Point q, Point center,
                                             double radius,
                                             const Tolerance& tol) {
  if (dist(p, q) <= tol.eps_len)
    throw std::invalid_argument("line_circle_intersections: degenerate line");
  const Point u = q - p;
  const double uu = dot(u, u);
  const double t0 = dot(center - p, u) / uu;
  const Point foot = p + t0 * u;
  const double h = dist(foot, center);
  if (h > radius + tol.eps_len) return {};
  if (h >= radius - tol.eps_len) return {foot};  // tangent
  const double dt = std::sqrt(std::max(0.0, radius * radius - h * h) / uu);
  return {p + (t0 - dt) * u, p + (t0 + dt) * u};
}

TorricelliResult torricelli_point(Point a, Point b, Point c,
                                  const Tolerance& tol) {
  const Point pts[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    const Point v = pts[i], p = pts[(i + 1) % 3], q = pts[(i + 2) % 3];
    if (dist(v, p) <= tol.eps_len)
      throw std::invalid_argument("torricelli_point: coincident points");
    if (angle_at(v, p, q, tol) >= kTwoPiThirds - tol.eps_ang)
      return {v, i};
  }
  // Simpson-line intersection: apex of the equilateral triangle on one side,
  // placed away from the opposite vertex, joined to that vertex.
  const auto apex_opposite = [&](Point p, Point q, Point away) {
    const Side side = cross(q - p, away - p) > 0.0 ? Side::kRight : Side::kLeft;
    return third_equilateral_point(p, q, side, tol);
  };
  const Point e_ab = apex_opposite(a, b, c);
  const Point e_bc = apex_opposite(b, c, a);
  const auto hit = line_intersection(e_ab, c - e_ab, e_bc, a - e_bc);
  if (!hit)
    throw std::invalid_argument("torricelli_point: degenerate configuration");
  return {*hit, -1};
}

std::vector<int> convex_hull(const std::vector<Point>& points,
                             const Tolerance& tol) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("convex_hull: empty input");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (points[i].x != points[j].x) return points[i].x < points[j].x;
    return points[i].y < points[j].y;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](int i, int j) {
                            return points[i] == points[j];
                          }),
              order.end());
  const int m = static_cast<int>(order.size());
  if (m == 1) return {order[0]};

  // Keep only strict turns: a point within eps_len of the chord spanned by
  // its hull neighbours is dropped.
  const auto strict_left = [&](int i, int j, int k) {
    const Point u = points[j] - points[i];
    return cross(u, points[k] - points[i]) > tol.eps_len * dist(points[i], points[j]);
  };
  std::vector<int> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const size_t base = hull.size();
    for (int idx = 0; idx < m; ++idx) {
      const int i = pass == 0 ? idx : m - 1 - idx;
      while (hull.size() >= base + 2 &&
             !strict_left(hull[hull.size() - 2], hull.back(), order[i]))
        hull.pop_back();
      hull.push_back(order[i]);
    }
    hull.pop_back();  // last point repeats as the next pass's first
  }
  if (hull.size() < 2) hull = {order[0], order[m - 1]};
  return hull;
}

MstResult euclidean_mst(const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("euclidean_mst: empty input");
  MstResult res;
  if (n == 1) return res;
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, 0.0);
  std::vector<int> from(n, 0);
  in_tree[0] = 1;
  for (int i = 1; i < n; ++i) best[i] = dist(points[0], points[i]);
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int i = 0; i < n; ++i)
      if (!in_tree[i] && (pick < 0 || best[i] < best[pick])) pick = i;
    in_tree[pick] = 1;
    res.edges.emplace_back(from[pick], pick);
    res.length += best[pick];
    for (int i = 0; i < n; ++i) {
      if (in_tree[i]) continue;
      const double d = dist(points[pick], points[i]);
      if (d < best[i]) {
        best[i] = d;
        from[i] = pick;
      }
    }
  }
  return res;
}

double angle_at(Point vertex, Point p, Point q, const Tolerance& tol) {
  const Point u = p - vertex, v = q - vertex;
  if (dist(p, vertex) <= tol.eps_len || dist(q, vertex) <= tol.eps_len)
    throw std::invalid_argument("angle_at: ray endpoint coincides with vertex");
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

bool segments_properly_intersect(Point a, Point b, Point c, Point d,
                                 const Tolerance& tol) {
  const auto orient = [&](Point p, Point q, Point r) -> int {
    const double v = cross(q - p, r - p);
    if (std::abs(v) <= tol.eps_len * dist(p, q)) return 0;
    return v > 0.0 ? 1 : -1;
  };
  const int d1 = orient(c, d, a), d2 = orient(c, d, b);
  const int d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
    // Collinear: the open segments overlap iff their 1-D projections share
    // more than a point.
    const Point axis = dist(a, b) >= dist(c, d) ? b - a : d - c;
    const auto proj = [&](Point p) { return dot(p, axis); };
    const double lo1 = std::min(proj(a), proj(b)), hi1 = std::max(proj(a), proj(b));
    const double lo2 = std::min(proj(c), proj(d)), hi2 = std::max(proj(c), proj(d));
    const double scale = std::sqrt(dot(axis, axis));
    return std::min(hi1, hi2) - std::max(lo1, lo2) > tol.eps_len * scale;
  }
  return false;
}

}  // namespace esmt
