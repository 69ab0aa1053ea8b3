#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace esmt {

/// A point in the Euclidean plane. Coordinates must be finite.
struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py);

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

/// Absolute slack used by all geometric comparisons.
struct Tolerance {
  double eps_len = 1e-9;  // lengths
  double eps_ang = 1e-7;  // radians

  void validate() const;
};

double dist(Point p, Point q);

enum class Side { kLeft, kRight };

/// Apex of the equilateral triangle on pq, on the requested side of the
/// directed segment p->q.
Point third_equilateral_point(Point p, Point q, Side side,
                              const Tolerance& tol = {});

struct Circle {
  Point center;
  double radius = 0.0;
};

/// Throws std::invalid_argument if a, b, c are collinear within tolerance.
Circle circumcircle(Point a, Point b, Point c, const Tolerance& tol = {});

/// Intersections of the infinite line through p, q with a circle, sorted by
/// the parameter along p->q. Returns 0, 1 (tangent) or 2 points.
std::vector<Point> line_circle_intersections(Point p, Point q, Point center,
                                             double radius,
                                             const Tolerance& tol = {});

struct TorricelliResult {
  Point point;
  int obtuse_vertex = -1;  // 0/1/2 when the minimizer is a triangle vertex

  bool at_vertex() const { return obtuse_vertex >= 0; }
};

/// Point minimizing the sum of distances to a, b, c. Interior with 120-degree
/// viewing angles when all triangle angles are below 120 degrees, otherwise
/// the obtuse vertex, flagged.
TorricelliResult torricelli_point(Point a, Point b, Point c,
                                  const Tolerance& tol = {});

/// Indices of the strict convex hull, counter-clockwise, starting at the
/// lexicographically smallest point. Collinear boundary points are excluded.
std::vector<int> convex_hull(const std::vector<Point>& points,
                             const Tolerance& tol = {});

struct MstResult {
  std::vector<std::pair<int, int>> edges;
  double length = 0.0;
};

/// O(n^2) Prim over the complete Euclidean graph.
MstResult euclidean_mst(const std::vector<Point>& points);

/// Unsigned angle p-vertex-q in [0, pi].
double angle_at(Point vertex, Point p, Point q, const Tolerance& tol = {});

/// True iff the open segments (a,b) and (c,d) share a point; touching
/// endpoints do not count.
bool segments_properly_intersect(Point a, Point b, Point c, Point d,
                                 const Tolerance& tol = {});

}  // namespace esmt
