#include "esmt/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esmt {

namespace {

constexpr double kTwoPiThirds = 2.0 * std::numbers::pi / 3.0;

std::string edge_name(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

// Connected + acyclic over all listed vertices. Index range is assumed
// already checked.
bool is_tree(const SteinerTree& t) {
  const int n = t.vertex_count();
  if (n == 0) return false;
  if (static_cast<int>(t.edges.size()) != n - 1) return false;
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  const auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (const auto& [u, v] : t.edges) {
    const int ru = find(u), rv = find(v);
    if (ru == rv) return false;  // cycle
    parent[ru] = rv;
    --components;
  }
  return components == 1;
}

}  // namespace

void Instance::validate(const Tolerance& tol) const {
  tol.validate();
  if (terminals.empty())
    throw std::invalid_argument("Instance: needs at least one terminal");
  for (size_t i = 0; i < terminals.size(); ++i)
    for (size_t j = i + 1; j < terminals.size(); ++j)
      if (dist(terminals[i], terminals[j]) <= tol.eps_len)
        throw std::invalid_argument("Instance: duplicate terminal at indices " +
                                    std::to_string(i) + "," +
                                    std::to_string(j));
}

double SteinerTree::computed_length() const {
  double sum = 0.0;
  for (const auto& [u, v] : edges) sum += dist(vertex(u), vertex(v));
  return sum;
}

void ValidationReport::add(std::string check, std::string location,
                           double measured) {
  passed = false;
  violations.push_back({std::move(check), std::move(location), measured});
}

ValidationReport validate_smt_structure(const SteinerTree& t,
                                        const Tolerance& tol) {
  tol.validate();
  const int n_t = static_cast<int>(t.terminals.size());
  const int n = t.vertex_count();
  for (const auto& [u, v] : t.edges)
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw std::invalid_argument("validate_smt_structure: bad edge index " +
                                  edge_name(u, v));
  if (n_t == 0)
    throw std::invalid_argument("validate_smt_structure: no terminals");
  if (!(n == 1 && t.edges.empty()) && !is_tree(t))
    throw std::invalid_argument(
        "validate_smt_structure: edge graph is not a spanning tree");

  ValidationReport report;

  // (a) no two edges properly intersect
  for (size_t i = 0; i < t.edges.size(); ++i)
    for (size_t j = i + 1; j < t.edges.size(); ++j) {
      const auto [a, b] = t.edges[i];
      const auto [c, d] = t.edges[j];
      if (segments_properly_intersect(t.vertex(a), t.vertex(b), t.vertex(c),
                                      t.vertex(d), tol))
        report.add("edge-crossing", edge_name(a, b) + "x" + edge_name(c, d),
                   0.0);
    }

  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : t.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  for (int v = 0; v < n; ++v) {
    const int deg = static_cast<int>(adj[v].size());
    if (t.is_steiner(v)) {
      if (deg != 3) {
        report.add("steiner-degree", std::to_string(v), deg);
        continue;
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const double a = angle_at(t.vertex(v), t.vertex(adj[v][i]),
                                    t.vertex(adj[v][j]), tol);
          if (std::abs(a - kTwoPiThirds) > tol.eps_ang)
            report.add("steiner-angle", std::to_string(v), a);
        }
    } else {
      if (deg > 3) {
        report.add("terminal-degree", std::to_string(v), deg);
        continue;
      }
      for (int i = 0; i < deg; ++i)
        for (int j = i + 1; j < deg; ++j) {
          const double a = angle_at(t.vertex(v), t.vertex(adj[v][i]),
                                    t.vertex(adj[v][j]), tol);
          if (a < kTwoPiThirds - tol.eps_ang)
            report.add("terminal-angle", std::to_string(v), a);
        }
    }
  }

  // (d) Steiner point count bound
  if (static_cast<int>(t.steiner_points.size()) > std::max(0, n_t - 2))
    report.add("steiner-count", "tree", t.steiner_points.size());

  const double computed = t.computed_length();
  if (std::abs(computed - t.length) > 1e-9 * std::max(1.0, std::abs(computed)))
    report.add("cached-length", "tree", t.length);

  // (e) every vertex inside the convex hull of the terminals
  const auto hull = convex_hull(t.terminals, tol);
  const auto inside = [&](Point p) {
    if (hull.size() == 1) return dist(p, t.terminals[hull[0]]) <= tol.eps_len;
    if (hull.size() == 2) {
      const Point a = t.terminals[hull[0]], b = t.terminals[hull[1]];
      const Point u = b - a;
      const double len = dist(a, b);
      if (std::abs(cross(u, p - a)) > tol.eps_len * len) return false;
      const double s = dot(p - a, u) / dot(u, u);
      return s >= -tol.eps_len / len && s <= 1.0 + tol.eps_len / len;
    }
    for (size_t i = 0; i < hull.size(); ++i) {
      const Point a = t.terminals[hull[i]];
      const Point b = t.terminals[hull[(i + 1) % hull.size()]];
      if (cross(b - a, p - a) < -tol.eps_len * dist(a, b)) return false;
    }
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (!inside(t.vertex(v))) report.add("outside-hull", std::to_string(v), 0.0);

  return report;
}

ValidationReport check_lune_property(const SteinerTree& t,
                                     const Tolerance& tol) {
  tol.validate();
  ValidationReport report;
  const int n = t.vertex_count();
  for (const auto& [u, v] : t.edges) {
    const Point pu = t.vertex(u), pv = t.vertex(v);
    const double len = dist(pu, pv);
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      const Point pw = t.vertex(w);
      if (dist(pw, pu) < len - tol.eps_len && dist(pw, pv) < len - tol.eps_len)
        report.add("lune", edge_name(u, v) + ":" + std::to_string(w),
                   std::max(dist(pw, pu), dist(pw, pv)));
    }
  }
  return report;
}

}  // namespace esmt
