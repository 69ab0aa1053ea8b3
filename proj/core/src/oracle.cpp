#include "esmt/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace esmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Torricelli point with a fallback for coincident neighbours: with a
// duplicated neighbour the weighted optimum sits on the duplicate.
Point smoothing_target(Point a, Point b, Point c, const Tolerance& tol) {
  try {
    return torricelli_point(a, b, c, tol).point;
  } catch (const std::invalid_argument&) {
    if (dist(a, b) <= tol.eps_len) return a;
    if (dist(a, c) <= tol.eps_len) return a;
    return b;
  }
}

std::vector<Point> mask_points(const std::vector<Point>& pts,
                               std::uint32_t mask) {
  std::vector<Point> out;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1u) out.push_back(pts[i]);
  return out;
}

std::vector<int> mask_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

}  // namespace

TopologyOptimizationResult optimize_steiner_positions(
    const std::vector<Point>& points, const FullTopology& topo,
    int max_iterations, const Tolerance& tol) {
  tol.validate();
  if (static_cast<int>(points.size()) != topo.n_terminals)
    throw std::invalid_argument(
        "optimize_steiner_positions: point/terminal count mismatch");
  const int n = topo.n_terminals;
  const int total = n + topo.n_steiner;

  TopologyOptimizationResult res;
  if (topo.n_steiner == 0) {
    res.length = n == 2 ? dist(points[0], points[1]) : 0.0;
    res.converged = true;
    return res;
  }

  std::vector<std::vector<int>> adj(total);
  for (const auto& [u, v] : topo.adjacency) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  Point centroid{0.0, 0.0};
  double extent = 0.0;
  for (int i = 0; i < n; ++i) {
    centroid = centroid + (1.0 / n) * points[i];
    for (int j = 0; j < i; ++j) extent = std::max(extent, dist(points[i], points[j]));
  }

  // Coordinate descent can stall on the nonsmooth corners where a Steiner
  // point collapses onto a neighbour; a handful of deterministically
  // jittered restarts escapes them, and the convex objective makes the best
  // run the topology optimum.
  constexpr int kStarts = 5;
  res.length = kInf;
  std::vector<Point> pos(total);
  for (int start = 0; start < kStarts; ++start) {
    for (int i = 0; i < n; ++i) pos[i] = points[i];
    for (int s = n; s < total; ++s) {
      Point seed{0.0, 0.0};
      int terms = 0;
      for (const int nb : adj[s])
        if (nb < n) {
          seed = seed + points[nb];
          ++terms;
        }
      seed = terms > 0 ? Point{seed.x / terms, seed.y / terms} : centroid;
      if (start > 0) {
        const double phi = 2.399963229728653 * (start * total + s);
        const double radius = 0.07 * extent * start / kStarts;
        seed = seed + Point{radius * std::cos(phi), radius * std::sin(phi)};
      }
      pos[s] = seed;
    }

    const auto total_length = [&] {
      double sum = 0.0;
      for (const auto& [u, v] : topo.adjacency) sum += dist(pos[u], pos[v]);
      return sum;
    };

    double prev = total_length();
    int iterations = 0;
    bool converged = false;
    for (iterations = 1; iterations <= max_iterations; ++iterations) {
      for (int s = n; s < total; ++s)
        pos[s] = smoothing_target(pos[adj[s][0]], pos[adj[s][1]],
                                  pos[adj[s][2]], tol);
      const double cur = total_length();
      if (std::abs(prev - cur) < 1e-12 * std::max(1.0, cur)) {
        converged = true;
        prev = cur;
        break;
      }
      prev = cur;
    }
    if (prev < res.length) {
      res.length = prev;
      res.iterations = iterations;
      res.converged = converged;
      res.coordinates.assign(pos.begin() + n, pos.end());
    }
  }
  return res;
}

SteinerTree brute_force(const Instance& inst, const Tolerance& tol) {
  tol.validate();
  inst.validate(tol);
  const int n = static_cast<int>(inst.terminals.size());
  if (n > 6) throw std::invalid_argument("brute_force: n <= 6 required");

  SteinerTree tree;
  tree.terminals = inst.terminals;
  if (n == 1) return tree;

  const std::uint32_t full = (1u << n) - 1u;

  struct FullWitness {
    FullTopology topo;
    std::vector<Point> steiner;
  };
  std::vector<double> comp_len(full + 1, kInf);
  std::vector<FullWitness> comp_best(full + 1);
  std::vector<double> smt(full + 1, kInf);
  std::vector<std::uint32_t> wit_r(full + 1, 0);
  std::vector<int> wit_p(full + 1, -1);

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int m = std::popcount(mask);
    if (m < 2) {
      smt[mask] = 0.0;
      continue;
    }
    const auto pts = mask_points(inst.terminals, mask);
    enumerate_full_topologies(m, [&](const FullTopology& topo) {
      const auto opt = optimize_steiner_positions(pts, topo, 10000, tol);
      if (opt.length < comp_len[mask]) {
        comp_len[mask] = opt.length;
        comp_best[mask] = {topo, opt.coordinates};
      }
    });
  }

  std::vector<std::uint32_t> order;
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    if (std::popcount(mask) >= 2) order.push_back(mask);
  std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b)
                                                : a < b;
  });
  for (const std::uint32_t mask : order) {
    double best = comp_len[mask];
    std::uint32_t best_r = 0;
    int best_p = -1;
    for (std::uint32_t r = (mask - 1) & mask; r > 0; r = (r - 1) & mask) {
      if (std::popcount(r) < 2) continue;
      for (const int p : mask_indices(r)) {
        const double cand = smt[(mask & ~r) | (1u << p)] + comp_len[r];
        if (cand < best) {
          best = cand;
          best_r = r;
          best_p = p;
        }
      }
    }
    smt[mask] = best;
    wit_r[mask] = best_r;
    wit_p[mask] = best_p;
  }

  // Glue smoothed components, then contract near-zero edges left by
  // degenerate collapses.
  double scale = 0.0;
  for (const Point& p : inst.terminals)
    scale = std::max(scale, std::max(std::abs(p.x), std::abs(p.y)));
  const double collapse_eps = 1e-7 * std::max(1.0, scale);

  std::vector<Point> verts = inst.terminals;
  std::vector<std::pair<int, int>> edges;
  const std::function<void(std::uint32_t)> emit = [&](std::uint32_t mask) {
    if (std::popcount(mask) < 2) return;
    const std::uint32_t r = wit_r[mask];
    const std::uint32_t comp = r == 0 ? mask : r;
    const auto& w = comp_best[comp];
    const auto global = mask_indices(comp);
    const int base = static_cast<int>(verts.size());
    for (const Point& s : w.steiner) verts.push_back(s);
    const int local_terms = static_cast<int>(global.size());
    for (const auto& [u, v] : w.topo.adjacency)
      edges.emplace_back(u < local_terms ? global[u] : base + (u - local_terms),
                         v < local_terms ? global[v] : base + (v - local_terms));
    if (r != 0) emit((mask & ~r) | (1u << wit_p[mask]));
  };
  emit(full);

  // Union-find contraction of collapsed Steiner endpoints.
  std::vector<int> repr(verts.size());
  for (size_t i = 0; i < repr.size(); ++i) repr[i] = static_cast<int>(i);
  const auto find = [&](int v) {
    while (repr[v] != v) v = repr[v] = repr[repr[v]];
    return v;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [u, v] : edges) {
      const int ru = find(u), rv = find(v);
      if (ru == rv) continue;
      if (dist(verts[ru], verts[rv]) > collapse_eps) continue;
      if (ru >= n)
        repr[ru] = rv;
      else if (rv >= n)
        repr[rv] = ru;
      else
        continue;  // two terminals never merge
      changed = true;
    }
  }
  std::vector<int> remap(verts.size(), -1);
  for (int i = 0; i < n; ++i) remap[i] = i;
  for (size_t i = n; i < verts.size(); ++i) {
    const int r = find(static_cast<int>(i));
    if (r != static_cast<int>(i)) continue;
    remap[i] = static_cast<int>(tree.terminals.size() + tree.steiner_points.size());
    tree.steiner_points.push_back(verts[i]);
  }
  std::vector<std::pair<int, int>> final_edges;
  for (const auto& [u, v] : edges) {
    int a = remap[find(u)], b = remap[find(v)];
    if (a == b) continue;
    final_edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(final_edges.begin(), final_edges.end());
  final_edges.erase(std::unique(final_edges.begin(), final_edges.end()),
                    final_edges.end());
  tree.edges = std::move(final_edges);
  tree.length = tree.computed_length();
  return tree;
}

SteinerTree graph_steiner_brute_force(const GridGraph& g,
                                      const Tolerance& tol) {
  tol.validate();
  const int N = static_cast<int>(g.vertices.size());
  const int n_terms = g.terminal_count();
  if (N > 12)
    throw std::invalid_argument("graph_steiner_brute_force: > 12 vertices");
  if (n_terms > 5)
    throw std::invalid_argument("graph_steiner_brute_force: > 5 terminals");
  const int n_cand = N - n_terms;

  const auto mst_over = [&](const std::vector<int>& verts) {
    const int m = static_cast<int>(verts.size());
    std::vector<char> used(m, 0);
    std::vector<double> best(m, kInf);
    std::vector<int> from(m, 0);
    used[0] = 1;
    for (int i = 1; i < m; ++i)
      best[i] = dist(g.vertices[verts[0]], g.vertices[verts[i]]);
    double total = 0.0;
    std::vector<std::pair<int, int>> edges;
    for (int step = 1; step < m; ++step) {
      int pick = -1;
      for (int i = 0; i < m; ++i)
        if (!used[i] && (pick < 0 || best[i] < best[pick])) pick = i;
      used[pick] = 1;
      total += best[pick];
      edges.emplace_back(verts[from[pick]], verts[pick]);
      for (int i = 0; i < m; ++i)
        if (!used[i]) {
          const double d = dist(g.vertices[verts[pick]], g.vertices[verts[i]]);
          if (d < best[i]) {
            best[i] = d;
            from[i] = pick;
          }
        }
    }
    return std::make_pair(total, edges);
  };

  double best_len = kInf;
  std::vector<std::pair<int, int>> best_edges;
  for (std::uint32_t sub = 0; sub < (1u << n_cand); ++sub) {
    std::vector<int> verts;
    for (int i = 0; i < n_terms; ++i) verts.push_back(i);
    for (int i = 0; i < n_cand; ++i)
      if (sub >> i & 1u) verts.push_back(n_terms + i);
    auto [len, edges] = mst_over(verts);
    if (len < best_len) {
      best_len = len;
      best_edges = std::move(edges);
    }
  }

  // Drop any non-terminal leaves the subset choice left behind.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> deg(N, 0);
    for (const auto& [u, v] : best_edges) {
      ++deg[u];
      ++deg[v];
    }
    for (size_t i = 0; i < best_edges.size(); ++i) {
      const auto [u, v] = best_edges[i];
      const int leaf = deg[u] == 1 && u >= n_terms ? u
                       : deg[v] == 1 && v >= n_terms ? v
                                                     : -1;
      if (leaf >= 0) {
        best_edges.erase(best_edges.begin() + i);
        changed = true;
        break;
      }
    }
  }

  SteinerTree tree;
  std::vector<int> remap(N, -1);
  for (int i = 0; i < n_terms; ++i) {
    tree.terminals.push_back(g.vertices[i]);
    remap[i] = i;
  }
  std::sort(best_edges.begin(), best_edges.end());
  for (const auto& [u, v] : best_edges)
    for (const int w : {u, v})
      if (remap[w] < 0) {
        remap[w] = n_terms + static_cast<int>(tree.steiner_points.size());
        tree.steiner_points.push_back(g.vertices[w]);
      }
  for (const auto& [u, v] : best_edges)
    tree.edges.emplace_back(remap[u], remap[v]);
  tree.length = tree.computed_length();
  return tree;
}

}  // namespace esmt
