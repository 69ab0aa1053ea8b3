#include "esmt/approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "esmt/errors.hpp"

namespace esmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reconstruction re-runs the forward minimizations, so matches are expected
// to be bit-exact; the slack only guards against unexpected contraction.
bool close(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

// Cyclic-interval Steiner tree dynamic program over the complete Euclidean
// graph implied by a GridGraph. Intervals are (start, len) over hull
// positions; tables are keyed by (vertex, subset of non-root interior
// terminals, interval).
struct IntervalDp {
  const GridGraph& g;
  Tolerance tol;
  int N = 0, k = 0, q = 0;
  int root = -1;
  std::vector<int> qvert;     // bit -> vertex id
  std::vector<int> qbit;      // vertex id -> bit or -1
  std::vector<int> hull_pos;  // vertex id -> hull position or -1

  // Minimum graph Steiner trees in a complete Euclidean graph can hold
  // degree-6 vertices (pair angles only need to reach 60 degrees), so the
  // child convolution runs to kMaxChildren, a superset of the 3-way split.
  static constexpr int kMaxChildren = 6;
  int n_iid = 0;
  std::vector<double> A, B, C;
  std::vector<double> P[kMaxChildren - 1];  // P[m-2]: exactly m children
  std::vector<double> xs, ys;

  IntervalDp(const GridGraph& graph, const Tolerance& t) : g(graph), tol(t) {
    N = static_cast<int>(g.vertices.size());
    k = static_cast<int>(g.hull_order.size());
    hull_pos.assign(N, -1);
    for (int i = 0; i < k; ++i) hull_pos[g.hull_order[i]] = i;
    if (!g.interior_terminals.empty()) {
      root = g.interior_terminals[0];
      for (size_t i = 1; i < g.interior_terminals.size(); ++i)
        qvert.push_back(g.interior_terminals[i]);
    } else {
      root = g.hull_order[0];
    }
    q = static_cast<int>(qvert.size());
    qbit.assign(N, -1);
    for (int b = 0; b < q; ++b) qbit[qvert[b]] = b;
    n_iid = 1 + k * k;
    xs.resize(N);
    ys.resize(N);
    for (int v = 0; v < N; ++v) {
      xs[v] = g.vertices[v].x;
      ys[v] = g.vertices[v].y;
    }
    const size_t total =
        static_cast<size_t>(N) * (size_t{1} << q) * n_iid;
    A.assign(total, kInf);
    B.assign(total, kInf);
    C.assign(total, kInf);
    for (auto& table : P) table.assign(total, kInf);
  }

  int iid(int start, int len) const {
    return len == 0 ? 0 : 1 + start * k + (len - 1);
  }
  // Vertex-contiguous layout: per-state slices scan linearly over v.
  size_t key(int v, unsigned L, int id) const {
    return (static_cast<size_t>(L) * n_iid + id) * N + v;
  }
  double d(int u, int v) const {
    const double dx = xs[u] - xs[v], dy = ys[u] - ys[v];
    return std::sqrt(dx * dx + dy * dy);
  }
  int hull_vertex(int pos) const { return g.hull_order[pos % k]; }

  // SMT value of the bare set L ∪ I via a canonical root.
  double cset(unsigned L, int start, int len) const {
    if (L != 0) {
      const int b = std::countr_zero(L);
      return C[key(qvert[b], L & (L - 1u), iid(start, len))];
    }
    if (len == 0) return 0.0;
    return C[key(hull_vertex(start), 0, iid((start + 1) % k, len - 1))];
  }

  void run() {
    // States in increasing |L| + len; within a state: B, then A, then P/C.
    for (int s = 0; s <= q + k; ++s) {
      for (unsigned L = 0; L < (1u << q); ++L) {
        const int len = s - std::popcount(L);
        if (len < 0 || len > k) continue;
        const int nstarts = len == 0 ? 1 : k;
        for (int start = 0; start < nstarts; ++start)
          compute_state(L, start, len);
      }
    }
  }

  // Applies out[v] = min(out[v], part1[v] + part2[v]) over every two-part
  // split of (L, I) into nonempty (L1, prefix) and (L2, suffix).
  void min_over_splits(unsigned L, int start, int len,
                       const std::vector<double>& part1,
                       const std::vector<double>& part2, double* out) {
    for (int t = 0; t <= len; ++t) {
      const int id1 = iid(start, t);
      const int id2 = iid((start + t) % k, len - t);
      for (unsigned L1 = L;; L1 = (L1 - 1) & L) {
        const unsigned L2 = L & ~L1;
        if ((L1 != 0 || t != 0) && (L2 != 0 || t != len)) {
          const double* p1 = &part1[key(0, L1, id1)];
          const double* p2 = &part2[key(0, L2, id2)];
          for (int v = 0; v < N; ++v) {
            const double cand = p1[v] + p2[v];
            if (cand < out[v]) out[v] = cand;
          }
        }
        if (L1 == 0) break;
      }
    }
  }

  void compute_state(unsigned L, int start, int len) {
    const int id = iid(start, len);
    const bool empty_set = (L == 0 && len == 0);

    // B: split at v into two nonempty parts, interval cut at a hull position.
    // States whose key set contains v itself stay at infinity throughout.
    min_over_splits(L, start, len, C, C, &B[key(0, L, id)]);

    // A: attach v by one edge, either to a branching vertex (B) or to a
    // terminal of the set's own SMT (Cset).
    if (!empty_set) {
      const double set_smt = cset(L, start, len);
      std::vector<int> members;
      for (int b = 0; b < q; ++b)
        if (L >> b & 1u) members.push_back(qvert[b]);
      for (int t = 0; t < len; ++t) members.push_back(hull_vertex(start + t));
      const double* bstate = &B[key(0, L, id)];
      for (int v = 0; v < N; ++v) {
        if (qbit[v] >= 0 && (L >> qbit[v] & 1u)) continue;
        double best = kInf;
        for (int u = 0; u < N; ++u) {
          const double bu = bstate[u];
          if (bu < best && u != v) {
            const double cand = bu + d(u, v);
            if (cand < best) best = cand;
          }
        }
        if (set_smt < kInf)
          for (const int u : members) {
            const double cand = set_smt + d(u, v);
            if (cand < best) best = cand;
          }
        A[key(v, L, id)] = best;
      }
    }

    if (empty_set) {
      for (int v = 0; v < N; ++v) C[key(v, 0, id)] = 0.0;
      return;
    }

    // P[m-2]: exactly m child subtrees at v, built as an (m-1)-child prefix
    // plus one more A-term. C: any child count from 1 to kMaxChildren.
    min_over_splits(L, start, len, A, A, &P[0][key(0, L, id)]);
    for (int m = 3; m <= kMaxChildren; ++m)
      min_over_splits(L, start, len, P[m - 3], A, &P[m - 2][key(0, L, id)]);
    {
      double* cstate = &C[key(0, L, id)];
      const double* astate = &A[key(0, L, id)];
      for (int v = 0; v < N; ++v) cstate[v] = astate[v];
      for (int m = 2; m <= kMaxChildren; ++m) {
        const double* pstate = &P[m - 2][key(0, L, id)];
        for (int v = 0; v < N; ++v)
          cstate[v] = std::min(cstate[v], pstate[v]);
      }
    }
  }

  // ---- reconstruction: re-derive each argmin and emit edges --------------

  std::vector<std::pair<int, int>> out_edges;

  void emit(int u, int v) {
    if (u != v) out_edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  [[noreturn]] void fail(const char* where, int v, unsigned L, int start,
                         int len) const {
    throw std::runtime_error(
        std::string("interval DP: reconstruction mismatch at ") + where +
        " v=" + std::to_string(v) + " L=" + std::to_string(L) +
        " start=" + std::to_string(start) + " len=" + std::to_string(len));
  }

  void rec_cset(unsigned L, int start, int len) {
    if (L != 0) {
      const int b = std::countr_zero(L);
      rec_C(qvert[b], L & (L - 1u), start, len);
    } else if (len > 0) {
      rec_C(hull_vertex(start), 0, (start + 1) % k, len - 1);
    }
  }

  void rec_A(int v, unsigned L, int start, int len) {
    const int id = iid(start, len);
    const double target = A[key(v, L, id)];
    for (int u = 0; u < N; ++u) {
      if (u == v) continue;
      if (qbit[u] >= 0 && (L >> qbit[u] & 1u)) continue;
      const double bu = B[key(u, L, id)];
      if (bu < kInf && close(bu + d(u, v), target)) {
        emit(u, v);
        rec_B(u, L, start, len);
        return;
      }
    }
    const double set_smt = cset(L, start, len);
    if (set_smt < kInf) {
      std::vector<int> members;
      for (int b = 0; b < q; ++b)
        if (L >> b & 1u) members.push_back(qvert[b]);
      for (int t = 0; t < len; ++t) members.push_back(hull_vertex(start + t));
      for (const int u : members) {
        if (close(set_smt + d(u, v), target)) {
          emit(u, v);
          rec_cset(L, start, len);
          return;
        }
      }
    }
    fail(__func__, v, L, start, len);
  }

  void rec_B(int v, unsigned L, int start, int len) {
    const double target = B[key(v, L, iid(start, len))];
    for (int t = 0; t <= len; ++t) {
      const int id1 = iid(start, t);
      const int id2 = iid((start + t) % k, len - t);
      for (unsigned L1 = L;; L1 = (L1 - 1) & L) {
        const unsigned L2 = L & ~L1;
        if ((L1 != 0 || t != 0) && (L2 != 0 || t != len) &&
            close(C[key(v, L1, id1)] + C[key(v, L2, id2)], target)) {
          rec_C(v, L1, start, t);
          rec_C(v, L2, (start + t) % k, len - t);
          return;
        }
        if (L1 == 0) break;
      }
    }
    fail(__func__, v, L, start, len);
  }

  void rec_P(int m, int v, unsigned L, int start, int len) {
    const double target = P[m - 2][key(v, L, iid(start, len))];
    const std::vector<double>& prefix = m == 2 ? A : P[m - 3];
    for (int t = 0; t <= len; ++t) {
      const int id1 = iid(start, t);
      const int id2 = iid((start + t) % k, len - t);
      for (unsigned L1 = L;; L1 = (L1 - 1) & L) {
        const unsigned L2 = L & ~L1;
        if ((L1 != 0 || t != 0) && (L2 != 0 || t != len) &&
            close(prefix[key(v, L1, id1)] + A[key(v, L2, id2)], target)) {
          if (m == 2)
            rec_A(v, L1, start, t);
          else
            rec_P(m - 1, v, L1, start, t);
          rec_A(v, L2, (start + t) % k, len - t);
          return;
        }
        if (L1 == 0) break;
      }
    }
    fail(__func__, v, L, start, len);
  }

  void rec_C(int v, unsigned L, int start, int len) {
    if (L == 0 && len == 0) return;
    const int id = iid(start, len);
    const double target = C[key(v, L, id)];
    if (close(A[key(v, L, id)], target)) {
      rec_A(v, L, start, len);
      return;
    }
    for (int m = 2; m <= kMaxChildren; ++m) {
      if (close(P[m - 2][key(v, L, id)], target)) {
        rec_P(m, v, L, start, len);
        return;
      }
    }
    fail(__func__, v, L, start, len);
  }
};

bool point_in_hull(const std::vector<Point>& pts, const std::vector<int>& hull,
                   Point p, double eps) {
  if (hull.size() == 1) return dist(p, pts[hull[0]]) <= eps;
  if (hull.size() == 2) {
    const Point a = pts[hull[0]], b = pts[hull[1]];
    const Point u = b - a;
    const double len = dist(a, b);
    if (std::abs(cross(u, p - a)) > eps * len) return false;
    const double s = dot(p - a, u) / dot(u, u);
    return s >= -eps / len && s <= 1.0 + eps / len;
  }
  for (size_t i = 0; i < hull.size(); ++i) {
    const Point a = pts[hull[i]], b = pts[hull[(i + 1) % hull.size()]];
    if (cross(b - a, p - a) < -eps * dist(a, b)) return false;
  }
  return true;
}

}  // namespace

GridGraph build_grid_graph(const Instance& inst, double eps,
                           const ApproxCaps& caps, const Tolerance& tol) {
  tol.validate();
  inst.validate(tol);
  if (!(eps > 0.0)) throw std::invalid_argument("build_grid_graph: eps > 0");
  const int n = static_cast<int>(inst.terminals.size());
  if (n < 2) throw std::invalid_argument("build_grid_graph: n >= 2 required");

  const auto hull = convex_hull(inst.terminals, tol);
  if (hull.size() < 2)
    throw std::invalid_argument("build_grid_graph: degenerate single-point hull");

  GridGraph g;
  g.vertices = inst.terminals;
  g.kind.assign(n, GridVertexKind::kInteriorTerminal);
  for (const int h : hull) {
    g.kind[h] = GridVertexKind::kHullTerminal;
    g.hull_order.push_back(h);
  }
  for (int i = 0; i < n; ++i)
    if (g.kind[i] == GridVertexKind::kInteriorTerminal)
      g.interior_terminals.push_back(i);
  if (static_cast<int>(g.interior_terminals.size()) >
      caps.max_interior_terminals)
    throw CapExceeded("build_grid_graph: interior terminal count exceeds cap");

  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const Point& p : inst.terminals) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double extent = std::max(xmax - xmin, ymax - ymin);
  const double pitch = extent * eps / (8.0 * n - 12.0);
  g.cell = pitch;

  const auto add_vertex = [&](Point p) {
    for (const Point& existing : g.vertices)
      if (dist(existing, p) <= tol.eps_len) return;
    g.vertices.push_back(p);
    g.kind.push_back(GridVertexKind::kCandidate);
  };

  // V1: points spaced at the pitch along each hull edge.
  const size_t hull_edges = hull.size() == 2 ? 1 : hull.size();
  for (size_t i = 0; i < hull_edges; ++i) {
    const Point a = inst.terminals[hull[i]];
    const Point b = inst.terminals[hull[(i + 1) % hull.size()]];
    const double len = dist(a, b);
    for (int j = 1; j * pitch < len - tol.eps_len; ++j) {
      const double t = j * pitch / len;
      add_vertex(a + t * (b - a));
      if (static_cast<int>(g.vertices.size()) > caps.max_grid_vertices)
        throw CapExceeded("build_grid_graph: vertex cap exceeded, increase eps");
    }
  }

  // V0 ∩ hull region.
  const long long steps = pitch > 0.0
                              ? static_cast<long long>(std::floor(extent / pitch + 1e-9))
                              : 0;
  if ((steps + 1) * (steps + 1) > 400LL * caps.max_grid_vertices)
    throw CapExceeded("build_grid_graph: vertex cap exceeded, increase eps");
  for (long long i = 0; i <= steps; ++i)
    for (long long j = 0; j <= steps; ++j) {
      const Point p{xmin + i * pitch, ymin + j * pitch};
      if (!point_in_hull(inst.terminals, hull, p, tol.eps_len)) continue;
      add_vertex(p);
      if (static_cast<int>(g.vertices.size()) > caps.max_grid_vertices)
        throw CapExceeded("build_grid_graph: vertex cap exceeded, increase eps");
    }
  return g;
}

SteinerTree solve_graph_smt_interval(const GridGraph& g, const ApproxCaps& caps,
                                     const Tolerance& tol) {
  tol.validate();
  if (g.hull_order.empty())
    throw std::invalid_argument("solve_graph_smt_interval: no hull terminals");
  if (static_cast<int>(g.interior_terminals.size()) >
      caps.max_interior_terminals)
    throw CapExceeded(
        "solve_graph_smt_interval: interior terminal count exceeds cap");

  IntervalDp dp(g, tol);
  dp.run();

  const unsigned full_mask = (1u << dp.q) - 1u;
  int start, len;
  if (!g.interior_terminals.empty()) {
    // Full cyclic interval: the root's child arcs can sit anywhere on the
    // circle, so minimize over the anchor rotation.
    len = dp.k;
    start = 0;
    for (int s = 1; s < dp.k; ++s)
      if (dp.C[dp.key(dp.root, full_mask, dp.iid(s, len))] <
          dp.C[dp.key(dp.root, full_mask, dp.iid(start, len))])
        start = s;
  } else {
    start = 1 % dp.k;
    len = dp.k - 1;
  }
  const double answer = dp.C[dp.key(dp.root, full_mask, dp.iid(start, len))];
  if (!(answer < kInf))
    throw std::runtime_error("solve_graph_smt_interval: no tree found");
  dp.rec_C(dp.root, full_mask, start, len);

  auto edges = dp.out_edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Map used vertices to the output tree: terminals first (instance order),
  // then the used candidates as discrete Steiner points.
  const int n_terms = g.terminal_count();
  std::vector<int> remap(g.vertices.size(), -1);
  SteinerTree tree;
  for (int v = 0; v < n_terms; ++v) {
    tree.terminals.push_back(g.vertices[v]);
    remap[v] = v;
  }
  for (const auto& [u, v] : edges)
    for (const int w : {u, v})
      if (remap[w] < 0) {
        remap[w] = n_terms + static_cast<int>(tree.steiner_points.size());
        tree.steiner_points.push_back(g.vertices[w]);
      }
  for (const auto& [u, v] : edges) tree.edges.emplace_back(remap[u], remap[v]);
  tree.length = tree.computed_length();
  if (!close(tree.length, answer))
    throw std::runtime_error("solve_graph_smt_interval: length mismatch");
  return tree;
}

FptasResult solve_fptas(const Instance& inst, double eps, const ApproxCaps& caps,
                        const Tolerance& tol) {
  const GridGraph g = build_grid_graph(inst, eps, caps, tol);
  FptasResult res;
  res.tree = solve_graph_smt_interval(g, caps, tol);
  res.certified_ratio_bound = 1.0 + eps;
  return res;
}

}  // namespace esmt
