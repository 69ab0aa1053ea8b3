#include "esmt/melzak.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace esmt {

namespace {

// Topologies are generated by the classic insertion scheme: start from the
// 3-terminal star, then attach terminal i by subdividing one of the 2i-3
// existing edges. Every digit vector maps to a distinct topology and every
// full topology arises exactly once.
FullTopology build_from_digits(int n, const std::vector<int>& digits) {
  FullTopology topo;
  topo.n_terminals = n;
  topo.n_steiner = n <= 2 ? 0 : n - 2;
  if (n == 2) {
    topo.adjacency = {{0, 1}};
    return topo;
  }
  auto& edges = topo.adjacency;
  edges = {{0, n}, {1, n}, {2, n}};
  for (int i = 3; i < n; ++i) {
    const int steiner = n + (i - 2);
    const auto [u, v] = edges[digits[i - 3]];
    edges[digits[i - 3]] = {u, steiner};
    edges.emplace_back(steiner, v);
    edges.emplace_back(steiner, i);
  }
  return topo;
}

struct MergeStep {
  int u = 0, v = 0;        // merged pseudoterminals
  int steiner = 0;         // contracted Steiner node
  int e_id = 0;            // replacement E-point node id
  int w = 0;               // the Steiner node's third neighbour
};

// The contraction schedule is orientation-independent: cherries picked in
// deterministic order, each merge replacing two pseudoterminals by an
// E-point node. Node ids: terminals, Steiner nodes, then E-points.
std::vector<MergeStep> plan_merges(const FullTopology& topo) {
  const int n = topo.n_terminals;
  const int total = 2 * n - 2;
  std::vector<std::vector<int>> adj(total);
  for (const auto& [a, b] : topo.adjacency) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> alive(total + topo.n_steiner, 1);
  std::vector<char> pseudo(total + topo.n_steiner, 0);
  for (int i = 0; i < n; ++i) pseudo[i] = 1;
  adj.resize(total + topo.n_steiner);

  const auto detach = [&](int node, int from) {
    auto& list = adj[node];
    list.erase(std::find(list.begin(), list.end(), from));
  };

  std::vector<MergeStep> steps;
  for (int step = 0; step < topo.n_steiner; ++step) {
    int s = -1;
    for (int cand = n; cand < total && s < 0; ++cand) {
      if (!alive[cand]) continue;
      int leaves = 0;
      for (int nb : adj[cand]) leaves += pseudo[nb];
      if (leaves >= 2) s = cand;
    }
    if (s < 0) throw std::invalid_argument("realize_fst: not a full topology");
    std::vector<int> leaf_nbs;
    for (int nb : adj[s])
      if (pseudo[nb]) leaf_nbs.push_back(nb);
    std::sort(leaf_nbs.begin(), leaf_nbs.end());
    const int u = leaf_nbs[0], v = leaf_nbs[1];
    int w = -1;
    for (int nb : adj[s])
      if (nb != u && nb != v) w = nb;

    const int e_id = total + step;
    alive[u] = alive[v] = alive[s] = 0;
    pseudo[e_id] = 1;
    detach(s, u);
    detach(s, v);
    detach(u, s);
    detach(v, s);
    detach(s, w);
    detach(w, s);
    adj[e_id].push_back(w);
    adj[w].push_back(e_id);
    steps.push_back({u, v, s, e_id, w});
  }
  return steps;
}

// Equilateral apex by constant-angle rotation about p.
inline Point equilateral_apex(Point p, Point q, bool left) {
  constexpr double kHalfSqrt3 = std::numbers::sqrt3 / 2.0;
  const double dx = q.x - p.x, dy = q.y - p.y;
  return left ? Point{p.x + 0.5 * dx - kHalfSqrt3 * dy,
                      p.y + kHalfSqrt3 * dx + 0.5 * dy}
              : Point{p.x + 0.5 * dx + kHalfSqrt3 * dy,
                      p.y - kHalfSqrt3 * dx + 0.5 * dy};
}

// One orientation branch: evaluate E-points forward, then unwind each merge.
// The Steiner point is the second intersection of the segment from the
// E-point to its attachment with the merge circle; since the E-point lies on
// the circle the other root is linear. Feasibility: the intersection stays
// inside the segment, clear of the merged pair and the attachment, on the
// far arc (opposite side of the chord from the E-point).
bool forward_pass(const std::vector<MergeStep>& steps, unsigned bits,
                  std::vector<Point>& pos, const Tolerance& tol) {
  for (size_t i = 0; i < steps.size(); ++i) {
    const MergeStep& m = steps[i];
    const Point pu = pos[m.u], pv = pos[m.v];
    if (dist(pu, pv) <= tol.eps_len) return false;
    pos[m.e_id] = equilateral_apex(pu, pv, (bits >> i) & 1u);
  }
  return true;
}

bool unwind_pass(const std::vector<MergeStep>& steps, std::vector<Point>& pos,
                 const Tolerance& tol) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const Point e = pos[it->e_id];
    const Point z = pos[it->w];
    const Point pu = pos[it->u], pv = pos[it->v];
    const double ez = dist(e, z);
    if (ez <= tol.eps_len) return false;

    Circle circle;
    try {
      circle = circumcircle(pu, pv, e, tol);
    } catch (const std::invalid_argument&) {
      return false;
    }
    const Point d = z - e;
    const Point ec = e - circle.center;
    const double t = -2.0 * dot(d, ec) / dot(d, d);
    if (t < tol.eps_len / ez || t > 1.0 + tol.eps_len / ez) return false;
    const Point s = e + t * d;
    if (dist(s, z) <= tol.eps_len) return false;   // collapses onto neighbour
    if (dist(s, pu) <= tol.eps_len || dist(s, pv) <= tol.eps_len) return false;
    const Point chord = pv - pu;
    const double side_e = cross(chord, e - pu);
    const double side_s = cross(chord, s - pu);
    if (side_e * side_s > tol.eps_len * dist(pu, pv)) return false;  // near arc
    pos[it->steiner] = s;
  }
  return true;
}

}  // namespace

std::string FullTopology::canonical_encoding() const {
  const int total = n_terminals + n_steiner;
  std::vector<std::vector<int>> adj(total);
  for (const auto& [a, b] : adjacency) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  if (n_terminals == 2) return "(01)";
  // Rooted canonical form: hang the tree off terminal 0; terminals are
  // labeled leaves, Steiner subtrees sort by their encodings.
  const std::function<std::string(int, int)> encode = [&](int v,
                                                          int from) -> std::string {
    if (v < n_terminals) return "t" + std::to_string(v);
    std::vector<std::string> parts;
    for (int nb : adj[v])
      if (nb != from) parts.push_back(encode(nb, v));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    out += ")";
    return out;
  };
  return encode(adj[0][0], 0);
}

std::uint64_t full_topology_count(int n) {
  if (n < 2) throw std::invalid_argument("full_topology_count: n >= 2");
  std::uint64_t c = 1;
  for (int k = 3; k <= n; ++k) c *= static_cast<std::uint64_t>(2 * k - 5);
  return c;
}

void enumerate_full_topologies(
    int n, const std::function<void(const FullTopology&)>& visit) {
  if (n < 2) throw std::invalid_argument("enumerate_full_topologies: n >= 2");
  if (n == 2) {
    visit(build_from_digits(2, {}));
    return;
  }
  std::vector<int> digits(std::max(0, n - 3), 0);
  while (true) {
    visit(build_from_digits(n, digits));
    int pos = static_cast<int>(digits.size()) - 1;
    while (pos >= 0) {
      if (++digits[pos] < 2 * (pos + 3) - 3) break;
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

std::vector<FullTopology> all_full_topologies(int n) {
  std::vector<FullTopology> out;
  enumerate_full_topologies(n, [&](const FullTopology& t) { out.push_back(t); });
  return out;
}

FstResult realize_fst(const std::vector<Point>& points,
                      const FullTopology& topo, const Tolerance& tol,
                      double prune_above) {
  tol.validate();
  if (static_cast<int>(points.size()) != topo.n_terminals)
    throw std::invalid_argument("realize_fst: point/terminal count mismatch");
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (dist(points[i], points[j]) <= tol.eps_len)
        throw std::invalid_argument("realize_fst: coincident input points");

  FstResult best;
  best.topology = topo;
  const int n = topo.n_terminals;

  if (n == 2) {
    SteinerTree tree;
    tree.terminals = points;
    tree.edges = {{0, 1}};
    tree.length = dist(points[0], points[1]);
    best.tree = std::move(tree);
    best.length = best.tree->length;
    return best;
  }

  const auto steps = plan_merges(topo);
  std::vector<Point> pos(2 * n - 2 + topo.n_steiner);
  for (int i = 0; i < n; ++i) pos[i] = points[i];

  const int backbone_a = steps.back().e_id;
  const int backbone_b = steps.back().w;
  const unsigned branches = 1u << topo.n_steiner;
  for (unsigned bits = 0; bits < branches; ++bits) {
    if (!forward_pass(steps, bits, pos, tol)) continue;
    // A feasible branch realizes exactly its backbone length, so a backbone
    // at or past the running bound cannot improve anything.
    const double bound = std::min(best.length, prune_above);
    if (dist(pos[backbone_a], pos[backbone_b]) >= bound) continue;
    if (!unwind_pass(steps, pos, tol)) continue;

    bool degenerate = false;
    double len = 0.0;
    for (const auto& [a, b] : topo.adjacency) {
      const double d = dist(pos[a], pos[b]);
      if (d <= tol.eps_len) degenerate = true;
      len += d;
    }
    if (degenerate || len >= best.length) continue;

    SteinerTree tree;
    tree.terminals = points;
    tree.steiner_points.assign(pos.begin() + n, pos.begin() + (2 * n - 2));
    tree.edges = topo.adjacency;
    bool crossing = false;
    for (size_t i = 0; i < tree.edges.size() && !crossing; ++i)
      for (size_t j = i + 1; j < tree.edges.size() && !crossing; ++j)
        crossing = segments_properly_intersect(
            tree.vertex(tree.edges[i].first), tree.vertex(tree.edges[i].second),
            tree.vertex(tree.edges[j].first), tree.vertex(tree.edges[j].second),
            tol);
    if (crossing) continue;
    tree.length = len;
    best.tree = std::move(tree);
    best.length = len;
  }
  return best;
}

FstResult minimum_fst(const std::vector<Point>& points, const Tolerance& tol) {
  if (points.size() < 2)
    throw std::invalid_argument("minimum_fst: needs at least 2 points");
  FstResult best;
  bool have_any = false;
  enumerate_full_topologies(
      static_cast<int>(points.size()), [&](const FullTopology& topo) {
        FstResult r = realize_fst(points, topo, tol, best.length);
        if (!have_any || r.length < best.length) best = std::move(r);
        have_any = true;
      });
  return best;
}

}  // namespace esmt
