#include "esmt/exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "esmt/errors.hpp"

namespace esmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Point> subset_points(const std::vector<Point>& terminals,
                                 std::uint32_t mask) {
  std::vector<Point> pts;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1u) pts.push_back(terminals[i]);
  return pts;
}

std::vector<int> subset_indices(std::uint32_t mask) {
  std::vector<int> idx;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1u) idx.push_back(i);
  return idx;
}

// Appends the FST realization of subset `mask` to `out`, mapping subset
// vertex ids to global ones.
void glue_fst(const SteinerTree& fst, std::uint32_t mask, SteinerTree& out) {
  const auto global = subset_indices(mask);
  const int local_terms = static_cast<int>(fst.terminals.size());
  const int steiner_base = out.vertex_count();
  for (const Point& s : fst.steiner_points) out.steiner_points.push_back(s);
  for (const auto& [u, v] : fst.edges) {
    const int gu = u < local_terms ? global[u] : steiner_base + (u - local_terms);
    const int gv = v < local_terms ? global[v] : steiner_base + (v - local_terms);
    out.edges.emplace_back(gu, gv);
  }
}

void emit_tree(const SubsetTable& table,
               const std::vector<FstResult>& fst_results, std::uint32_t mask,
               SteinerTree& out) {
  if (std::popcount(mask) < 2) return;
  const std::uint32_t r = table.witness_r[mask];
  if (r == 0) {
    glue_fst(*fst_results[mask].tree, mask, out);
    return;
  }
  const std::uint32_t rest =
      (mask & ~r) | (1u << table.witness_pivot[mask]);
  glue_fst(*fst_results[r].tree, r, out);
  emit_tree(table, fst_results, rest, out);
}

}  // namespace

ExactResult solve_exact_with_table(const Instance& inst, const Tolerance& tol,
                                   const ExactOptions& opts) {
  tol.validate();
  inst.validate(tol);
  const int n = static_cast<int>(inst.terminals.size());
  if (n > opts.max_terminals)
    throw CapExceeded("solve_exact: instance exceeds terminal cap " +
                      std::to_string(opts.max_terminals));

  ExactResult result;
  result.tree.terminals = inst.terminals;
  SubsetTable& table = result.table;
  table.n = n;
  table.hull_interior_count =
      n - static_cast<int>(convex_hull(inst.terminals, tol).size());

  if (n == 1) return result;

  const std::uint32_t full = (n == 32) ? ~0u : (1u << n) - 1u;
  table.fst_len.assign(full + 1, kInf);
  table.smt_len.assign(full + 1, kInf);
  table.witness_r.assign(full + 1, 0);
  table.witness_pivot.assign(full + 1, -1);

  // Phase 1: minimum FST of every subset with >= 2 terminals.
  std::vector<FstResult> fst_results(full + 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) < 2) {
      table.smt_len[mask] = 0.0;
      continue;
    }
    fst_results[mask] = minimum_fst(subset_points(inst.terminals, mask), tol);
    table.fst_len[mask] = fst_results[mask].length;
  }

  // Phase 2: subsets in increasing cardinality; either the subset is one
  // full component, or a leaf component R attaches at pivot P to the SMT of
  // the remainder plus P.
  std::vector<std::uint32_t> order;
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    if (std::popcount(mask) >= 2) order.push_back(mask);
  std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  std::vector<std::uint32_t> submasks;
  for (const std::uint32_t mask : order) {
    double best = table.fst_len[mask];
    std::uint32_t best_r = 0;
    int best_p = -1;
    // Proper submasks R with |R| >= 2 and S\R nonempty, ascending so that
    // ties resolve to the lexicographically smallest (R, P) after FULL.
    submasks.clear();
    for (std::uint32_t r = (mask - 1) & mask; r > 0; r = (r - 1) & mask)
      submasks.push_back(r);
    std::reverse(submasks.begin(), submasks.end());
    for (const std::uint32_t r : submasks) {
      if (std::popcount(r) < 2) continue;
      const double fst_r = table.fst_len[r];
      if (fst_r >= best) continue;  // smt_len is nonnegative
      for (const int p : subset_indices(r)) {
        const std::uint32_t rest = (mask & ~r) | (1u << p);
        const double cand = table.smt_len[rest] + fst_r;
        if (cand < best) {
          best = cand;
          best_r = r;
          best_p = p;
        }
      }
    }
    table.smt_len[mask] = best;
    table.witness_r[mask] = best_r;
    table.witness_pivot[mask] = best_p;
  }

  if (table.smt_len[full] == kInf)
    throw std::runtime_error("solve_exact: no realizable decomposition");

  emit_tree(table, fst_results, full, result.tree);
  result.tree.length = result.tree.computed_length();
  return result;
}

SteinerTree solve_exact(const Instance& inst, const Tolerance& tol,
                        const ExactOptions& opts) {
  return solve_exact_with_table(inst, tol, opts).tree;
}

std::vector<std::vector<int>> decompose_full_components(const SteinerTree& t) {
  const int n = t.vertex_count();
  const int m = static_cast<int>(t.edges.size());
  for (const auto& [u, v] : t.edges)
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("decompose_full_components: bad edge index");
  // Union edges that share a Steiner endpoint; terminals are cut points.
  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  const auto find = [&](int e) {
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  };
  std::vector<int> touch(n, -1);
  for (int e = 0; e < m; ++e) {
    for (const int v : {t.edges[e].first, t.edges[e].second}) {
      if (!t.is_steiner(v)) continue;
      if (touch[v] >= 0) parent[find(e)] = find(touch[v]);
      touch[v] = e;
    }
  }
  std::vector<std::vector<int>> groups(m);
  for (int e = 0; e < m; ++e) groups[find(e)].push_back(e);
  std::vector<std::vector<int>> components;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    std::vector<int> verts;
    for (const int e : group) {
      verts.push_back(t.edges[e].first);
      verts.push_back(t.edges[e].second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    components.push_back(std::move(verts));
  }
  return components;
}

}  // namespace esmt
