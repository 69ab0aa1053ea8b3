#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "esmt/model.hpp"

namespace esmt {

/// A full Steiner topology: terminals 0..n-1 are leaves, Steiner nodes
/// n..2n-3 have degree exactly 3. n = 2 is the single edge, no Steiner nodes.
struct FullTopology {
  int n_terminals = 0;
  int n_steiner = 0;
  std::vector<std::pair<int, int>> adjacency;

  /// Label-preserving canonical encoding; equal strings iff the topologies
  /// are isomorphic under Steiner relabeling.
  std::string canonical_encoding() const;
};

/// Number of full Steiner topologies on n terminals: (2n-5)!! for n >= 3,
/// 1 for n = 2.
std::uint64_t full_topology_count(int n);

/// Emits every full topology on n terminals exactly once.
void enumerate_full_topologies(int n,
                               const std::function<void(const FullTopology&)>& visit);

/// Convenience collector for small n.
std::vector<FullTopology> all_full_topologies(int n);

struct FstResult {
  std::optional<SteinerTree> tree;  // empty when infeasible
  double length = std::numeric_limits<double>::infinity();
  FullTopology topology;

  bool feasible() const { return tree.has_value(); }
};

/// Minimum realization of one topology via Melzak merge/reconstruct,
/// branching over both equilateral-point orientations at every merge.
/// Branches whose backbone already reaches prune_above are skipped; the
/// result is exact whenever the topology's optimum is below the bound.
FstResult realize_fst(const std::vector<Point>& points,
                      const FullTopology& topo, const Tolerance& tol = {},
                      double prune_above = std::numeric_limits<double>::infinity());

/// Minimum FST over all full topologies of the point set.
FstResult minimum_fst(const std::vector<Point>& points,
                      const Tolerance& tol = {});

}  // namespace esmt
