#pragma once

#include <vector>

#include "esmt/model.hpp"

namespace esmt {

enum class GridVertexKind { kHullTerminal, kInteriorTerminal, kCandidate };

/// Discretization of the Steiner hull: instance terminals first (in instance
/// order), then hull-edge points, then interior lattice points. The implied
/// graph is complete with Euclidean edge weights.
struct GridGraph {
  std::vector<Point> vertices;
  std::vector<GridVertexKind> kind;
  std::vector<int> hull_order;  // hull terminals, CCW, into `vertices`
  std::vector<int> interior_terminals;
  double cell = 0.0;  // lattice pitch D*eps/(8n-12)

  int terminal_count() const {
    return static_cast<int>(hull_order.size() + interior_terminals.size());
  }
};

struct ApproxCaps {
  int max_grid_vertices = 2500;
  int max_interior_terminals = 4;
};

/// Lattice of pitch D*eps/(8n-12) over the bounding square, clipped to the
/// closed hull region, plus pitch-spaced points along each hull edge.
GridGraph build_grid_graph(const Instance& inst, double eps,
                           const ApproxCaps& caps = {},
                           const Tolerance& tol = {});

/// Minimum-length connected subgraph spanning all terminals of the grid
/// graph, by the cyclic-interval dynamic program. Non-terminal vertices used
/// by the tree are reported as (discrete) Steiner points.
SteinerTree solve_graph_smt_interval(const GridGraph& g,
                                     const ApproxCaps& caps = {},
                                     const Tolerance& tol = {});

struct FptasResult {
  SteinerTree tree;
  double certified_ratio_bound = 1.0;  // 1 + eps
};

/// (1+eps)-approximate Euclidean SMT: grid discretization followed by the
/// interval dynamic program.
FptasResult solve_fptas(const Instance& inst, double eps,
                        const ApproxCaps& caps = {}, const Tolerance& tol = {});

}  // namespace esmt
