#pragma once

#include <vector>

#include "esmt/approx.hpp"
#include "esmt/melzak.hpp"
#include "esmt/model.hpp"

namespace esmt {

struct TopologyOptimizationResult {
  std::vector<Point> coordinates;  // Steiner positions, topology order
  double length = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Coordinate-wise smoothing: every Steiner node moves to the Torricelli
/// point of its three current neighbours until the total length settles.
/// Degenerate collapses onto a neighbour are kept and scored with the
/// zero-length edge.
TopologyOptimizationResult optimize_steiner_positions(
    const std::vector<Point>& points, const FullTopology& topo,
    int max_iterations = 10000, const Tolerance& tol = {});

/// Independent exact solver for n <= 6: the subset recurrence driven by
/// smoothed topology optima instead of Melzak realizations.
SteinerTree brute_force(const Instance& inst, const Tolerance& tol = {});

/// Exact graph Steiner minimum for tiny grid graphs (<= 12 vertices,
/// <= 5 terminals): minimum over candidate subsets of the MST of the
/// induced metric sub-instance.
SteinerTree graph_steiner_brute_force(const GridGraph& g,
                                      const Tolerance& tol = {});

}  // namespace esmt
