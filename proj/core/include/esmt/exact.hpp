#pragma once

#include <cstdint>
#include <vector>

#include "esmt/melzak.hpp"
#include "esmt/model.hpp"

namespace esmt {

/// Per-subset tables of the exact solver; exposed for inspection and tests.
/// Subsets are bitmasks over terminal indices. A witness is either the
/// subset's own minimum FST (FULL) or a leaf component R glued at pivot P.
struct SubsetTable {
  int n = 0;
  int hull_interior_count = 0;
  std::vector<double> fst_len;   // by mask, |S| >= 2
  std::vector<double> smt_len;   // by mask
  std::vector<std::uint32_t> witness_r;  // 0 = FULL, else mask of R
  std::vector<int> witness_pivot;        // terminal index P in R
};

struct ExactOptions {
  int max_terminals = 11;
};

struct ExactResult {
  SteinerTree tree;
  SubsetTable table;
};

/// Exact SMT by leaf-full-component decomposition: minimum FST of every
/// subset, then a subset DP combining a leaf component with the SMT of the
/// rest plus the pivot.
ExactResult solve_exact_with_table(const Instance& inst,
                                   const Tolerance& tol = {},
                                   const ExactOptions& opts = {});

SteinerTree solve_exact(const Instance& inst, const Tolerance& tol = {},
                        const ExactOptions& opts = {});

/// Edge partition into maximal full components (contiguous runs of edges
/// glued at Steiner points); returns each component's vertex set.
std::vector<std::vector<int>> decompose_full_components(const SteinerTree& t);

}  // namespace esmt
