#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "esmt/geom.hpp"

namespace esmt {

/// A terminal set. Terminals must be pairwise distinct within eps_len.
struct Instance {
  std::string name;
  std::vector<Point> terminals;
  std::map<std::string, std::string> metadata;

  void validate(const Tolerance& tol = {}) const;
};

/// An embedded tree over terminals followed by Steiner points. Edge indices
/// refer to the concatenation terminals ++ steiner_points.
struct SteinerTree {
  std::vector<Point> terminals;
  std::vector<Point> steiner_points;
  std::vector<std::pair<int, int>> edges;
  double length = 0.0;

  int vertex_count() const {
    return static_cast<int>(terminals.size() + steiner_points.size());
  }
  bool is_steiner(int v) const {
    return v >= static_cast<int>(terminals.size());
  }
  Point vertex(int v) const {
    return is_steiner(v) ? steiner_points[v - terminals.size()] : terminals[v];
  }
  /// Sum of Euclidean edge lengths (recomputed, not the cached field).
  double computed_length() const;
};

struct Violation {
  std::string check;
  std::string location;
  double measured = 0.0;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Violation> violations;

  void add(std::string check, std::string location, double measured);
};

/// Structural SMT checks: tree-ness, no crossing edges, Steiner degree 3 with
/// 120-degree incident angles, terminal degree <= 3 with angles >= 120
/// degrees, Steiner count <= n-2, all vertices inside the terminal hull.
ValidationReport validate_smt_structure(const SteinerTree& t,
                                        const Tolerance& tol = {});

/// For every edge UV, no other tree vertex lies strictly inside the lune
/// {x : |xU| < |UV| and |xV| < |UV|}.
ValidationReport check_lune_property(const SteinerTree& t,
                                     const Tolerance& tol = {});

}  // namespace esmt
