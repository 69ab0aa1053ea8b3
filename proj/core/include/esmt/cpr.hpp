#pragma once

#include <optional>
#include <string>

#include "esmt/model.hpp"

namespace esmt {

/// Two concentric parallel regular n-gons: inner side `inner_side`, outer
/// side `inner_side * lambda`, shared vertex rays from `center`.
struct CprSpec {
  int n = 3;
  double lambda = 2.0;
  double rotation = 0.0;
  Point center{0.0, 0.0};
  double inner_side = 1.0;

  void validate() const;
};

enum class CprTopology {
  kTorricelli3Gon,
  kSquareTopologyI,
  kSquareTopologyII,
  kSinglyConnected,
  kUnsupportedRegime,
};

std::string to_string(CprTopology tag);

struct CprSolution {
  std::optional<SteinerTree> tree;  // absent for the unsupported regime
  CprTopology topology_tag = CprTopology::kUnsupportedRegime;
  double predicted_length = 0.0;  // closed form, 0 when unsupported
};

/// Vertical-fork existence threshold (sqrt(3)+tan(pi/n))/(sqrt(3)-tan(pi/n)),
/// n >= 4.
double lambda_v(int n);

/// Singly-connected regime threshold 1/(1 - 4 sin(pi/n)), n >= 13.
double lambda_1(int n);

/// Five-edge fork {A-S1, B-S1, S1-S2, S2-P, S2-Q} on the isosceles trapezoid
/// ABQP with apex angle 2*pi/n and |PQ|/|AB| >= lambda_v(n). At the threshold
/// the coincident S1 = S2 pair is merged into one degree-4 Steiner point.
SteinerTree build_vertical_fork(Point a, Point b, Point p, Point q, int n,
                                const Tolerance& tol = {});

/// Terminals A_1..A_n (inner, CCW) then B_1..B_n (outer), metadata carrying
/// the spec fields.
Instance generate_cpr_instance(const CprSpec& spec);

/// Closed-form solution by regime: n = 3 Torricelli star; n = 4 the shorter
/// of the two square topologies; n >= 13 with lambda >= lambda_1 the singly
/// connected construction; everything else unsupported.
CprSolution solve_cpr(const CprSpec& spec, const Tolerance& tol = {});

}  // namespace esmt
