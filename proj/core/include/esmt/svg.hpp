#pragma once

#include <optional>
#include <string>

#include "esmt/model.hpp"

namespace esmt {

/// SVG rendering of a tree (and optionally its instance): viewBox is the
/// vertex bounding box expanded 5% per side, terminals are filled circles
/// (radius 1% of the max extent), Steiner points hollow circles, edges
/// 0.4%-width lines. CPR instances tint the inner and outer polygon
/// terminals distinctly.
std::string render_svg(const SteinerTree& tree,
                       const std::optional<Instance>& instance = std::nullopt);

}  // namespace esmt
