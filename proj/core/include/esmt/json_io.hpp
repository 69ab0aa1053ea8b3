#pragma once

#include <string>

#include "esmt/model.hpp"

namespace esmt {

// Instance files: {"name": str, "points": [[x,y],...], "metadata": {...}}
// Tree files:     {"terminals": [[x,y],...], "steiner_points": [[x,y],...],
//                  "edges": [[i,j],...], "length": num}
// One UTF-8 document per file; numbers carry 17 significant digits.

std::string serialize_instance(const Instance& inst);
Instance deserialize_instance(const std::string& text,
                              const Tolerance& tol = {});

std::string serialize_tree(const SteinerTree& tree);
SteinerTree deserialize_tree(const std::string& text,
                             const Tolerance& tol = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace esmt
