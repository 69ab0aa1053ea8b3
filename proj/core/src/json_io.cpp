#include "esmt/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace esmt {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_points(std::string& out, const std::vector<Point>& pts) {
  out += '[';
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ", ";
    out += '[' + num(pts[i].x) + ", " + num(pts[i].y) + ']';
  }
  out += ']';
}

std::vector<Point> parse_points(const nlohmann::json& arr,
                                const std::string& what) {
  if (!arr.is_array()) throw std::invalid_argument(what + ": expected array");
  std::vector<Point> pts;
  pts.reserve(arr.size());
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number())
      throw std::invalid_argument(what + ": expected [x, y] pairs");
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return pts;
}

nlohmann::json parse(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw std::invalid_argument("malformed JSON document");
  return doc;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  std::string out = "{\"name\": ";
  out += nlohmann::json(inst.name).dump();
  out += ", \"points\": ";
  append_points(out, inst.terminals);
  out += ", \"metadata\": {";
  bool first = true;
  for (const auto& [k, v] : inst.metadata) {
    if (!first) out += ", ";
    first = false;
    out += nlohmann::json(k).dump() + ": " + nlohmann::json(v).dump();
  }
  out += "}}\n";
  return out;
}

Instance deserialize_instance(const std::string& text, const Tolerance& tol) {
  const auto doc = parse(text);
  if (!doc.is_object() || !doc.contains("points"))
    throw std::invalid_argument("instance: missing \"points\"");
  Instance inst;
  inst.name = doc.value("name", std::string{});
  inst.terminals = parse_points(doc["points"], "instance points");
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object())
      throw std::invalid_argument("instance: metadata must be an object");
    for (const auto& [k, v] : doc["metadata"].items()) {
      if (!v.is_string())
        throw std::invalid_argument("instance: metadata values must be text");
      inst.metadata[k] = v.get<std::string>();
    }
  }
  inst.validate(tol);
  return inst;
}

std::string serialize_tree(const SteinerTree& tree) {
  std::string out = "{\"terminals\": ";
  append_points(out, tree.terminals);
  out += ", \"steiner_points\": ";
  append_points(out, tree.steiner_points);
  out += ", \"edges\": [";
  for (size_t i = 0; i < tree.edges.size(); ++i) {
    if (i) out += ", ";
    out += '[' + std::to_string(tree.edges[i].first) + ", " +
           std::to_string(tree.edges[i].second) + ']';
  }
  out += "], \"length\": " + num(tree.length) + "}\n";
  return out;
}

SteinerTree deserialize_tree(const std::string& text, const Tolerance& tol) {
  const auto doc = parse(text);
  for (const char* key : {"terminals", "steiner_points", "edges", "length"})
    if (!doc.is_object() || !doc.contains(key))
      throw std::invalid_argument(std::string("tree: missing \"") + key +
                                  "\"");
  SteinerTree tree;
  tree.terminals = parse_points(doc["terminals"], "tree terminals");
  tree.steiner_points = parse_points(doc["steiner_points"], "steiner points");
  if (!doc["edges"].is_array())
    throw std::invalid_argument("tree: edges must be an array");
  const int n = tree.vertex_count();
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw std::invalid_argument("tree: expected [i, j] edge pairs");
    const int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("tree: edge index out of range");
    tree.edges.emplace_back(u, v);
  }
  if (!doc["length"].is_number())
    throw std::invalid_argument("tree: length must be a number");
  tree.length = doc["length"].get<double>();
  (void)tol;
  return tree;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace esmt
