// esmt: Euclidean Steiner minimal tree toolkit.
//
// Subcommands: gen (instances), solve (exact / cpr / fptas / mst),
// check (structural validators), bench (threshold, scaling and ratio tables).
//
// Exit codes: 0 ok, 1 parse or input error, 2 cap exceeded,
//             3 unsupported closed-form regime.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esmt/approx.hpp"
#include "esmt/cpr.hpp"
#include "esmt/errors.hpp"
#include "esmt/exact.hpp"
#include "esmt/json_io.hpp"
#include "esmt/model.hpp"
#include "esmt/oracle.hpp"
#include "esmt/svg.hpp"

namespace {

using namespace esmt;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitCaps = 2;
constexpr int kExitUnsupported = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

 private:
  std::mt19937_64 engine_;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

// ---- gen ------------------------------------------------------------------

Instance gen_almost_convex(int hull, int interior, std::uint64_t seed) {
  if (hull < 3) throw std::invalid_argument("gen almost-convex: --hull >= 3");
  if (interior < 0) throw std::invalid_argument("gen almost-convex: --interior >= 0");
  Rng rng(seed);
  Instance inst;
  inst.name = "almost-convex-h" + std::to_string(hull) + "-f" +
              std::to_string(interior) + "-s" + std::to_string(seed);

  // Hull points on the unit circle; a minimum angular gap keeps the hull
  // polygon from degenerating into a sliver, which would starve the interior
  // rejection sampler.
  const double min_gap = std::min(0.2, 0.6 * 2.0 * std::numbers::pi / hull);
  std::vector<double> angles;
  while (true) {
    angles.clear();
    for (int i = 0; i < hull; ++i)
      angles.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
    std::sort(angles.begin(), angles.end());
    bool ok = true;
    for (int i = 0; i < hull; ++i) {
      const double gap = (i + 1 < hull ? angles[i + 1] : angles[0] + 2 * std::numbers::pi) -
                         angles[i];
      if (gap < min_gap) ok = false;
    }
    if (ok) break;
  }
  for (const double a : angles)
    inst.terminals.emplace_back(std::cos(a), std::sin(a));

  const auto hull_idx = convex_hull(inst.terminals);
  const auto strictly_inside = [&](Point p) {
    for (size_t i = 0; i < hull_idx.size(); ++i) {
      const Point a = inst.terminals[hull_idx[i]];
      const Point b = inst.terminals[hull_idx[(i + 1) % hull_idx.size()]];
      if (cross(b - a, p - a) < 1e-6 * dist(a, b)) return false;
    }
    return true;
  };
  int placed = 0;
  long long attempts = 0;
  while (placed < interior) {
    if (++attempts > 1000000LL)
      throw std::runtime_error("gen almost-convex: interior sampling stalled");
    const Point p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (!strictly_inside(p)) continue;
    bool clash = false;
    for (const Point& q : inst.terminals)
      if (dist(p, q) < 1e-6) clash = true;
    if (clash) continue;
    inst.terminals.push_back(p);
    ++placed;
  }
  inst.metadata["kind"] = "almost-convex";
  inst.metadata["hull"] = std::to_string(hull);
  inst.metadata["interior"] = std::to_string(interior);
  inst.metadata["seed"] = std::to_string(seed);
  inst.validate();
  return inst;
}

// ---- solve ----------------------------------------------------------------

CprSpec cpr_spec_from_metadata(const Instance& inst) {
  const auto& md = inst.metadata;
  const auto need = [&](const std::string& key) -> std::string {
    const auto it = md.find(key);
    if (it == md.end())
      throw std::invalid_argument("instance is not a cpr instance (missing metadata \"" +
                                  key + "\")");
    return it->second;
  };
  if (need("kind") != "cpr")
    throw std::invalid_argument("instance metadata kind is not \"cpr\"");
  CprSpec spec;
  spec.n = std::stoi(need("n"));
  spec.lambda = std::stod(need("lambda"));
  spec.rotation = std::stod(need("rotation"));
  spec.inner_side = std::stod(need("inner_side"));
  spec.center = {std::stod(need("center_x")), std::stod(need("center_y"))};
  spec.validate();

  const Instance regen = generate_cpr_instance(spec);
  if (regen.terminals.size() != inst.terminals.size())
    throw std::invalid_argument("cpr metadata does not match the instance points");
  for (size_t i = 0; i < regen.terminals.size(); ++i)
    if (dist(regen.terminals[i], inst.terminals[i]) > 1e-9)
      throw std::invalid_argument("cpr metadata does not match the instance points");
  return spec;
}

int cmd_solve(const std::string& input, const std::string& method,
              const std::string& out, const std::string& svg, double eps,
              int max_grid_vertices, int max_interior, int max_terminals) {
  const Instance inst = deserialize_instance(read_file(input));
  SteinerTree tree;

  if (method == "exact") {
    tree = solve_exact(inst, {}, {.max_terminals = max_terminals});
  } else if (method == "cpr") {
    const CprSpec spec = cpr_spec_from_metadata(inst);
    const CprSolution sol = solve_cpr(spec);
    if (sol.topology_tag == CprTopology::kUnsupportedRegime) {
      std::cout << "{\"error\": \"unsupported_regime\", \"n\": " << spec.n
                << ", \"lambda\": " << fmt(spec.lambda)
                << ", \"reason\": \"no closed-form structure for this (n, lambda)\"}\n";
      return kExitUnsupported;
    }
    tree = *sol.tree;
    std::cerr << "topology: " << to_string(sol.topology_tag)
              << "  predicted length: " << fmt(sol.predicted_length) << "\n";
  } else if (method == "fptas") {
    if (!(eps > 0.0))
      throw std::invalid_argument("solve --method fptas requires --eps > 0");
    ApproxCaps caps;
    caps.max_grid_vertices = max_grid_vertices;
    caps.max_interior_terminals = max_interior;
    tree = solve_fptas(inst, eps, caps).tree;
  } else if (method == "mst") {
    const auto mst = euclidean_mst(inst.terminals);
    tree.terminals = inst.terminals;
    tree.edges = mst.edges;
    tree.length = mst.length;
  } else {
    throw std::invalid_argument("unknown method \"" + method + "\"");
  }

  write_output(out, serialize_tree(tree));
  if (!svg.empty()) write_file(svg, render_svg(tree, inst));
  return kExitOk;
}

// ---- check ----------------------------------------------------------------

int cmd_check(const std::string& tree_path, const std::string& instance_path,
              bool oracle, const std::string& json_out) {
  const SteinerTree tree = deserialize_tree(read_file(tree_path));
  const Instance inst = deserialize_instance(read_file(instance_path));
  if (tree.terminals.size() != inst.terminals.size())
    throw std::invalid_argument("tree and instance terminal sets differ in size");
  for (size_t i = 0; i < tree.terminals.size(); ++i)
    if (dist(tree.terminals[i], inst.terminals[i]) > 1e-9)
      throw std::invalid_argument("tree terminal " + std::to_string(i) +
                                  " does not match the instance");

  ValidationReport structure = validate_smt_structure(tree);
  const ValidationReport lune = check_lune_property(tree);
  for (const auto& v : lune.violations) structure.violations.push_back(v);
  structure.passed = structure.passed && lune.passed;

  if (oracle && inst.terminals.size() <= 6) {
    const SteinerTree best = brute_force(inst);
    std::cout << "oracle length: " << fmt(best.length) << "\n";
    if (tree.length > best.length + 1e-6 * std::max(1.0, best.length))
      structure.add("not-minimal", "tree", tree.length);
  } else if (oracle) {
    std::cout << "oracle skipped: instance has more than 6 terminals\n";
  }

  std::cout << (structure.passed ? "PASSED" : "FAILED") << ": "
            << structure.violations.size() << " violation(s)\n";
  std::string json = "{\"passed\": ";
  json += structure.passed ? "true" : "false";
  json += ", \"violations\": [";
  for (size_t i = 0; i < structure.violations.size(); ++i) {
    const auto& v = structure.violations[i];
    std::cout << "  " << v.check << " at " << v.location << " (measured "
              << fmt(v.measured) << ")\n";
    if (i) json += ", ";
    json += "{\"check\": \"" + v.check + "\", \"location\": \"" + v.location +
            "\", \"measured\": " + fmt(v.measured) + "}";
  }
  json += "]}\n";
  if (!json_out.empty()) write_file(json_out, json);
  return structure.passed ? kExitOk : kExitParse;
}

// ---- bench ----------------------------------------------------------------

void write_table(const std::string& dir, const std::string& name,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::string csv, md;
  for (size_t i = 0; i < header.size(); ++i) {
    csv += (i ? "," : "") + header[i];
    md += "| " + header[i] + " ";
  }
  csv += "\n";
  md += "|\n";
  for (size_t i = 0; i < header.size(); ++i) md += "| --- ";
  md += "|\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      csv += (i ? "," : "") + row[i];
      md += "| " + row[i] + " ";
    }
    csv += "\n";
    md += "|\n";
  }
  std::filesystem::create_directories(dir);
  write_file(dir + "/" + name + ".csv", csv);
  write_file(dir + "/" + name + ".md", md);
  std::cout << csv;
}

Instance random_instance(std::uint64_t seed, int n) {
  Rng rng(seed);
  Instance inst;
  inst.name = "rand-n" + std::to_string(n) + "-s" + std::to_string(seed);
  for (int i = 0; i < n; ++i)
    inst.terminals.emplace_back(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
  inst.validate();
  return inst;
}

// Thin strips keep the hull small relative to the bounding square, so fine
// grids stay under the vertex cap.
Instance strip_instance(std::uint64_t seed, int n) {
  Rng rng(seed);
  Instance inst;
  inst.name = "strip-n" + std::to_string(n) + "-s" + std::to_string(seed);
  for (int i = 0; i < n; ++i)
    inst.terminals.emplace_back(rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.17));
  inst.validate();
  return inst;
}

int cmd_bench(const std::string& suite, const std::string& dir,
              std::uint64_t seed, int max_n) {
  if (suite == "thresholds") {
    std::vector<std::vector<std::string>> rows;
    for (const int n : {4, 6, 8, 13, 20})
      rows.push_back({"lambda_v", std::to_string(n), fmt(lambda_v(n))});
    for (const int n : {13, 20, 40, 100, 500})
      rows.push_back({"lambda_1", std::to_string(n), fmt(lambda_1(n))});
    const double crossover = (2.0 * std::numbers::sqrt2 - 1.0) /
                             (2.0 * std::numbers::sqrt2 - 1.0 - std::numbers::sqrt3);
    rows.push_back({"square_crossover", "4", fmt(crossover)});
    write_table(dir, "thresholds", {"quantity", "n", "value"}, rows);
    return kExitOk;
  }
  if (suite == "scaling") {
    std::vector<std::vector<std::string>> rows;
    for (int n = 5; n <= max_n; ++n) {
      const Instance inst = random_instance(seed, n);
      const auto t0 = std::chrono::steady_clock::now();
      const SteinerTree tree = solve_exact(inst);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      rows.push_back({std::to_string(n), fmt(ms), fmt(tree.length)});
    }
    write_table(dir, "scaling", {"n", "time_ms", "length"}, rows);
    return kExitOk;
  }
  if (suite == "fptas-ratio") {
    std::vector<std::vector<std::string>> rows;
    for (int n = 4; n <= 7; ++n) {
      const Instance inst =
          n <= 4 ? random_instance(seed + n, n) : strip_instance(seed + n, n);
      const double exact = solve_exact(inst).length;
      for (const double eps : {1.0, 0.5}) {
        const auto approx = solve_fptas(inst, eps);
        rows.push_back({inst.name, std::to_string(n), fmt(eps), fmt(exact),
                        fmt(approx.tree.length), fmt(approx.tree.length / exact),
                        fmt(1.0 + eps)});
      }
    }
    write_table(dir, "fptas-ratio",
                {"instance", "n", "eps", "exact", "fptas", "ratio", "bound"},
                rows);
    return kExitOk;
  }
  throw std::invalid_argument("unknown bench suite \"" + suite + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euclidean Steiner minimal tree toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instance files");
  gen->require_subcommand(1);
  int cpr_n = 4;
  double cpr_lambda = 2.0, cpr_rotation = 0.0, cpr_inner = 1.0, cpr_cx = 0.0,
         cpr_cy = 0.0;
  std::string gen_out;
  auto* gen_cpr = gen->add_subcommand("cpr", "Two concentric parallel regular n-gons");
  gen_cpr->add_option("--n", cpr_n, "polygon vertex count (>= 3)")->required();
  gen_cpr->add_option("--lambda", cpr_lambda, "aspect ratio (> 1)")->required();
  gen_cpr->add_option("--rotation", cpr_rotation, "rotation in radians");
  gen_cpr->add_option("--inner-side", cpr_inner, "inner polygon side length");
  gen_cpr->add_option("--center-x", cpr_cx, "centre x");
  gen_cpr->add_option("--center-y", cpr_cy, "centre y");
  gen_cpr->add_option("-o,--out", gen_out, "output path (default stdout)");

  int ac_hull = 6, ac_interior = 2;
  std::uint64_t ac_seed = 1;
  auto* gen_ac = gen->add_subcommand(
      "almost-convex", "Hull points on a circle plus interior points");
  gen_ac->add_option("--hull", ac_hull, "points on the hull (>= 3)")->required();
  gen_ac->add_option("--interior", ac_interior, "points strictly inside")->required();
  gen_ac->add_option("--seed", ac_seed, "generator seed");
  gen_ac->add_option("-o,--out", gen_out, "output path (default stdout)");

  // solve
  std::string solve_input, solve_method, solve_out, solve_svg;
  double solve_eps = 0.0;
  int solve_grid_cap = 2500, solve_interior_cap = 4, solve_exact_cap = 11;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("input", solve_input, "instance JSON path")->required();
  solve->add_option("--method", solve_method, "exact | cpr | fptas | mst")
      ->required()
      ->check(CLI::IsMember({"exact", "cpr", "fptas", "mst"}));
  solve->add_option("-o,--out", solve_out, "tree JSON path (default stdout)");
  solve->add_option("--svg", solve_svg, "also render an SVG to this path");
  solve->add_option("--eps", solve_eps, "approximation parameter (fptas)");
  solve->add_option("--max-grid-vertices", solve_grid_cap, "fptas vertex cap");
  solve->add_option("--max-interior", solve_interior_cap,
                    "fptas interior terminal cap");
  solve->add_option("--max-terminals", solve_exact_cap, "exact solver cap");

  // check
  std::string check_tree, check_instance, check_json;
  bool check_oracle = false;
  auto* check = app.add_subcommand("check", "Validate a tree against an instance");
  check->add_option("--tree", check_tree, "tree JSON path")->required();
  check->add_option("--instance", check_instance, "instance JSON path")->required();
  check->add_flag("--oracle", check_oracle, "cross-check against brute force (n <= 6)");
  check->add_option("--json", check_json, "write the JSON report here");

  // bench
  std::string bench_suite, bench_dir = ".";
  std::uint64_t bench_seed = 7;
  int bench_max_n = 10;
  auto* bench = app.add_subcommand("bench", "Reproduce threshold/scaling tables");
  bench->add_option("--suite", bench_suite, "thresholds | scaling | fptas-ratio")
      ->required()
      ->check(CLI::IsMember({"thresholds", "scaling", "fptas-ratio"}));
  bench->add_option("--out-dir", bench_dir, "directory for CSV/markdown tables");
  bench->add_option("--seed", bench_seed, "generator seed");
  bench->add_option("--max-n", bench_max_n, "largest n for the scaling suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/usage
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (gen_cpr->parsed()) {
      const Instance inst = generate_cpr_instance(
          {cpr_n, cpr_lambda, cpr_rotation, {cpr_cx, cpr_cy}, cpr_inner});
      write_output(gen_out, serialize_instance(inst));
      return kExitOk;
    }
    if (gen_ac->parsed()) {
      write_output(gen_out, serialize_instance(
                                gen_almost_convex(ac_hull, ac_interior, ac_seed)));
      return kExitOk;
    }
    if (solve->parsed())
      return cmd_solve(solve_input, solve_method, solve_out, solve_svg,
                       solve_eps, solve_grid_cap, solve_interior_cap,
                       solve_exact_cap);
    if (check->parsed())
      return cmd_check(check_tree, check_instance, check_oracle, check_json);
    if (bench->parsed())
      return cmd_bench(bench_suite, bench_dir, bench_seed, bench_max_n);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCaps;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
