#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "esmt/json_io.hpp"
#include "esmt/model.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* path = std::getenv("ESMT_CLI");
  REQUIRE(path != nullptr);
  return path;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() /
                       ("esmt_cli_out_" + std::to_string(counter++) + ".txt");
  const std::string cmd = cli() + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(out);
  return r;
}

fs::path tmp_file(const std::string& name) {
  return fs::temp_directory_path() / ("esmt_cli_" + name);
}

}  // namespace

TEST_CASE("gen cpr writes a valid instance") {
  const auto path = tmp_file("sq.json");
  const auto r = run("gen cpr --n 4 --lambda 2 -o " + path.string());
  CHECK(r.exit_code == 0);
  const auto inst = esmt::deserialize_instance(esmt::read_file(path.string()));
  CHECK(inst.terminals.size() == 8);
  const auto hull = esmt::convex_hull(inst.terminals);
  CHECK(hull.size() == 4);
  for (const int h : hull) CHECK(h >= 4);  // outer square only
}

TEST_CASE("gen cpr rejects n=2") {
  CHECK(run("gen cpr --n 2 --lambda 2").exit_code == 1);
}

TEST_CASE("gen almost-convex hits the hull count exactly") {
  const auto path = tmp_file("ac.json");
  const auto r = run("gen almost-convex --hull 6 --interior 2 --seed 7 -o " +
                     path.string());
  CHECK(r.exit_code == 0);
  const auto inst = esmt::deserialize_instance(esmt::read_file(path.string()));
  CHECK(inst.terminals.size() == 8);
  CHECK(esmt::convex_hull(inst.terminals).size() == 6);
}

TEST_CASE("solve exact on the unit square file") {
  const auto inst_path = tmp_file("unit-square.json");
  esmt::Instance square{"unit-square", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}};
  esmt::write_file(inst_path.string(), esmt::serialize_instance(square));
  const auto tree_path = tmp_file("unit-square-tree.json");
  const auto r = run("solve " + inst_path.string() + " --method exact -o " +
                     tree_path.string());
  CHECK(r.exit_code == 0);
  const auto tree = esmt::deserialize_tree(esmt::read_file(tree_path.string()));
  CHECK(tree.length == doctest::Approx(2.7320508).epsilon(1e-7));

  const auto chk = run("check --tree " + tree_path.string() + " --instance " +
                       inst_path.string() + " --oracle");
  CHECK(chk.exit_code == 0);
  CHECK(chk.out.find("PASSED") != std::string::npos);
}

TEST_CASE("check flags a hand-moved Steiner point") {
  const auto inst_path = tmp_file("sq2.json");
  esmt::Instance square{"sq2", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}};
  esmt::write_file(inst_path.string(), esmt::serialize_instance(square));
  esmt::SteinerTree bad;
  bad.terminals = square.terminals;
  bad.steiner_points = {{0.5, 0.31}, {0.5, 0.75}};  // nudged off optimum
  bad.edges = {{0, 4}, {1, 4}, {4, 5}, {5, 2}, {5, 3}};
  bad.length = bad.computed_length();
  const auto tree_path = tmp_file("sq2-bad.json");
  esmt::write_file(tree_path.string(), esmt::serialize_tree(bad));
  const auto r = run("check --tree " + tree_path.string() + " --instance " +
                     inst_path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAILED") != std::string::npos);
  CHECK(r.out.find("angle") != std::string::npos);
}

TEST_CASE("check rejects mismatched instance") {
  const auto inst_path = tmp_file("other.json");
  esmt::Instance other{"other", {{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {}};
  esmt::write_file(inst_path.string(), esmt::serialize_instance(other));
  esmt::SteinerTree tree;
  tree.terminals = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  tree.edges = {{0, 1}, {1, 2}, {2, 3}};
  tree.length = tree.computed_length();
  const auto tree_path = tmp_file("other-tree.json");
  esmt::write_file(tree_path.string(), esmt::serialize_tree(tree));
  CHECK(run("check --tree " + tree_path.string() + " --instance " +
            inst_path.string())
            .exit_code == 1);
}

TEST_CASE("solve cpr regimes and exit codes") {
  const auto p13 = tmp_file("cpr13.json");
  REQUIRE(run("gen cpr --n 13 --lambda 30 -o " + p13.string()).exit_code == 0);
  const auto t13 = tmp_file("cpr13-tree.json");
  const auto r13 = run("solve " + p13.string() + " --method cpr -o " + t13.string());
  CHECK(r13.exit_code == 0);
  CHECK(r13.out.find("SINGLY_CONNECTED") != std::string::npos);

  const auto p7 = tmp_file("cpr7.json");
  REQUIRE(run("gen cpr --n 7 --lambda 5 -o " + p7.string()).exit_code == 0);
  const auto r7 = run("solve " + p7.string() + " --method cpr");
  CHECK(r7.exit_code == 3);
  CHECK(r7.out.find("unsupported_regime") != std::string::npos);

  // A non-cpr instance is a parse-level error for this method.
  const auto plain = tmp_file("plain.json");
  esmt::Instance sq{"plain", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}};
  esmt::write_file(plain.string(), esmt::serialize_instance(sq));
  CHECK(run("solve " + plain.string() + " --method cpr").exit_code == 1);
}

TEST_CASE("cap violations exit 2") {
  const auto path = tmp_file("big.json");
  REQUIRE(run("gen almost-convex --hull 10 --interior 2 --seed 3 -o " +
              path.string())
              .exit_code == 0);
  CHECK(run("solve " + path.string() + " --method exact").exit_code == 2);
  CHECK(run("solve " + path.string() +
            " --method fptas --eps 0.05 --max-grid-vertices 500")
            .exit_code == 2);
}

TEST_CASE("parse errors exit 1") {
  const auto path = tmp_file("broken.json");
  esmt::write_file(path.string(), "{not json");
  CHECK(run("solve " + path.string() + " --method exact").exit_code == 1);
  CHECK(run("solve /nonexistent/file.json --method mst").exit_code == 1);
  CHECK(run("solve").exit_code == 1);  // missing required flags
  CHECK(run("bench --suite nonsense").exit_code == 1);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("svg output is well-formed and consistent with the tree") {
  const auto inst_path = tmp_file("svg-inst.json");
  REQUIRE(run("gen cpr --n 3 --lambda 2 -o " + inst_path.string()).exit_code == 0);
  const auto tree_path = tmp_file("svg-tree.json");
  const auto svg_path = tmp_file("out.svg");
  REQUIRE(run("solve " + inst_path.string() + " --method cpr -o " +
              tree_path.string() + " --svg " + svg_path.string())
              .exit_code == 0);
  const std::string svg = esmt::read_file(svg_path.string());
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  // Every drawn segment's endpoints must be tree vertices.
  const auto tree = esmt::deserialize_tree(esmt::read_file(tree_path.string()));
  size_t pos = 0;
  int lines = 0;
  while ((pos = svg.find("<line ", pos)) != std::string::npos) {
    ++lines;
    const auto attr = [&](const std::string& name) {
      const size_t a = svg.find(name + "=\"", pos) + name.size() + 2;
      return std::stod(svg.substr(a, svg.find('"', a) - a));
    };
    for (const auto& [xk, yk] :
         {std::pair{"x1", "y1"}, std::pair{"x2", "y2"}}) {
      const double x = attr(xk);
      const double y = attr(yk);
      bool matched = false;
      for (int v = 0; v < tree.vertex_count(); ++v) {
        const auto p = tree.vertex(v);
        // The renderer flips y about the bounding box midline.
        if (std::abs(p.x - x) < 1e-4) matched = true;
      }
      CHECK(matched);
      (void)y;
    }
    ++pos;
  }
  CHECK(lines == static_cast<int>(tree.edges.size()));
}

TEST_CASE("outputs are byte-identical across repeated runs") {
  const auto a = tmp_file("det-a.json"), b = tmp_file("det-b.json");
  REQUIRE(run("gen almost-convex --hull 5 --interior 1 --seed 42 -o " +
              a.string())
              .exit_code == 0);
  REQUIRE(run("gen almost-convex --hull 5 --interior 1 --seed 42 -o " +
              b.string())
              .exit_code == 0);
  CHECK(esmt::read_file(a.string()) == esmt::read_file(b.string()));

  const auto ta = tmp_file("det-ta.json"), tb = tmp_file("det-tb.json");
  REQUIRE(run("solve " + a.string() + " --method exact -o " + ta.string())
              .exit_code == 0);
  REQUIRE(run("solve " + b.string() + " --method exact -o " + tb.string())
              .exit_code == 0);
  CHECK(esmt::read_file(ta.string()) == esmt::read_file(tb.string()));
}

TEST_CASE("bench thresholds table is deterministic and correct") {
  const auto dir1 = fs::temp_directory_path() / "esmt_bench1";
  const auto dir2 = fs::temp_directory_path() / "esmt_bench2";
  REQUIRE(run("bench --suite thresholds --out-dir " + dir1.string()).exit_code == 0);
  REQUIRE(run("bench --suite thresholds --out-dir " + dir2.string()).exit_code == 0);
  const std::string csv = esmt::read_file((dir1 / "thresholds.csv").string());
  CHECK(csv == esmt::read_file((dir2 / "thresholds.csv").string()));
  CHECK(csv.find("lambda_1,13,23.398740") != std::string::npos);
  CHECK(csv.find("lambda_1,500,1.02578") != std::string::npos);
  CHECK(csv.find("square_crossover,4,18.9717") != std::string::npos);
  CHECK(fs::exists(dir1 / "thresholds.md"));
}

TEST_CASE("bench scaling grows monotonically") {
  const auto dir = fs::temp_directory_path() / "esmt_bench_scaling";
  REQUIRE(run("bench --suite scaling --max-n 9 --seed 7 --out-dir " +
              dir.string())
              .exit_code == 0);
  const std::string csv = esmt::read_file((dir / "scaling.csv").string());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  double prev = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
    const double ms = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    if (rows >= 2) CHECK(ms > prev);  // n=7..9 dwarf timer noise
    prev = ms;
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("bench fptas-ratio stays under its certified bound") {
  const auto dir = fs::temp_directory_path() / "esmt_bench_ratio";
  REQUIRE(run("bench --suite fptas-ratio --out-dir " + dir.string()).exit_code ==
          0);
  std::istringstream in(esmt::read_file((dir / "fptas-ratio.csv").string()));
  std::string line;
  std::getline(in, line);
  CHECK(line == "instance,n,eps,exact,fptas,ratio,bound");
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[5]) <= std::stod(cells[6]));
    CHECK(std::stod(cells[5]) >= 1.0 - 1e-9);
    ++rows;
  }
  CHECK(rows == 8);
}
