#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sphtrop/cli.hpp"
#include "sphtrop/job.hpp"
#include "sphtrop/output.hpp"

using namespace sphtrop;
using oracle::q;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sphtrop_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("job parsing") {
  const Job job = parse_job(
      "# comment\n"
      "mode: family-sweep\n"
      "space: GL 2   # trailing comment\n"
      "family:\n"
      "  1, s1;\n"
      "  s1^2, s2\n"
      "box: -3:3,-2:2\n");
  CHECK(job.mode == "family-sweep");
  CHECK(job.require("space") == "GL 2");
  CHECK(job.require("family") == "1, s1;\ns1^2, s2");
  CHECK(job.line_of("box") == 7);

  auto line_of_error = [](const std::string& text) {
    try {
      parse_job(text);
    } catch (const JobError& e) {
      return e.line();
    }
    return std::size_t(999);
  };
  CHECK(line_of_error("mode: point\ncolour: red\n") == 2);
  CHECK(line_of_error("mode: point\nmode: cone\n") == 2);
  CHECK(line_of_error("mode: dance\n") == 1);
  CHECK(line_of_error("space: GL 2\n") == 0);
  CHECK(line_of_error("mode: point\n  indented\n") == 2);
  CHECK(line_of_error("mode: point\nspace\n") == 2);
}

TEST_CASE("box, tuple and list helpers") {
  CHECK(parse_box("-4:4") == std::vector<std::pair<int, int>>{{-4, 4}});
  CHECK(parse_box("-1:2, 0:0") == std::vector<std::pair<int, int>>{{-1, 2}, {0, 0}});
  CHECK_THROWS(parse_box("3:1"));
  CHECK_THROWS(parse_box("a:b"));
  CHECK(parse_tuple("2, 1/2 -3") == std::vector<Rational>{q(2), q(1, 2), q(-3)});
  CHECK(split_list("a; b\nc;;") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("val") {
  const auto r = run({"val", "--space", "GL 2", "--matrix", "t^3, 0; 0, t"});
  CHECK(r.code == 0);
  CHECK(r.out == "(3, 1)\n");
  CHECK(run({"val", "--space", "PUNCTURED 2", "--vector", "t^2, t^-1/2"}).out == "(-1)\n");
  const auto json = output::Json::parse(run({"val", "--space", "SL 2", "--matrix", "t, 0; 0, t^-1", "--format", "json"}).out);
  CHECK(json["command"] == "val");
  CHECK(json["coords"] == output::Json::array({"1"}));
}

TEST_CASE("exit codes") {
  auto parse_error = run({"val", "--space", "GL 2", "--matrix", "t, 1; 1, q"});
  CHECK(parse_error.code == cli::kInputError);
  CHECK(parse_error.err.find("offset 9") != std::string::npos);

  auto exhausted = run({"val", "--space", "TORUS 1", "--vector", "1/(1-t) - 1/(1-t)"});
  CHECK(exhausted.code == cli::kPrecisionExhausted);
  CHECK(exhausted.err.find("--precision") != std::string::npos);

  CHECK(run({"val", "--space", "GL 2", "--matrix", "1, 1; 1, 1"}).code == cli::kInputError);
  CHECK(run({"val", "--space", "GL 3", "--matrix", "1, 0; 0, 1"}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"sample", "--space", "GL 2", "--family", "1, s1; s1^2, s2", "--box", "1:0"}).code == cli::kInputError);
  CHECK(run({"cone", "--space", "GL 2", "--coords", "1"}).code == cli::kInputError);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("job files and inline overrides") {
  const auto path = write_file("point.job", "mode: point\nspace: GL 2\nmatrix: t^3, 0; 0, t\n");
  CHECK(run({"val", path}).out == "(3, 1)\n");
  CHECK(run({"val", path, "--matrix", "t^5, 0; 0, 1"}).out == "(5, 0)\n");
  CHECK(run({"snf", path}).code == 0);
  const auto mismatch = run({"cone", path});
  CHECK(mismatch.code == cli::kInputError);
  CHECK(mismatch.err.find("line 1") != std::string::npos);

  const auto undeclared = write_file("undeclared.job",
                                     "mode: family-sweep\nspace: GL 2\nparameters: s1\nfamily: 1, s1; s1^2, s2\n");
  const auto r = run({"sample", undeclared});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("s2") != std::string::npos);
}

TEST_CASE("snf") {
  const auto r = run({"snf", "--matrix", "t^2, 1; t^-1, t^3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cross-check: agree") != std::string::npos);
  CHECK(r.out.find("D = 1, 0; 0, t^-1") != std::string::npos);
  const auto json = output::Json::parse(run({"snf", "--matrix", "1, t^5; t^-2, 0", "--format", "json"}).out);
  CHECK(json["smith"] == output::Json::array({"5", "-2"}));
  CHECK(json["agree"] == true);
}

TEST_CASE("check") {
  CHECK(run({"check", "--space", "GL 2", "--generators", "x[1][1] - 1", "--matrix", "t, 0; 0, 1"}).out ==
        "Violated: generator 1 has valuation 0\n");
  CHECK(run({"check", "--space", "GL 2", "--generators", "x[2][2]", "--matrix", "1 + t^2, t^2; t^2, 0"})
            .out.rfind("OnVariety", 0) == 0);
}

TEST_CASE("horn") {
  const auto r = run({"horn", "enumerate", "4", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("{1}|{4}|{4}\n") != std::string::npos);
  CHECK(r.out.find("{2}|{3}|{4}\n") != std::string::npos);
  CHECK(run({"horn", "--query", "1 0 0 -1 | 1 0 0 -1 | 0 0 0 0"}).out == "true\n");
  CHECK(run({"horn", "--query", "1 | 1 | 3", "--rep", "SL 2"}).out == "false\n");
  CHECK(run({"horn", "enumerate", "4"}).code == cli::kInputError);
}

TEST_CASE("cone and classify") {
  CHECK(run({"cone", "--space", "SL 3", "--coords", "5 -3"}).out == "false\n");
  CHECK(run({"cone", "--space", "PGL 3", "--coords", "2, 1"}).out == "true\n");
  CHECK(run({"classify", "--generator", "x + y - 1"}).out == "RayMinus\n");
  CHECK(run({"classify", "--generator", "x^2 - y"}).out == "FullCone\n");
  CHECK(run({"classify", "--generator", "0"}).code == cli::kInputError);
}

TEST_CASE("sample CSV of the line gives two rays") {
  const auto r = run({"sample", "--space", "GL 2", "--family", "s1 + 1, s1; s1, 0", "--box", "-4:4", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto cloud = output::read_csv(r.out);
  std::vector<trop::TropPoint> pts;
  for (const auto& p : cloud.points) pts.push_back({cloud.space, p});
  const auto closure = trop::ray_closure(pts);
  std::vector<std::vector<Rational>> gens;
  for (const auto& g : closure) gens.push_back(g.coords);
  CHECK(gens == std::vector<std::vector<Rational>>{{q(-1), q(-1)}, {q(0), q(0)}, {q(1), q(0)}});
}

TEST_CASE("deterministic output") {
  const std::vector<std::string> args = {"sample", "--space", "PGL 3", "--family", "s1, 1, 0; 0, s2, 1; 1, 0, 1",
                                         "--box", "-2:2", "--seed", "42"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(threaded).out == a.out);
  auto other_seed = args;
  other_seed[8] = "43";
  const auto c = output::Json::parse(run(other_seed).out);
  CHECK(c["metadata"]["seed"] == 43);
}

TEST_CASE("plot reproduces from CSV") {
  const auto csv = scratch("cloud.csv").string();
  const auto svg1 = scratch("cloud1.svg").string();
  const auto svg2 = scratch("cloud2.svg").string();
  REQUIRE(run({"sample", "--space", "GL 2", "--family", "1, s1; s1^2, s2", "--box", "-3:3", "--format", "csv", "--out",
               csv})
              .code == 0);
  REQUIRE(run({"plot", csv, "--out", svg1}).code == 0);
  REQUIRE(run({"plot", csv, "--out", svg2}).code == 0);
  const std::string a = read_file(svg1);
  CHECK(a == read_file(svg2));
  CHECK(a == output::render_svg(output::read_csv(read_file(csv))));
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("stroke-dasharray") != std::string::npos);

  const auto torus = write_file("torus.csv", "# space=TORUS 3\nalpha1,alpha2,alpha3\n1,2,3\n");
  CHECK(run({"plot", torus}).code == cli::kInputError);
}

TEST_CASE("csv round trip") {
  const trop::GroupSpace gl2(trop::SpaceKind::GL, 2);
  const std::vector<std::vector<Rational>> pts = {{q(1, 2), q(-3)}, {q(0), q(0)}};
  const auto text = output::points_csv(gl2, pts);
  CHECK(text == "# space=GL 2\nalpha1,alpha2\n1/2,-3\n0,0\n");
  const auto cloud = output::read_csv(text);
  CHECK(cloud.space == gl2);
  CHECK(cloud.points == pts);
  CHECK_THROWS(output::read_csv("alpha1\n1\n"));
  CHECK_THROWS(output::read_csv("# space=GL 2\nalpha1,alpha2\n1\n"));
}
