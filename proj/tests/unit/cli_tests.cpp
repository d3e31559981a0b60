#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "opgp/cli/quiver.hpp"
#include "opgp/cli/scenario.hpp"
#include "opgp/cli/toml_lite.hpp"

using namespace opgp;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string error_of(const std::string& text) {
  try {
    (void)parse_scenario(text, "s.toml");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const char* kRing = "[ring]\nkind = \"weyl\"\nvariables = [\"x\", \"y\"]\n";

}  // namespace

TEST_CASE("toml subset") {
  const auto j = parse_toml(R"(# comment
name = "demo"   # trailing
count = 3
ratio = -2.5e-1
flag = true
list = [1, 2,
        3,]   # spans lines
nested = [["a", "b"], ['c\d']]
inline = { a = 1, b = "two" }

[ring]
variables = ["x"]

[[stage]]
op = "first"

[[stage]]
op = "second"
sub.key = 4

[ring.extra]
v = 1
)");
  CHECK(j["name"] == "demo");
  CHECK(j["count"] == 3);
  CHECK(j["count"].is_number_integer());
  CHECK(j["ratio"].get<double>() == -0.25);
  CHECK(j["flag"] == true);
  CHECK(j["list"].size() == 3);
  CHECK(j["nested"][1][0] == "c\\d");
  CHECK(j["inline"]["b"] == "two");
  CHECK(j["stage"].size() == 2);
  CHECK(j["stage"][1]["op"] == "second");
  CHECK(j["stage"][1]["sub"]["key"] == 4);
  CHECK(j["ring"]["extra"]["v"] == 1);
}

TEST_CASE("toml errors carry the line") {
  auto message = [](const char* text) {
    try {
      (void)parse_toml(text, "f.toml");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("a = 1\nb = \n") == "f.toml:2: expected a value");
  CHECK(message("a = 1\na = 2\n").starts_with("f.toml:2: duplicate key"));
  CHECK(message("a = [1, 2\n").starts_with("f.toml:2: unterminated array"));
  CHECK(message("\n\ns = \"open\n").starts_with("f.toml:3: unterminated string"));
  CHECK(message("x = 1 2\n").starts_with("f.toml:1: unexpected"));
  CHECK(message("[t]\n[t]\n").starts_with("f.toml:2: table 't' defined twice"));
  CHECK(message("v = 12abc\n").starts_with("f.toml:1: malformed value"));
}

TEST_CASE("scenario name checking") {
  CHECK(error_of(std::string(kRing) + "[[stage]]\nop = \"kernel\"\ninput = \"B\"\n").find("unknown matrix 'B'") !=
        std::string::npos);
  CHECK(error_of(std::string(kRing) + "[matrices]\nB = [[\"Dx\"]]\n[[stage]]\nop = \"fit\"\nkernel = \"B\"\n"
                                      "points = []\nvalues = []\n")
            .find("'B' is a matrix, expected a kernel") != std::string::npos);
  CHECK(error_of(std::string(kRing) + "[[stage]]\nop = \"transmogrify\"\n").find("unknown stage op") != std::string::npos);
  CHECK(error_of(std::string(kRing) + "[matrices]\nA = [[\"x\", \"y\"], [\"x\"]]\n").find("different lengths") !=
        std::string::npos);
  CHECK(error_of(std::string(kRing) + "[matrices]\nA = [[\"x^\"]]\n").find("matrix A entry (1,1)") != std::string::npos);
  CHECK(error_of("[ring]\nkind = \"free\"\nvariables = [\"x\"]\n").find("kind must be") != std::string::npos);
  CHECK(error_of(std::string(kRing) + "[[stage]]\nop = \"check\"\n[[check]]\nkind = \"coefficient\"\nmodel = \"gp\"\n")
            .find("unknown model 'gp'") != std::string::npos);
  CHECK(error_of(std::string(kRing) + "[[stage]]\nop = \"check\"\n[[check]]\nkind = \"vibes\"\n").find("unknown check kind") !=
        std::string::npos);
}

TEST_CASE("empty pipeline writes nothing") {
  const auto dir = std::filesystem::temp_directory_path() / "opgp_cli_empty";
  std::filesystem::remove_all(dir);
  const RunReport r = run_scenario(parse_scenario(kRing), {dir, nullptr});
  CHECK(r.passed());
  CHECK(r.artifacts.empty());
  CHECK(!std::filesystem::exists(dir));
}

TEST_CASE("reorder, multiply and failing checks") {
  const std::string text = std::string(kRing) + R"(
[matrices]
M = [["x", "Dy"], ["y", "Dx"]]
N = [["Dx"], ["-x"]]

[[stage]]
op = "reorder"
input = "M"
columns = [2, 1]
signs = [1, -1]
output = "R"

[[stage]]
op = "multiply"
inputs = ["M", "N"]
output = "MN"

[[stage]]
op = "check"

[[check]]
name = "swapped"
kind = "columns_up_to_sign"
a = "R"
b = "M"

[[check]]
kind = "columns"
matrix = "R"
expected = 2

[[check]]
kind = "product_zero"
a = "M"
b = "N"
)";
  const RunReport r = run_scenario(parse_scenario(text));
  REQUIRE(r.checks.size() == 3);
  CHECK(!r.checks[0].passed);
  CHECK(r.checks[1].passed);
  CHECK(!r.checks[2].passed);
  CHECK(!r.passed());
  CHECK(format_report(r).starts_with("FAIL swapped\nPASS columns 2: 2 columns\nFAIL"));
}

TEST_CASE("stage failures name the stage") {
  const std::string text = std::string(kRing) + R"(
[matrices]
I = [["1"]]
[[stage]]
op = "kernel"
input = "I"
[[stage]]
op = "fit"
kernel = "K"
points = [[0, 0], [0, 0]]
values = [[1], [1]]
epsilon = 0
)";
  try {
    (void)run_scenario(parse_scenario(text));
    FAIL("expected a stage failure");
  } catch (const StageError& e) {
    CHECK(e.stage() == "#2 fit");
    CHECK(std::string(e.what()).find("smallest pivot") != std::string::npos);
  }
}

TEST_CASE("scenario artifacts are deterministic") {
  const std::string text = std::string(kRing) + R"(
name = "tiny"
[matrices]
A = [["Dx", "Dy"]]
[[stage]]
op = "parametrize"
input = "A"
[[stage]]
op = "kernel"
input = "B"
[[stage]]
op = "fit"
kernel = "K"
points = [[0.25, 0.5]]
values = [[1, 0]]
[[stage]]
op = "grid"
model = "gp"
axes = [[0, 1, 4], [0, 1, 3]]
svg = true
[[stage]]
op = "check"
[[check]]
kind = "constraint"
model = "gp"
operator = "A"
)";
  const auto base = std::filesystem::temp_directory_path() / "opgp_cli_det";
  std::filesystem::remove_all(base);
  const Scenario s = parse_scenario(text);
  const RunReport a = run_scenario(s, {base / "a", nullptr});
  const RunReport b = run_scenario(s, {base / "b", nullptr});
  CHECK(a.passed());
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  CHECK(a.artifacts.size() == 8);
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    CHECK(a.artifacts[i].filename() == b.artifacts[i].filename());
    CHECK(read_file(a.artifacts[i]) == read_file(b.artifacts[i]));
  }
  const std::string csv = read_file(base / "a" / "gp_grid.csv");
  CHECK(csv.starts_with("x1,x2,f1,f2\n0,0,"));
  std::filesystem::remove_all(base);
}

TEST_CASE("quiver SVG") {
  const Table empty = table_from_csv("x1,x2,f1,f2\n");
  const std::string axes_only = quiver_svg(empty);
  CHECK(axes_only.find("class=\"axes\"") != std::string::npos);
  CHECK(axes_only.find("<line") == std::string::npos);

  Table t{{"x1", "x2", "f1", "f2"}, {{0, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}}};
  QuiverOptions o;
  o.marks = {{0.5, 0.5}};
  const std::string svg = quiver_svg(t, o);
  CHECK(svg == quiver_svg(t, o));
  std::size_t lines = 0;
  for (std::size_t p = svg.find("<line"); p != std::string::npos; p = svg.find("<line", p + 1)) ++lines;
  CHECK(lines == 2);
  CHECK(svg.find("class=\"mark\"") != std::string::npos);

  Table sphere{{"x1", "x2", "x3", "f1", "f2", "f3"}, {{1, 0, 0, 0, 1, 0}, {0, 0, 1, 1, 0, 0}}};
  o.marks = {{0, 0, 1}};
  CHECK(quiver_svg(sphere, o).find("class=\"ring\"") != std::string::npos);
  o.project = 'q';
  CHECK_THROWS_AS(quiver_svg(sphere, o), InputError);
  CHECK_THROWS_AS(quiver_svg(Table{{"x1", "f1"}, {}}), InputError);
}
