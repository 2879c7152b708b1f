#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "frobreal/cli.hpp"
#include "frobreal/errors.hpp"

using namespace frobreal;

namespace {

RunResult go(Mode mode, const std::string& spec, const std::string& field, bool json = false) {
  RunConfig c;
  c.mode = mode;
  c.spec = spec;
  c.field = field;
  c.json = json;
  return run(c);
}

}  // namespace

TEST_CASE("field parsing") {
  CHECK(parse_field("rationals").is_rationals());
  CHECK(parse_field("q=7").characteristic() == 7);
  CHECK_THROWS_AS(parse_field("q=9"), ParseError);
  CHECK_THROWS_AS(parse_field("q="), ParseError);
  CHECK_THROWS_AS(parse_field("F5"), ParseError);
  try {
    parse_field("q=1x");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("exit statuses") {
  CHECK(go(Mode::report, "cp:2", "q=3").status == 0);
  CHECK(go(Mode::check, "surface:2", "rationals").status == 0);
  auto bad = go(Mode::build, "connsum(sphere:2,cp:2)", "rationals");
  CHECK(bad.status == 2);
  CHECK(bad.error.find("top degree mismatch 2") != std::string::npos);
  CHECK(go(Mode::aut, "cp:2", "rationals").status == 2);
  CHECK(go(Mode::report, "", "q=3").status == 2);
  RunConfig c;
  c.mode = Mode::aut;
  c.spec = "surface:2";
  c.field = "q=5";
  c.budget = 10;
  auto b = run(c);
  CHECK(b.status == 3);
  CHECK(b.error.find("budget of 10") != std::string::npos);
}

TEST_CASE("report table and JSON") {
  auto t = go(Mode::report, "cp:2", "q=3");
  CHECK(t.output.find("coset count (algebra) = 4\n") != std::string::npos);
  CHECK(t.output.find("euler characteristic = 3\n") != std::string::npos);
  CHECK(t.output.find("specialness lambda0 = 0\n") != std::string::npos);
  auto j = go(Mode::report, "cp:2", "q=3", true);
  CHECK(j.output.find("\"coset_count\"") != std::string::npos);
  CHECK(go(Mode::report, "cp:2", "q=3", true).output == j.output);
}

TEST_CASE("build output feeds check") {
  for (const char* field : {"rationals", "q=5"}) {
    auto built = go(Mode::build, "connsum(cp:2,cp:2)", field);
    REQUIRE(built.status == 0);
    auto path = std::filesystem::temp_directory_path() / "frobreal_cli_roundtrip.json";
    std::ofstream(path) << built.output;
    RunConfig c;
    c.mode = Mode::check;
    c.input_path = path.string();
    auto from_file = run(c);
    auto direct = go(Mode::check, "connsum(cp:2,cp:2)", field);
    std::filesystem::remove(path);
    CHECK(from_file.status == 0);
    CHECK(from_file.output == direct.output);
  }
  RunConfig missing;
  missing.mode = Mode::check;
  missing.input_path = "/nonexistent/structure.json";
  CHECK(run(missing).status == 2);
}

TEST_CASE("aut and orbit modes") {
  auto a = go(Mode::aut, "sphere:2", "q=3");
  CHECK(a.status == 0);
  CHECK(a.output.find("|Aut_alg| = 2\n") != std::string::npos);
  CHECK(a.output.find("algebra automorphism = [[1,0],[0,2]]\n") != std::string::npos);
  auto o = go(Mode::orbit, "cp:2", "q=5");
  CHECK(o.status == 0);
  CHECK(o.output.find("orbit size (algebra) = 16\n") != std::string::npos);
}
