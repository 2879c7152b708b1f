#include <doctest.h>

#include "frobreal/manifold.hpp"
#include "frobreal/serialize.hpp"

using namespace frobreal;

namespace {

const char* const kSpecs[] = {"sphere:1", "sphere:2", "sphere:3", "cp:2", "surface:0", "surface:2",
                              "connsum(cp:2,cp:2)"};

std::vector<std::pair<std::string, bool>> verdicts(const AxiomReport& r) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& v : r.axioms) out.emplace_back(v.name, v.pass);
  out.emplace_back("center", r.center.pass);
  return out;
}

}  // namespace

TEST_CASE("structure round trip") {
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(5)}) {
    for (const char* spec : kSpecs) {
      CAPTURE(spec);
      auto s = build_structure(parse_spec(spec), f);
      std::string text = dump(to_json(s));
      auto back = structure_from_json(parse_json(text));
      CHECK(structure_equal(s, back));
      CHECK(dump(to_json(back)) == text);
      CHECK(verdicts(check_axioms(back)) == verdicts(check_axioms(s)));
    }
  }
}

TEST_CASE("sphere coproduct as JSON") {
  auto s = build_structure(parse_spec("sphere:2"), FieldSpec::rationals());
  Json d = to_json(s.delta());
  CHECK(d["source_arity"] == 1);
  CHECK(d["target_arity"] == 2);
  CHECK(d["degree"] == 2);
  Json x_entry = Json::parse(R"([["x"], [["x", "x"], "1/1"]])");
  bool found = false;
  for (const auto& e : d["entries"]) found = found || e == x_entry;
  CHECK(found);
  Json space = to_json(*s.space());
  CHECK(space == Json::parse(R"({"field": {"kind": "rationals"}, "basis": [["1", 0], ["x", 2]]})"));
}

TEST_CASE("prime field coefficients are residues") {
  auto s = build_structure(parse_spec("surface:1"), FieldSpec::prime(3));
  std::string text = to_json(s.mu()).dump();
  CHECK(text.find("\"2\"") != std::string::npos);
  CHECK(text.find('/') == std::string::npos);
}

TEST_CASE("interpretation round trip") {
  auto s = build_structure(parse_spec("cp:2"), FieldSpec::rationals());
  auto i = s.interpretation();
  auto back = interpretation_from_json(to_json(i));
  CHECK(interpretation_equal(i, back));
  CHECK(back.signature() == i.signature());
}

TEST_CASE("diagram JSON") {
  Signature sig = frob_signature(2);
  for (const auto& ax : axiom_diagrams(2)) {
    CAPTURE(ax.name);
    Json j = to_json(ax.lhs);
    Diagram back = diagram_from_json(j, sig);
    CHECK(to_json(back) == j);
    CHECK(back.to_string() == ax.lhs.to_string());
  }
  Json assoc = Json::parse(R"(["vcomp", ["gen", "mu"], ["hcomp", ["id", 1], ["gen", "mu"]]])");
  Diagram d = diagram_from_json(assoc, sig);
  CHECK(d.source_arity() == 3);
  CHECK(d.target_arity() == 1);

  auto path_of = [&](const char* text) {
    try {
      diagram_from_json(Json::parse(text), sig);
    } catch (const DiagramError& e) {
      return e.path();
    }
    return std::string("no error");
  };
  CHECK(path_of(R"(["vcomp", ["gen", "mu"], ["hcomp", ["id", 1], ["gen", "nope"]]])") == "root.lower.right");
  CHECK(path_of(R"(["vcomp", ["gen", "mu"], ["gen", "mu"]])") == "root");
  CHECK(path_of(R"(["hcomp", ["perm", [0, 0]], ["id", 1]])") == "root.left");
  CHECK(path_of(R"(["vcomp", ["id", 1], ["twist"]])") == "root.lower");
  CHECK(path_of(R"(["perm", [1, 0]])") == "no error");
}

TEST_CASE("malformed documents") {
  auto s = build_structure(parse_spec("sphere:2"), FieldSpec::rationals());
  Json j = to_json(s);

  auto fails_at = [](const Json& doc) {
    try {
      structure_from_json(doc);
    } catch (const FormatError& e) {
      return e.path();
    }
    return std::string("no error");
  };

  Json a = j;
  a.erase("eps");
  CHECK(fails_at(a) == "document");
  Json b = j;
  b["mu"]["entries"][0][0][0] = "y";
  CHECK(fails_at(b) == "mu.entries[0][0][0]");
  Json c = j;
  c["delta"]["entries"][0][1][1] = "one";
  CHECK(fails_at(c) == "delta.entries[0][1][1]");
  Json d = j;
  d["eta"]["degree"] = 1;
  CHECK(fails_at(d) == "eta.entries");
  Json e = j;
  e["space"]["field"] = Json::parse(R"({"kind": "prime", "characteristic": 4})");
  CHECK(fails_at(e) == "field.characteristic");

  CHECK_THROWS_AS(parse_json("{\"space\": "), ParseError);
  try {
    parse_json("[1, 2,, 3]");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 7);
  }
}

TEST_CASE("report JSON carries every count") {
  auto r = realization_count_report(parse_spec("cp:2"), 3);
  Json j = to_json(r);
  CHECK(j["orders"]["aut_k"] == 8);
  CHECK(j["orders"]["aut_alg"] == 2);
  CHECK(j["coset_count"]["algebra"] == 4);
  CHECK(j["invariants_hold"] == true);
  CHECK(j["strict_equality"]["frobenius_equals_algebra"] == r.frobenius_equals_algebra);
  CHECK(dump(j) == dump(to_json(realization_count_report(parse_spec("cp:2"), 3))));
}
