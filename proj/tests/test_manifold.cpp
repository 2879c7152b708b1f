#include <functional>
#include <map>

#include "doctest.h"
#include "frobreal/errors.hpp"
#include "frobreal/manifold.hpp"

using namespace frobreal;

namespace {

std::vector<std::pair<std::string, int>> labelled_basis(const FrobeniusStructure& s) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& b : s.space()->basis()) out.emplace_back(b.label, b.degree);
  return out;
}

// Product table keyed by labels, for basis-order-free comparison.
std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::string, std::string>>> product_table(
    const FrobeniusStructure& s, const std::function<std::string(const std::string&)>& rename) {
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::string, std::string>>> t;
  const auto& sp = *s.space();
  for (const auto& e : s.mu().entries()) {
    auto in = sp.tuple_labels(e.in, 2);
    t[{rename(in[0]), rename(in[1])}].emplace_back(rename(sp.label(e.out)), e.coeff.to_string());
  }
  return t;
}

}  // namespace

TEST_CASE("constructors") {
  auto q = FieldSpec::rationals();
  auto s2 = build_structure(ManifoldSpec::sphere(2), q);
  CHECK(s2.space()->dim() == 2);
  CHECK(s2.coproduct_degree() == 2);

  auto cs = build_structure(parse_spec("connsum(cp:2,cp:2)"), q);
  CHECK(labelled_basis(cs) == std::vector<std::pair<std::string, int>>{{"1", 0}, {"L.x", 2}, {"R.x", 2}, {"w", 4}});
  const auto& sp = *cs.space();
  auto prod = [&](std::size_t i, std::size_t j) { return cs.mu().apply({i, j}); };
  REQUIRE(prod(1, 1).size() == 1);
  CHECK(prod(1, 1)[0].first == 3);
  CHECK(prod(2, 2)[0].first == 3);
  CHECK(prod(1, 2).empty());
  CHECK(prod(2, 1).empty());
  CHECK(sp.dims_by_degree() == std::map<int, std::size_t>{{0, 1}, {2, 2}, {4, 1}});

  auto t = build_structure(ManifoldSpec::surface(1), q);
  CHECK(labelled_basis(t) == std::vector<std::pair<std::string, int>>{{"1", 0}, {"a1", 1}, {"b1", 1}, {"w", 2}});
  CHECK(t.mu().coefficient(t.space()->encode({1, 2}), 3).is_one());
  CHECK(t.mu().coefficient(t.space()->encode({2, 1}), 3) == Scalar::from_integer(q, -1));
  CHECK(t.mu().apply({1, 1}).empty());
  CHECK(t.mu().apply({2, 2}).empty());

  auto cp3 = build_structure(ManifoldSpec::cp(3), q);
  CHECK(cp3.space()->label(3) == "x^3");
  CHECK_THROWS(ManifoldSpec::sphere(0));
  CHECK_THROWS(ManifoldSpec::cp(0));
  CHECK_THROWS(ManifoldSpec::surface(-1));
}

TEST_CASE("euler characteristics") {
  for (const char* text : {"sphere:1", "sphere:2", "sphere:3", "sphere:4", "cp:1", "cp:2", "cp:3", "surface:0",
                           "surface:1", "surface:2", "connsum(cp:2,cp:2)", "connsum(sphere:3,sphere:3)",
                           "connsum(surface:1,surface:2)"}) {
    auto spec = parse_spec(text);
    auto s = build_structure(spec, FieldSpec::rationals());
    CHECK_MESSAGE(euler_characteristic(*s.space()) == euler_characteristic_formula(spec), text);
  }
  CHECK(euler_characteristic(*build_structure(parse_spec("connsum(cp:2,cp:2)"), FieldSpec::rationals()).space()) ==
        4);
  CHECK(euler_characteristic_formula(ManifoldSpec::surface(3)) == -4);
}

TEST_CASE("reduction to prime fields") {
  auto s2 = build_structure(ManifoldSpec::sphere(2), FieldSpec::prime(3));
  CHECK(check_axioms(s2).all_pass());
  auto h = handle_element_check(s2, 2, top_class(s2));
  CHECK(h.pass);
  CHECK(h.handle_element.coefficient(0, 1) == Scalar::from_integer(FieldSpec::prime(3), 2));

  auto cp2 = build_structure(ManifoldSpec::cp(2), FieldSpec::prime(2));
  auto hc = handle_element_check(cp2, 3, top_class(cp2));
  CHECK(hc.pass);
  CHECK(hc.handle_element.coefficient(0, 2).is_one());

  auto t = build_structure(ManifoldSpec::surface(1), FieldSpec::prime(2));
  CHECK(check_axioms(t).all_pass());
  CHECK(handle_element_check(t, 0, top_class(t)).pass);
  CHECK(t.mu().apply({1, 1}).empty());
  CHECK_FALSE(build_warnings(ManifoldSpec::surface(1), FieldSpec::prime(2)).empty());
  CHECK(build_warnings(ManifoldSpec::surface(1), FieldSpec::prime(3)).empty());
  CHECK(build_warnings(ManifoldSpec::cp(2), FieldSpec::prime(2)).empty());

  auto line = make_space({{"e", 0}}, FieldSpec::rationals());
  MultiOp::Builder mu(line, 2, 1, 0), eta(line, 0, 1, 0), delta(line, 1, 2, 0), eps(line, 1, 0, 0);
  mu.add({0, 0}, {0}, 1);
  eta.add({}, {0}, 1);
  delta.add(0, 0, Scalar::parse(FieldSpec::rationals(), "1/3"));
  eps.add({0}, {}, 3);
  FrobeniusStructure s(line, mu.build(), eta.build(), delta.build(), eps.build(), 0);
  CHECK_THROWS_WITH_AS(reduce_mod_p(s, 3), doctest::Contains("degrees 0 x 0"), DegenerateError);
  CHECK(reduce_mod_p(s, 5).delta().coefficient(0, 0) == Scalar::from_integer(FieldSpec::prime(5), 2));
}

TEST_CASE("connected sum is symmetric up to relabeling") {
  auto ab = build_structure(parse_spec("connsum(cp:2,sphere:4)"), FieldSpec::rationals());
  auto ba = build_structure(parse_spec("connsum(sphere:4,cp:2)"), FieldSpec::rationals());
  auto swap = [](const std::string& l) {
    if (l.rfind("L.", 0) == 0) return "R." + l.substr(2);
    if (l.rfind("R.", 0) == 0) return "L." + l.substr(2);
    return l;
  };
  auto same = [](const std::string& l) { return l; };
  CHECK(product_table(ab, swap) == product_table(ba, same));
}

TEST_CASE("spec parsing") {
  CHECK(parse_spec("sphere:3").to_string() == "sphere:3");
  auto c = parse_spec(" connsum( cp : 2 ,\tcp:2 ) ");
  CHECK(c.kind() == ManifoldSpec::Kind::connsum);
  CHECK(c.left().parameter() == 2);
  CHECK(c.to_string() == "connsum(cp:2,cp:2)");
  CHECK_THROWS_WITH_AS(parse_spec("connsum(sphere:2,cp:2)"), doctest::Contains("top degree mismatch 2≠4"),
                       ParseError);
  try {
    parse_spec("sphere:x");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
  }
  try {
    parse_spec("sphere:0");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
  }
  CHECK_THROWS_AS(parse_spec("torus:1"), ParseError);
  CHECK_THROWS_AS(parse_spec("cp:2 junk"), ParseError);
  CHECK_THROWS_AS(parse_spec("connsum(cp:2"), ParseError);
  CHECK_THROWS_AS(parse_spec("surface:99999999"), ParseError);
}

TEST_CASE("axiom suite over the rationals") {
  for (const char* text : {"sphere:1", "sphere:2", "sphere:3", "sphere:4", "cp:1", "cp:2", "cp:3", "surface:0",
                           "surface:1", "surface:2", "connsum(cp:2,cp:2)"}) {
    auto s = build_structure(parse_spec(text), FieldSpec::rationals(), {true, false});
    auto r = check_axioms(s);
    CHECK_MESSAGE(r.all_pass(), text);
    for (const auto& a : r.axioms) CHECK_MESSAGE(a.pass, text << " " << a.name);
  }
}
