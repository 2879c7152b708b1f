#include <random>

#include "doctest.h"
#include "frobreal/errors.hpp"
#include "frobreal/prop.hpp"
#include "support.hpp"

using namespace frobreal;
using namespace testing_support;

namespace {

Signature frob_sig(int m) {
  return Signature({{"mu", 2, 1, 0}, {"eta", 0, 1, 0}, {"delta", 1, 2, m}, {"eps", 1, 0, -m}});
}

Interpretation sphere2(const FieldSpec& f) {
  auto s = sphere_space(2, f);
  MultiOp::Builder mu(s, 2, 1, 0), eta(s, 0, 1, 0), delta(s, 1, 2, 2), eps(s, 1, 0, -2);
  mu.add({0, 0}, {0}, 1).add({0, 1}, {1}, 1).add({1, 0}, {1}, 1);
  eta.add({}, {0}, 1);
  delta.add({0}, {0, 1}, 1).add({0}, {1, 0}, 1).add({1}, {1, 1}, 1);
  eps.add({1}, {}, 1);
  return Interpretation(s, frob_sig(2),
                        {{"mu", mu.build()}, {"eta", eta.build()}, {"delta", delta.build()}, {"eps", eps.build()}});
}

MultiOp diag_op(const SpacePtr& s, const std::vector<long>& d) {
  MultiOp::Builder b(s, 1, 1, 0);
  for (std::size_t i = 0; i < d.size(); ++i) b.add({i}, {i}, d[i]);
  return b.build();
}

Matrix tensor_oracle(const MultiOp& f, const MultiOp& g) {
  const auto& s = *f.space();
  Matrix k = kron(f.to_matrix(), g.to_matrix());
  for (TupleIndex in = 0; in < k.cols(); ++in) {
    int du = s.tuple_degree(in / s.tuple_count(g.source_arity()), f.source_arity());
    if ((g.degree() * du) % 2 != 0)
      for (std::size_t r = 0; r < k.rows(); ++r) k(r, in) = -k(r, in);
  }
  return k;
}

// Dense evaluation used as an oracle for the sparse evaluator.
Matrix dense_eval(const Diagram& d, const Interpretation& i) {
  switch (d.kind()) {
    case Diagram::Kind::gen:
      return i.at(d.name()).to_matrix();
    case Diagram::Kind::id:
      return Matrix::identity(i.space()->tuple_count(d.source_arity()), i.space()->field());
    case Diagram::Kind::perm:
      return permutation_op(d.images(), i.space()).to_matrix();
    case Diagram::Kind::vcomp:
      return dense_eval(d.first(), i) * dense_eval(d.second(), i);
    case Diagram::Kind::hcomp:
      return tensor_oracle(evaluate(d.first(), i), evaluate(d.second(), i));
  }
  return Matrix(0, 0, i.space()->field());
}

Diagram random_diagram(std::mt19937& rng, const Signature& sig, unsigned target_source, int depth) {
  std::uniform_int_distribution<int> pick(0, 3);
  int choice = depth <= 0 ? 0 : pick(rng);
  if (choice == 0) {
    if (target_source == 2) return Diagram::gen(sig, "mu");
    if (target_source == 1) return rng() % 2 ? Diagram::gen(sig, "delta") : Diagram::gen(sig, "eps");
    return Diagram::gen(sig, "eta");
  }
  if (choice == 1 && target_source >= 2) return Diagram::hcomp(random_diagram(rng, sig, 1, depth - 1),
                                                              random_diagram(rng, sig, target_source - 1, depth - 1));
  if (choice == 2 && target_source == 2) return Diagram::vcomp(random_diagram(rng, sig, 2, depth - 1), Diagram::perm({1, 0}));
  auto lower = random_diagram(rng, sig, target_source, depth - 1);
  if (lower.target_arity() == 0 || lower.target_arity() > 2) return lower;
  return Diagram::vcomp(random_diagram(rng, sig, lower.target_arity(), depth - 1), lower);
}

}  // namespace

TEST_CASE("diagram construction checks arity") {
  auto sig = frob_sig(2);
  auto mu = Diagram::gen(sig, "mu");
  CHECK(mu.source_arity() == 2);
  auto assoc = Diagram::vcomp(mu, Diagram::hcomp(mu, Diagram::id(1)));
  CHECK(assoc.source_arity() == 3);
  CHECK(assoc.target_arity() == 1);
  CHECK_THROWS_AS(Diagram::vcomp(mu, mu), DiagramError);
  CHECK_THROWS_WITH(Diagram::gen(sig, "nu"), doctest::Contains("'nu'"));
  CHECK(Diagram::hcomp(Diagram::gen(sig, "delta"), Diagram::gen(sig, "eps")).degree() == 0);
}

TEST_CASE("evaluation on the sphere") {
  auto i = sphere2(FieldSpec::rationals());
  auto sig = i.signature();
  auto mu = evaluate(Diagram::gen(sig, "mu"), i);
  CHECK(mu.apply({1, 1}).empty());
  CHECK(op_equal(evaluate(Diagram::id(3), i), identity_op(i.space(), 3)));
  auto left = Diagram::vcomp(Diagram::gen(sig, "mu"), Diagram::hcomp(Diagram::gen(sig, "mu"), Diagram::id(1)));
  auto right = Diagram::vcomp(Diagram::gen(sig, "mu"), Diagram::hcomp(Diagram::id(1), Diagram::gen(sig, "mu")));
  auto l = evaluate(left, i);
  CHECK(l.apply({0, 1, 1}).empty());
  auto img = l.apply({0, 0, 1});
  REQUIRE(img.size() == 1);
  CHECK(img[0].first == 1);
  CHECK(img[0].second.is_one());
  CHECK(op_equal(l, evaluate(right, i)));

  Signature other({{"nu", 2, 1, 0}});
  CHECK_THROWS_WITH(evaluate(Diagram::gen(other, "nu"), i), doctest::Contains("'nu'"));
}

TEST_CASE("evaluation agrees with dense oracle on random diagrams") {
  std::mt19937 rng(23);
  auto i = sphere2(FieldSpec::prime(5));
  for (int trial = 0; trial < 40; ++trial) {
    auto d = random_diagram(rng, i.signature(), 1 + trial % 2, 3);
    auto v = evaluate(d, i);
    CHECK(v.source_arity() == d.source_arity());
    CHECK(v.target_arity() == d.target_arity());
    CHECK(v.degree() == d.degree());
    CHECK(v.to_matrix() == dense_eval(d, i));
  }
}

TEST_CASE("commutative product is invariant under the swap") {
  auto i = sphere2(FieldSpec::rationals());
  auto d = Diagram::vcomp(Diagram::gen(i.signature(), "mu"), Diagram::perm({1, 0}));
  CHECK(op_equal(evaluate(d, i), i.at("mu")));
}

TEST_CASE("conjugation on the sphere") {
  auto f = FieldSpec::prime(5);
  auto i = sphere2(f);
  auto id = identity_op(i.space(), 1);
  CHECK(interpretation_equal(conjugate_interpretation(i, id), i));

  for (long a = 1; a < 5; ++a) {
    auto g = diag_op(i.space(), {1, a});
    auto c = conjugate_interpretation(i, g);
    Scalar sa = Scalar::from_integer(f, a);
    CHECK(op_equal(c.at("mu"), i.at("mu")));
    CHECK(op_equal(c.at("eta"), i.at("eta")));
    CHECK(op_equal(c.at("eps"), i.at("eps").scaled(sa)));
    CHECK(op_equal(c.at("delta"), i.at("delta").scaled(sa.inverse())));
    CHECK(interpretation_equal(conjugate_interpretation(c, inverse_op(g)), i));
  }

  auto g1 = diag_op(i.space(), {2, 3});
  MultiOp::Builder b(i.space(), 1, 1, 0);
  b.add({0}, {0}, 1).add({1}, {1}, 4);
  auto g2 = b.build();
  CHECK(interpretation_equal(conjugate_interpretation(conjugate_interpretation(i, g1), g2),
                             conjugate_interpretation(i, vertical_compose(g1, g2))));
  CHECK_THROWS_AS(conjugate_interpretation(i, diag_op(i.space(), {1, 0})), DegenerateError);
  MultiOp::Builder odd(i.space(), 1, 1, 2);
  odd.add({0}, {1}, 1);
  CHECK_THROWS_AS(conjugate_interpretation(i, odd.build()), ArityError);
}

TEST_CASE("prop morphism property and its mutation") {
  auto f = FieldSpec::prime(5);
  auto s2 = sphere_space(2, f);
  std::mt19937 rng(31);
  std::vector<SamplePair> samples;
  for (int k = 0; k < 50; ++k) {
    unsigned m1 = rng() % 3, n1 = 1 + rng() % 2;
    samples.push_back({random_op(rng, s2, m1, n1, 2 * int(rng() % 3) - 2),
                       random_op(rng, s2, n1, rng() % 3, 2 * int(rng() % 3) - 2)});
  }
  CHECK(check_prop_morphism_property(identity_op(s2, 1), samples));
  CHECK(check_prop_morphism_property(diag_op(s2, {1, 3}), samples));

  auto s3 = sphere_space(3, f);
  MultiOp::Builder a(s3, 1, 1, 3), b(s3, 1, 1, -3);
  a.add({0}, {1}, 1);
  b.add({1}, {0}, 1);
  std::vector<SamplePair> odd{{a.build(), b.build()}};
  auto g = diag_op(s3, {1, 2});
  CHECK(check_prop_morphism_property(g, odd));
  Conjugator honest = standard_conjugator(g);
  Conjugator corrupted = [&](const MultiOp& p) {
    MultiOp c = honest(p);
    MultiOp::Builder out(c.space(), c.source_arity(), c.target_arity(), c.degree());
    for (const auto& e : c.entries()) {
      bool flip = (p.degree() * c.space()->tuple_degree(e.in, c.source_arity())) % 2 != 0;
      out.add(e.in, e.out, flip ? -e.coeff : e.coeff);
    }
    return out.build();
  };
  CHECK_FALSE(check_prop_morphism_property(corrupted, odd));
}

TEST_CASE("pullback of the identity and of the zero map") {
  auto s = sphere_space(2);
  auto f = FieldSpec::rationals();
  auto id = linear_map(s, s, Matrix::identity(2, f));
  for (auto [m, n] : {std::pair{1u, 1u}, {2u, 1u}, {1u, 2u}}) {
    auto e = end_of_map_space(id, m, n);
    std::size_t h = hom_dimension(*s, m, n, 0);
    CHECK(e.dimension() == h);
    CHECK(e.d0.rank() == h);
    for (const auto& [p, q] : e.basis) CHECK(op_equal(p, q));
  }
  CHECK(end_of_map_space(id, 1, 1).dimension() == 2);

  auto s_copy = make_space({{"u", 0}, {"v", 2}}, f);
  auto zero = linear_map(s, s_copy, Matrix(2, 2, f));
  CHECK(end_of_map_space(zero, 1, 1).dimension() == 4);

  Matrix iso(2, 2, f);
  iso(0, 0) = Scalar::one(f);
  iso(1, 1) = Scalar::from_integer(f, 3);
  auto fi = linear_map(s, s_copy, iso);
  auto e = end_of_map_space(fi, 2, 1);
  CHECK(e.dimension() == hom_dimension(*s, 2, 1, 0));
  CHECK(e.dimension() == 3);
  CHECK(e.d0.rank() == e.dimension());
  CHECK(e.d1.rank() == e.dimension());
  // Every pair satisfies the intertwining condition exactly.
  for (const auto& [p, q] : e.basis) {
    Matrix lhs = iso * p.to_matrix();
    Matrix rhs = q.to_matrix() * kron(iso, iso);
    CHECK(lhs == rhs);
  }
  CHECK_THROWS(linear_map(s, make_space({{"u", 0}, {"v", 1}}, f), Matrix::identity(2, f)));
}

TEST_CASE("axis-wise conjugation matches tensor powers") {
  auto f = FieldSpec::prime(7);
  auto m = mixed_space(f);
  std::mt19937 rng(77);
  MultiOp::Builder gb(m, 1, 1, 0);
  gb.add({0}, {0}, 3).add({1}, {1}, 2).add({1}, {2}, 5).add({2}, {1}, 1).add({2}, {2}, 4);
  gb.add({3}, {3}, 6).add({4}, {4}, 1);
  MultiOp g = gb.build();
  MultiOp gi = inverse_op(g);
  for (int k = 0; k < 30; ++k) {
    unsigned a = rng() % 3, b = rng() % 3;
    auto p = random_op(rng, m, a, b, int(rng() % 5) - 2);
    auto oracle = vertical_compose(tensor_power(gi, b), vertical_compose(p, tensor_power(g, a)));
    CHECK(op_equal(conjugate_op(p, g, gi), oracle));
  }
}
