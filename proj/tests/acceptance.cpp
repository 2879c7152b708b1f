// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "frobreal/aut.hpp"
#include "frobreal/errors.hpp"
#include "frobreal/frobenius.hpp"
#include "frobreal/manifold.hpp"
#include "frobreal/prop.hpp"

#ifndef FROBREAL_CLI_PATH
#error "FROBREAL_CLI_PATH must name the frobreal executable"
#endif

using namespace frobreal;

namespace {

const std::vector<std::string> kSpecs = {"sphere:1", "sphere:2",  "sphere:3",  "sphere:4",
                                         "cp:1",     "cp:2",      "cp:3",      "surface:0",
                                         "surface:1", "surface:2", "connsum(cp:2,cp:2)"};

struct Outcome {
  bool pass;
  std::string detail;
};

FrobeniusStructure structure(const std::string& spec, const FieldSpec& f) { return build_structure(parse_spec(spec), f); }

// 1
Outcome axiom_suite() {
  std::string failed;
  for (const auto& spec : kSpecs) {
    auto r = check_axioms(structure(spec, FieldSpec::rationals()));
    if (!r.all_pass()) failed += " " + spec;
  }
  return {failed.empty(), failed.empty() ? "14 relations and centrality hold on 11 specs" : "failing:" + failed};
}

long alternating_sum(const GradedSpace& s) {
  long chi = 0;
  for (const auto& [deg, d] : s.dims_by_degree()) chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long>(d);
  return chi;
}

long expected_chi(const std::string& spec) {
  auto s = parse_spec(spec);
  switch (s.kind()) {
    case ManifoldSpec::Kind::sphere:
      return s.parameter() % 2 == 0 ? 2 : 0;
    case ManifoldSpec::Kind::cp:
      return s.parameter() + 1;
    case ManifoldSpec::Kind::surface:
      return 2 - 2 * s.parameter();
    case ManifoldSpec::Kind::connsum:
      return 4;
  }
  return 0;
}

// 2
Outcome handle_euler() {
  std::string bad;
  for (const auto& spec : kSpecs) {
    auto s = structure(spec, FieldSpec::rationals());
    long chi = expected_chi(spec);
    if (alternating_sum(*s.space()) != chi) bad += " " + spec + "(chi)";
    // ω is the unique top-degree class.
    auto top = s.space()->indices_of_degree(s.space()->top_degree());
    if (top.size() != 1 || !handle_element_check(s, chi, top[0]).element_ok) bad += " " + spec;
  }
  return {bad.empty(), bad.empty() ? "mu(Delta(eta(1))) = chi*omega on 11 specs" : "failing:" + bad};
}

// 3
Outcome sphere_counts() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint32_t q : {3u, 5u}) {
    auto s = structure("sphere:2", FieldSpec::prime(q));
    std::uint64_t k = graded_linear_order(*s.space(), q);
    std::uint64_t k_enum = enumerate_graded_linear(s.space(), default_budget()).size();
    std::uint64_t alg = enumerate_algebra_automorphisms(s).size();
    auto orbit = orbit_of_structure(s, OrbitTarget::algebra, default_budget(), OrbitMethod::exhaustive);
    std::uint64_t stab = orbit.stabilizer ? orbit.stabilizer->size() : 0;
    bool here = k == (q - 1) * (q - 1) && k_enum == k && alg == q - 1 && orbit.size == q - 1 && orbit.size * stab == k;
    ok = ok && here;
    os << "q=" << q << ": |Aut_K|=" << k << " |Aut_alg|=" << alg << " orbit=" << orbit.size << " stab=" << stab
       << "; ";
  }
  return {ok, os.str()};
}

// 4
Outcome cp_counts() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint32_t q : {3u, 5u}) {
    auto s = structure("cp:2", FieldSpec::prime(q));
    std::uint64_t k = graded_linear_order(*s.space(), q);
    std::uint64_t alg = enumerate_algebra_automorphisms(s).size();
    auto orbit = orbit_of_structure(s, OrbitTarget::algebra);
    std::uint64_t want = (q - 1) * (q - 1);
    bool here = alg != 0 && k % alg == 0 && k / alg == want && orbit.size == want;
    ok = ok && here;
    os << "q=" << q << ": |Aut_K|/|Aut_alg|=" << k << "/" << alg << " orbit=" << orbit.size << "; ";
  }
  return {ok, os.str()};
}

// 5: the constraint set is scanned directly over all 2x2 blocks.
Outcome connsum_constraints() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint32_t q : {3u, 5u}) {
    auto s = structure("connsum(cp:2,cp:2)", FieldSpec::prime(q));
    const auto& sp = *s.space();
    auto mid = sp.indices_of_degree(2);
    auto top = sp.indices_of_degree(4);
    if (mid.size() != 2 || top.size() != 1 || sp.index_of("L.x") != mid[0] || sp.index_of("R.x") != mid[1]) {
      return {false, "unexpected basis layout"};
    }
    const std::size_t n = sp.dim();
    std::set<std::vector<std::uint32_t>> constraint;
    for (std::uint32_t a1 = 0; a1 < q; ++a1)
      for (std::uint32_t a2 = 0; a2 < q; ++a2)
        for (std::uint32_t b1 = 0; b1 < q; ++b1)
          for (std::uint32_t b2 = 0; b2 < q; ++b2) {
            std::uint32_t na = (a1 * a1 + a2 * a2) % q, nb = (b1 * b1 + b2 * b2) % q;
            std::uint32_t dot = (a1 * b1 + a2 * b2) % q;
            std::uint32_t det = (a1 * b2 + q * q - a2 * b1) % q;
            if (na != nb || dot != 0 || det == 0 || na == 0) continue;
            std::vector<std::uint32_t> m(n * n, 0);
            m[0] = 1;
            m[mid[0] * n + mid[0]] = a1;
            m[mid[1] * n + mid[0]] = a2;
            m[mid[0] * n + mid[1]] = b1;
            m[mid[1] * n + mid[1]] = b2;
            m[top[0] * n + top[0]] = na;
            constraint.insert(m);
          }
    std::set<std::vector<std::uint32_t>> enumerated;
    for (const auto& g : enumerate_algebra_automorphisms(s)) enumerated.insert(g.matrix());
    std::set<std::vector<std::uint32_t>> solver;
    for (const auto& g : connsum_constraint_solutions(s)) solver.insert(g.matrix());
    bool here = !constraint.empty() && constraint == enumerated && solver == enumerated;
    ok = ok && here;
    os << "q=" << q << ": " << constraint.size() << " constraint solutions, " << enumerated.size() << " enumerated; ";
  }
  return {ok, os.str()};
}

// 6
Outcome strict_verdicts() {
  std::ostringstream os;
  bool invariants = true;
  std::string unstable;
  for (const auto& spec : kSpecs) {
    std::map<std::uint32_t, bool> verdict;
    std::string counts;
    for (std::uint32_t q : {3u, 5u}) {
      auto r = realization_count_report(parse_spec(spec), q);
      bool chain = r.aut_frob > 0 && r.aut_alg % r.aut_frob == 0 && r.aut_k % r.aut_alg == 0;
      invariants = invariants && r.invariants_hold() && r.orbit_stabilizer_algebra && r.orbit_stabilizer_full && chain;
      verdict[q] = r.frobenius_equals_algebra;
      counts += (counts.empty() ? "" : ",") + std::to_string(r.relative_count);
    }
    if (verdict[3] != verdict[5]) unstable += " " + spec;
    os << spec << " rel=" << counts << (verdict[3] ? " eq" : " ne") << "/" << (verdict[5] ? "eq" : "ne") << "; ";
  }
  std::string head = std::string("orbit-stabilizer ") + (invariants ? "holds" : "FAILS") + "; verdict " +
                     (unstable.empty() ? "stable across q" : "differs across q for" + unstable);
  return {invariants && unstable.empty(), head + " | " + os.str()};
}

MultiOp random_op(std::mt19937& rng, const SpacePtr& s, unsigned m, unsigned n) {
  const TupleIndex ins = s->tuple_count(m), outs = s->tuple_count(n);
  TupleIndex in0 = rng() % ins, out0 = rng() % outs;
  int degree = s->tuple_degree(out0, n) - s->tuple_degree(in0, m);
  MultiOp::Builder b(s, m, n, degree);
  std::bernoulli_distribution keep(0.5);
  std::uniform_int_distribution<long> c(1, static_cast<long>(s->field().characteristic()) - 1);
  b.add(in0, out0, Scalar::from_integer(s->field(), c(rng)));
  for (TupleIndex in = 0; in < ins; ++in)
    for (TupleIndex out = 0; out < outs; ++out)
      if (s->tuple_degree(out, n) == s->tuple_degree(in, m) + degree && keep(rng))
        b.add(in, out, Scalar::from_integer(s->field(), c(rng)));
  return b.build();
}

GradedAutomorphism random_automorphism(std::mt19937& rng, const SpacePtr& s) {
  const std::size_t n = s->dim();
  const std::uint32_t p = s->field().characteristic();
  for (;;) {
    std::vector<std::uint32_t> m(n * n, 0);
    for (const auto& [deg, d] : s->dims_by_degree()) {
      auto idx = s->indices_of_degree(deg);
      for (auto r : idx)
        for (auto c : idx) m[r * n + c] = rng() % p;
    }
    try {
      return GradedAutomorphism(s, m);
    } catch (const DegenerateError&) {
    }
  }
}

// The transport with the Koszul sign of the inputs dropped.
Conjugator sign_omitted(const MultiOp& g) {
  Conjugator honest = standard_conjugator(g);
  return [honest](const MultiOp& p) {
    MultiOp c = honest(p);
    MultiOp::Builder out(c.space(), c.source_arity(), c.target_arity(), c.degree());
    for (const auto& e : c.entries()) {
      bool flip = (p.degree() * c.space()->tuple_degree(e.in, c.source_arity())) % 2 != 0;
      out.add(e.in, e.out, flip ? -e.coeff : e.coeff);
    }
    return out.build();
  };
}

// 7
Outcome conjugation_laws() {
  const FieldSpec f = FieldSpec::prime(5);
  std::mt19937 rng(20251014);
  std::size_t instances = 0, mutation_caught = 0, mutation_tried = 0;
  std::string bad;
  for (const auto& spec : kSpecs) {
    auto s = structure(spec, f);
    auto interp = s.interpretation();
    auto space = s.space();
    auto id = GradedAutomorphism::identity(space).to_op();
    bool identity_ok = interpretation_equal(conjugate_interpretation(interp, id), interp);
    bool odd = false;
    for (const auto& b : space->basis()) odd = odd || b.degree % 2 != 0;
    bool laws = identity_ok, caught = false;
    for (int k = 0; k < 100; ++k, ++instances) {
      auto g1 = random_automorphism(rng, space), g2 = random_automorphism(rng, space);
      // Right action: conjugating by g1 and then by g2 is conjugating by g1∘g2.
      auto twice = conjugate_interpretation(conjugate_interpretation(interp, g1.to_op()), g2.to_op());
      auto once = conjugate_interpretation(interp, g1.compose(g2).to_op());
      laws = laws && interpretation_equal(twice, once);
      unsigned m1 = rng() % 3, n1 = 1 + rng() % 2, n2 = rng() % 3;
      std::vector<SamplePair> sample{{random_op(rng, space, m1, n1), random_op(rng, space, n1, n2)}};
      laws = laws && check_prop_morphism_property(g1.to_op(), sample);
      if (odd) {
        ++mutation_tried;
        if (!check_prop_morphism_property(sign_omitted(g1.to_op()), sample)) {
          ++mutation_caught;
          caught = true;
        }
      }
    }
    if (!laws) bad += " " + spec;
    if (odd && !caught) bad += " " + spec + "(mutation undetected)";
  }
  std::ostringstream os;
  os << instances << " instances; sign-omitted conjugation rejected on " << mutation_caught << "/" << mutation_tried
     << " odd-space instances";
  if (!bad.empty()) os << "; failing:" << bad;
  return {bad.empty() && mutation_caught > 0, os.str()};
}

// 8
Outcome interchange() {
  const FieldSpec f = FieldSpec::prime(5);
  auto s = make_space({{"1", 0}, {"a", 1}, {"b", 1}, {"c", 2}, {"w", 3}}, f);
  std::mt19937 rng(8);
  auto operand = [&](unsigned m, unsigned n, bool even) {
    for (;;) {
      auto op = random_op(rng, s, m, n);
      if (!even || op.degree() % 2 == 0) return op;
    }
  };
  int strict_ok = 0, signed_ok = 0, odd_pairs = 0;
  for (int k = 0; k < 100; ++k) {
    unsigned a = 1 + rng() % 2, b = 1 + rng() % 2;
    auto g1 = operand(a, 1 + rng() % 2, true);
    auto g2 = operand(b, 1, true);
    auto f1 = operand(g1.target_arity(), 1, true);
    auto f2 = operand(1, 1 + rng() % 2, true);
    auto lhs = vertical_compose(horizontal_tensor(f1, f2), horizontal_tensor(g1, g2));
    auto rhs = horizontal_tensor(vertical_compose(f1, g1), vertical_compose(f2, g2));
    strict_ok += op_equal(lhs, rhs);
  }
  for (int k = 0; k < 100; ++k) {
    auto g1 = operand(1 + rng() % 2, 1, false);
    auto g2 = operand(1, 1 + rng() % 2, false);
    auto f1 = operand(1, 1, false);
    auto f2 = operand(g2.target_arity(), 1, false);
    auto lhs = vertical_compose(horizontal_tensor(f1, f2), horizontal_tensor(g1, g2));
    auto rhs = horizontal_tensor(vertical_compose(f1, g1), vertical_compose(f2, g2));
    bool odd = (f2.degree() * g1.degree()) % 2 != 0;
    odd_pairs += odd;
    if (odd) rhs = -rhs;
    signed_ok += op_equal(lhs, rhs);
  }
  std::ostringstream os;
  os << "strict " << strict_ok << "/100 even quadruples, signed " << signed_ok << "/100 mixed (" << odd_pairs
     << " with odd |f2||g1|)";
  return {strict_ok == 100 && signed_ok == 100 && odd_pairs > 0, os.str()};
}

// 9: the Hom dimension is counted directly from tuple degrees.
Outcome end_f_dimensions() {
  const FieldSpec f = FieldSpec::rationals();
  auto s = structure("sphere:2", f).space();
  auto id = linear_map(s, s, Matrix::identity(s->dim(), f));
  std::ostringstream os;
  bool ok = true;
  for (auto [m, n] : {std::pair{1u, 1u}, {2u, 1u}, {1u, 2u}}) {
    std::size_t count = 0;
    for (TupleIndex in = 0; in < s->tuple_count(m); ++in)
      for (TupleIndex out = 0; out < s->tuple_count(n); ++out)
        count += s->tuple_degree(in, m) == s->tuple_degree(out, n);
    auto e = end_of_map_space(id, m, n);
    ok = ok && e.dimension() == count && e.d0.rank() == count;
    os << "(" << m << "," << n << ")=" << e.dimension() << "/" << count << " ";
  }
  return {ok, os.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 10
Outcome determinism() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("frobreal_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  bool ok = true;
  std::ostringstream os;
  const char* configs[][2] = {{"connsum(cp:2,cp:2)", "--json"}, {"surface:1", ""}};
  for (const auto& cfg : configs) {
    std::string out[2];
    for (int k = 0; k < 2; ++k) {
      fs::path file = dir / ("run" + std::to_string(k));
      std::string cmd = std::string("\"") + FROBREAL_CLI_PATH + "\" report --spec \"" + cfg[0] +
                        "\" --field q=3 " + cfg[1] + " --out \"" + file.string() + "\"";
      int status = std::system(cmd.c_str());
      ok = ok && status == 0;
      out[k] = slurp(file);
    }
    bool same = !out[0].empty() && out[0] == out[1];
    ok = ok && same;
    os << cfg[0] << (cfg[1][0] ? " json" : " table") << ": " << out[0].size() << " bytes, "
       << (same ? "identical" : "DIFFERENT") << "; ";
  }
  fs::remove_all(dir);
  return {ok, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 10, axiom_suite},      {2, 1, handle_euler},      {3, 1, sphere_counts},
      {4, 1, cp_counts},         {5, 10, connsum_constraints}, {6, 30, strict_verdicts},
      {7, 10, conjugation_laws}, {8, 5, interchange},       {9, 5, end_f_dimensions},
      {10, 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && secs < c.limit;
    failures += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, c.limit);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " [" << timing << "] " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}
