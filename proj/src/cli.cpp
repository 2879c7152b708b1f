#include "frobreal/cli.hpp"

#include <fstream>
#include <sstream>

#include "frobreal/aut.hpp"
#include "frobreal/errors.hpp"
#include "frobreal/manifold.hpp"
#include "frobreal/serialize.hpp"

namespace frobreal {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const char* yes(bool b) { return b ? "yes" : "no"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::uint32_t require_prime(const FieldSpec& f, const char* mode) {
  if (f.is_rationals()) throw UsageError(std::string(mode) + " needs a prime field (--field q=<p>)");
  return f.characteristic();
}

std::string axiom_table(const AxiomReport& r) {
  std::ostringstream os;
  for (const auto& v : r.axioms) {
    os << v.name << " = " << (v.pass ? "pass" : "fail");
    if (v.sign < 0) os << " (sign -1)";
    os << '\n';
    if (v.witness) {
      std::string in;
      for (const auto& l : v.witness->input) in += (in.empty() ? "" : ",") + l;
      os << "  witness (" << in << "): lhs = " << v.witness->lhs.to_string()
         << ", rhs = " << v.witness->rhs.to_string() << '\n';
    }
  }
  os << "center = " << (r.center.pass ? "pass" : "fail") << '\n';
  os << "specialness lambda0 = " << r.specialness.lambda0.to_string() << '\n';
  os << "lambda0 equals 1 = " << yes(r.specialness.lambda0_matches_unit) << '\n';
  if (r.specialness.lambda1) os << "specialness lambda1 = " << r.specialness.lambda1->to_string() << '\n';
  os << "all pass = " << yes(r.all_pass()) << '\n';
  return os.str();
}

RunResult run_build(const RunConfig& c, const FieldSpec& f) {
  auto spec = parse_spec(c.spec);
  auto s = build_structure(spec, f);
  return {0, dump(to_json(s)), ""};
}

RunResult run_check(const RunConfig& c, const FieldSpec& f) {
  std::optional<FrobeniusStructure> s;
  if (!c.input_path.empty()) {
    s = structure_from_json(parse_json(read_file(c.input_path)));
  } else {
    s = build_structure(parse_spec(c.spec), f, BuildOptions{true, false});
  }
  auto report = check_axioms(*s);
  std::string out = c.json ? dump(to_json(report)) : axiom_table(report);
  return {report.all_pass() ? 0 : 1, out, ""};
}

RunResult run_aut(const RunConfig& c, const FieldSpec& f, std::uint64_t budget) {
  std::uint32_t q = require_prime(f, "aut");
  auto spec = parse_spec(c.spec);
  auto s = build_structure(spec, f);
  auto census = automorphism_census(s, budget);
  std::uint64_t aut_k = graded_linear_order(*s.space(), q);
  std::optional<std::vector<GradedAutomorphism>> alg, frob;
  if (census.algebra_count <= c.list_limit) {
    alg = enumerate_algebra_automorphisms(s, budget);
    frob = enumerate_frobenius_automorphisms(s, budget).elements;
  }
  bool equal = census.algebra_count == census.frobenius_count;
  if (c.json) {
    Json j;
    j["spec"] = spec.to_string();
    j["q"] = q;
    j["aut_k"] = aut_k;
    j["aut_alg"] = census.algebra_count;
    j["aut_frob"] = census.frobenius_count;
    j["candidates"] = census.candidates;
    j["frobenius_equals_algebra"] = equal;
    j["witness"] = census.witness ? to_json(*census.witness) : Json(nullptr);
    auto list = [](const std::optional<std::vector<GradedAutomorphism>>& v) {
      if (!v) return Json(nullptr);
      Json a = Json::array();
      for (const auto& g : *v) a.push_back(to_json(g));
      return a;
    };
    j["algebra"] = list(alg);
    j["frobenius"] = list(frob);
    return {0, dump(j), ""};
  }
  std::ostringstream os;
  os << "spec = " << spec.to_string() << '\n' << "field = " << f.to_string() << '\n';
  os << "|Aut_K| = " << aut_k << '\n' << "|Aut_alg| = " << census.algebra_count << '\n';
  os << "|Aut_frob| = " << census.frobenius_count << '\n' << "search candidates = " << census.candidates << '\n';
  os << "Aut_frob = Aut_alg = " << yes(equal) << '\n';
  os << "inequality witness = " << (census.witness ? census.witness->to_string() : "none") << '\n';
  if (alg) {
    for (const auto& g : *alg) os << "algebra automorphism = " << g.to_string() << '\n';
    for (const auto& g : *frob) os << "frobenius automorphism = " << g.to_string() << '\n';
  } else {
    os << "element lists = omitted above " << c.list_limit << " elements\n";
  }
  return {0, os.str(), ""};
}

RunResult run_orbit(const RunConfig& c, const FieldSpec& f, std::uint64_t budget) {
  std::uint32_t q = require_prime(f, "orbit");
  if (c.target != "algebra" && c.target != "full" && c.target != "both")
    throw UsageError("--target must be algebra, full or both");
  auto spec = parse_spec(c.spec);
  auto s = build_structure(spec, f);
  std::uint64_t aut_k = graded_linear_order(*s.space(), q);
  auto census = automorphism_census(s, budget);
  bool ok = true;
  Json j;
  j["spec"] = spec.to_string();
  j["q"] = q;
  j["aut_k"] = aut_k;
  std::ostringstream os;
  os << "spec = " << spec.to_string() << '\n' << "field = " << f.to_string() << '\n' << "|Aut_K| = " << aut_k << '\n';
  auto one = [&](OrbitTarget t, const char* name, std::uint64_t stabilizer) {
    auto o = orbit_of_structure(s, t, budget);
    bool holds = o.size * stabilizer == aut_k;
    ok = ok && holds;
    Json oj = to_json(o);
    oj["orbit_stabilizer_holds"] = holds;
    j[name] = oj;
    os << "orbit size (" << name << ") = " << o.size << '\n';
    os << "orbit method (" << name << ") = " << o.method << '\n';
    os << "orbit x stabilizer = |Aut_K| (" << name << ") = " << yes(holds) << '\n';
    os << "representative (" << name << ") = " << o.serialized_representative << '\n';
  };
  if (c.target != "full") one(OrbitTarget::algebra, "algebra", census.algebra_count);
  if (c.target != "algebra") one(OrbitTarget::full, "full", census.frobenius_count);
  return {ok ? 0 : 1, c.json ? dump(j) : os.str(), ""};
}

RunResult run_report(const RunConfig& c, const FieldSpec& f, std::uint64_t budget) {
  std::uint32_t q = require_prime(f, "report");
  auto r = realization_count_report(parse_spec(c.spec), q, budget);
  return {r.invariants_hold() ? 0 : 1, c.json ? dump(to_json(r)) : report_table(r), ""};
}

}  // namespace

FieldSpec parse_field(const std::string& text) {
  if (text == "rationals") return FieldSpec::rationals();
  if (text.rfind("q=", 0) != 0 || text.size() == 2) throw ParseError("field must be 'rationals' or 'q=<prime>'", 0);
  std::uint64_t p = 0;
  for (std::size_t i = 2; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw ParseError("expected a decimal prime", i);
    if (p > (std::uint64_t{1} << 40)) throw ParseError("prime too large", i);
    p = p * 10 + static_cast<std::uint64_t>(text[i] - '0');
  }
  if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime", 2);
  try {
    return FieldSpec::prime(p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 2);
  }
}

RunResult run(const RunConfig& c) {
  try {
    if (c.mode != Mode::check || c.input_path.empty())
      if (c.spec.empty()) throw UsageError("--spec is required");
    FieldSpec f = parse_field(c.field);
    std::uint64_t budget = c.budget ? *c.budget : default_budget();
    switch (c.mode) {
      case Mode::build:
        return run_build(c, f);
      case Mode::check:
        return run_check(c, f);
      case Mode::aut:
        return run_aut(c, f, budget);
      case Mode::orbit:
        return run_orbit(c, f, budget);
      case Mode::report:
        return run_report(c, f, budget);
    }
    throw UsageError("unknown mode");
  } catch (const BudgetExceeded& e) {
    return {3, "", e.what()};
  } catch (const std::invalid_argument& e) {
    return {2, "", e.what()};
  } catch (const std::domain_error& e) {
    return {2, "", e.what()};
  } catch (const std::overflow_error& e) {
    return {2, "", e.what()};
  } catch (const std::logic_error& e) {
    return {1, "", e.what()};
  }
}

}  // namespace frobreal
