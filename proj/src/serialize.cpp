#include "frobreal/serialize.hpp"

#include <map>

#include "frobreal/errors.hpp"

namespace frobreal {
namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  const std::string where = path.empty() ? "document" : path;
  if (!j.is_object()) throw FormatError("expected an object", where);
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing member '") + key + "'", where);
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError("expected an integer", path);
  return j.get<long>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError("expected a string", path);
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError("expected an array", path);
  return j;
}

unsigned arity(const Json& j, const std::string& path) {
  long v = integer(j, path);
  if (v < 0) throw FormatError("negative arity", path);
  return static_cast<unsigned>(v);
}

Json labels_json(const GradedSpace& space, TupleIndex index, unsigned k) {
  Json out = Json::array();
  for (const auto& l : space.tuple_labels(index, k)) out.push_back(l);
  return out;
}

std::vector<std::size_t> labels_from(const Json& j, const GradedSpace& space, const std::string& path) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  for (const auto& l : array(j, path)) {
    auto idx = space.index_of(text(l, at_index(path, i)));
    if (!idx) throw FormatError("unknown basis label '" + l.get<std::string>() + "'", at_index(path, i));
    out.push_back(*idx);
    ++i;
  }
  return out;
}

Scalar scalar_from(const Json& j, const FieldSpec& field, const std::string& path) {
  try {
    return Scalar::parse(field, text(j, path));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(e.what(), path);
  }
}

Diagram diagram_at(const Json& j, const Signature& sig, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_string()) throw DiagramError("malformed diagram node", path);
  const std::string tag = j[0].get<std::string>();
  auto need = [&](std::size_t n) {
    if (j.size() != n) throw DiagramError("'" + tag + "' node needs " + std::to_string(n - 1) + " operand(s)", path);
  };
  auto build = [&](auto&& make) -> Diagram {
    try {
      return make();
    } catch (const DiagramError& e) {
      std::string what = e.what();
      throw DiagramError(what.substr(0, what.rfind(" (at ")), path);
    } catch (const std::exception& e) {
      throw DiagramError(e.what(), path);
    }
  };
  if (tag == "gen") {
    need(2);
    if (!j[1].is_string()) throw DiagramError("generator name must be a string", path);
    return build([&] { return Diagram::gen(sig, j[1].get<std::string>()); });
  }
  if (tag == "id") {
    need(2);
    if (!j[1].is_number_unsigned()) throw DiagramError("identity width must be a nonnegative integer", path);
    return Diagram::id(j[1].get<unsigned>());
  }
  if (tag == "perm") {
    need(2);
    if (!j[1].is_array()) throw DiagramError("permutation images must be an array", path);
    std::vector<std::size_t> images;
    for (const auto& v : j[1]) {
      if (!v.is_number_unsigned()) throw DiagramError("permutation image must be a nonnegative integer", path);
      images.push_back(v.get<std::size_t>());
    }
    return build([&] { return Diagram::perm(images); });
  }
  if (tag == "hcomp") {
    need(3);
    Diagram l = diagram_at(j[1], sig, path + ".left");
    Diagram r = diagram_at(j[2], sig, path + ".right");
    return build([&] { return Diagram::hcomp(l, r); });
  }
  if (tag == "vcomp") {
    need(3);
    Diagram u = diagram_at(j[1], sig, path + ".upper");
    Diagram d = diagram_at(j[2], sig, path + ".lower");
    return build([&] { return Diagram::vcomp(u, d); });
  }
  throw DiagramError("unknown node tag '" + tag + "'", path);
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

}  // namespace

Json to_json(const FieldSpec& field) {
  Json j;
  if (field.is_rationals()) {
    j["kind"] = "rationals";
  } else {
    j["kind"] = "prime";
    j["characteristic"] = field.characteristic();
  }
  return j;
}

FieldSpec field_from_json(const Json& j) {
  const std::string kind = text(member(j, "kind", "field"), "field.kind");
  if (kind == "rationals") return FieldSpec::rationals();
  if (kind != "prime") throw FormatError("unknown field kind '" + kind + "'", "field.kind");
  long p = integer(member(j, "characteristic", "field"), "field.characteristic");
  try {
    return FieldSpec::prime(static_cast<std::uint64_t>(p < 0 ? 0 : p));
  } catch (const std::exception& e) {
    throw FormatError(e.what(), "field.characteristic");
  }
}

Json to_json(const GradedSpace& space) {
  Json j;
  j["field"] = to_json(space.field());
  Json basis = Json::array();
  for (const auto& b : space.basis()) basis.push_back(Json::array({b.label, b.degree}));
  j["basis"] = basis;
  return j;
}

SpacePtr space_from_json(const Json& j) {
  FieldSpec field = field_from_json(member(j, "field", "space"));
  std::vector<BasisElement> basis;
  const Json& b = array(member(j, "basis", "space"), "space.basis");
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string p = at_index("space.basis", i);
    if (!b[i].is_array() || b[i].size() != 2) throw FormatError("expected [label, degree]", p);
    basis.push_back({text(b[i][0], p + "[0]"), static_cast<int>(integer(b[i][1], p + "[1]"))});
  }
  try {
    return make_space(std::move(basis), field);
  } catch (const std::exception& e) {
    throw FormatError(e.what(), "space.basis");
  }
}

Json to_json(const MultiOp& op) {
  const GradedSpace& space = *op.space();
  Json j;
  j["source_arity"] = op.source_arity();
  j["target_arity"] = op.target_arity();
  j["degree"] = op.degree();
  Json entries = Json::array();
  const auto& es = op.entries();
  for (std::size_t k = 0; k < es.size();) {
    Json group = Json::array({labels_json(space, es[k].in, op.source_arity())});
    TupleIndex in = es[k].in;
    for (; k < es.size() && es[k].in == in; ++k)
      group.push_back(Json::array({labels_json(space, es[k].out, op.target_arity()), es[k].coeff.to_string()}));
    entries.push_back(group);
  }
  j["entries"] = entries;
  return j;
}

MultiOp op_from_json(const Json& j, const SpacePtr& space) {
  const std::string root;
  unsigned m = arity(member(j, "source_arity", root), "source_arity");
  unsigned n = arity(member(j, "target_arity", root), "target_arity");
  int deg = static_cast<int>(integer(member(j, "degree", root), "degree"));
  MultiOp::Builder b(space, m, n, deg);
  const Json& entries = array(member(j, "entries", root), "entries");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string p = at_index("entries", e);
    const Json& group = array(entries[e], p);
    if (group.empty()) throw FormatError("empty entry", p);
    auto in = labels_from(group[0], *space, p + "[0]");
    if (in.size() != m) throw FormatError("input tuple has the wrong arity", p + "[0]");
    for (std::size_t t = 1; t < group.size(); ++t) {
      const std::string q = at_index(p, t);
      if (!group[t].is_array() || group[t].size() != 2) throw FormatError("expected [[labels], coeff]", q);
      auto out = labels_from(group[t][0], *space, q + "[0]");
      if (out.size() != n) throw FormatError("output tuple has the wrong arity", q + "[0]");
      b.add(in, out, scalar_from(group[t][1], space->field(), q + "[1]"));
    }
  }
  try {
    return b.build();
  } catch (const std::exception& e) {
    throw FormatError(e.what(), "entries");
  }
}

Json to_json(const Signature& sig) {
  Json out = Json::array();
  for (const auto& g : sig.generators()) {
    Json j;
    j["name"] = g.name;
    j["source_arity"] = g.source_arity;
    j["target_arity"] = g.target_arity;
    j["degree"] = g.degree;
    out.push_back(j);
  }
  return out;
}

Signature signature_from_json(const Json& j) {
  std::vector<Generator> gens;
  const Json& a = array(j, "signature");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = at_index("signature", i);
    gens.push_back({text(member(a[i], "name", p), join(p, "name")),
                    arity(member(a[i], "source_arity", p), join(p, "source_arity")),
                    arity(member(a[i], "target_arity", p), join(p, "target_arity")),
                    static_cast<int>(integer(member(a[i], "degree", p), join(p, "degree")))});
  }
  try {
    return Signature(std::move(gens));
  } catch (const std::exception& e) {
    throw FormatError(e.what(), "signature");
  }
}

Json to_json(const Diagram& d) {
  switch (d.kind()) {
    case Diagram::Kind::gen:
      return Json::array({"gen", d.name()});
    case Diagram::Kind::id:
      return Json::array({"id", d.source_arity()});
    case Diagram::Kind::perm: {
      Json images = Json::array();
      for (auto i : d.images()) images.push_back(i);
      return Json::array({"perm", images});
    }
    case Diagram::Kind::hcomp:
      return Json::array({"hcomp", to_json(d.first()), to_json(d.second())});
    case Diagram::Kind::vcomp:
      return Json::array({"vcomp", to_json(d.first()), to_json(d.second())});
  }
  throw std::logic_error("unreachable diagram kind");
}

Diagram diagram_from_json(const Json& j, const Signature& sig) { return diagram_at(j, sig, "root"); }

Json to_json(const Interpretation& interp) {
  Json j;
  j["space"] = to_json(*interp.space());
  j["signature"] = to_json(interp.signature());
  Json a = Json::object();
  for (const auto& [name, op] : interp.assignment()) a[name] = to_json(op);
  j["assignment"] = a;
  return j;
}

Interpretation interpretation_from_json(const Json& j) {
  SpacePtr space = space_from_json(member(j, "space", ""));
  Signature sig = signature_from_json(member(j, "signature", ""));
  const Json& a = member(j, "assignment", "");
  if (!a.is_object()) throw FormatError("expected an object", "assignment");
  std::map<std::string, MultiOp> ops;
  for (auto it = a.begin(); it != a.end(); ++it) {
    try {
      ops.emplace(it.key(), op_from_json(it.value(), space));
    } catch (const FormatError& e) {
      throw e.within("assignment." + it.key());
    }
  }
  try {
    return Interpretation(space, sig, std::move(ops));
  } catch (const std::exception& e) {
    throw FormatError(e.what(), "assignment");
  }
}

Json to_json(const FrobeniusStructure& s) {
  Json j;
  j["space"] = to_json(*s.space());
  j["mu"] = to_json(s.mu());
  j["eta"] = to_json(s.eta());
  j["delta"] = to_json(s.delta());
  j["eps"] = to_json(s.eps());
  j["degree_m"] = s.coproduct_degree();
  return j;
}

FrobeniusStructure structure_from_json(const Json& j) {
  SpacePtr space = space_from_json(member(j, "space", ""));
  int m = static_cast<int>(integer(member(j, "degree_m", ""), "degree_m"));
  auto op = [&](const char* key) {
    const Json& body = member(j, key, "");
    try {
      return op_from_json(body, space);
    } catch (const FormatError& e) {
      throw e.within(key);
    }
  };
  MultiOp mu = op("mu"), eta = op("eta"), delta = op("delta"), eps = op("eps");
  try {
    return FrobeniusStructure(space, mu, eta, delta, eps, m);
  } catch (const std::exception& e) {
    throw FormatError(e.what(), "structure");
  }
}

Json to_json(const Tensor& t) {
  Json out = Json::array();
  for (const auto& [labels, c] : t.terms) out.push_back(Json::array({labels, c.to_string()}));
  return out;
}

Json to_json(const AxiomReport& r) {
  Json j;
  j["all_pass"] = r.all_pass();
  Json axioms = Json::array();
  for (const auto& v : r.axioms) {
    Json a;
    a["name"] = v.name;
    a["verdict"] = v.pass ? "pass" : "fail";
    a["sign"] = v.sign;
    if (v.witness) {
      Json w;
      w["input"] = v.witness->input;
      w["lhs"] = to_json(v.witness->lhs);
      w["rhs"] = to_json(v.witness->rhs);
      a["witness"] = w;
    }
    axioms.push_back(a);
  }
  j["axioms"] = axioms;
  Json sp;
  sp["lambda0"] = r.specialness.lambda0.to_string();
  sp["lambda0_matches_unit"] = r.specialness.lambda0_matches_unit;
  sp["lambda1"] = r.specialness.lambda1 ? Json(r.specialness.lambda1->to_string()) : Json(nullptr);
  sp["handle_operator"] = to_json(r.specialness.handle_operator);
  j["specialness"] = sp;
  Json c;
  c["verdict"] = r.center.pass ? "pass" : "fail";
  Json per = Json::object();
  for (const auto& [label, ok] : r.center.per_element) per[label] = ok;
  c["per_element"] = per;
  j["center"] = c;
  return j;
}

Json to_json(const GradedAutomorphism& g) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < g.dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < g.dim(); ++c) row.push_back(g.entry(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const OrbitResult& r) {
  Json j;
  j["size"] = r.size;
  j["method"] = r.method;
  j["evaluations"] = r.evaluations;
  j["representative"] = r.serialized_representative;
  if (r.stabilizer) {
    j["stabilizer_order"] = r.stabilizer->size();
  } else {
    j["stabilizer_order"] = nullptr;
  }
  return j;
}

Json to_json(const AutOrbitReport& r) {
  Json j;
  j["spec"] = r.spec;
  j["q"] = r.q;
  j["euler_characteristic"] = r.euler_characteristic;
  j["handle_check"] = r.handle_check;
  j["specialness"] = {{"lambda0", r.lambda0}, {"lambda0_matches_unit", r.lambda0_matches_unit}};
  j["orders"] = {{"aut_k", r.aut_k},
                 {"aut_alg", r.aut_alg},
                 {"aut_frob", r.aut_frob},
                 {"candidates", r.candidates}};
  j["orbits"] = {
      {"algebra",
       {{"size", r.orbit_algebra}, {"method", r.orbit_method_algebra}, {"representative", r.representative_algebra}}},
      {"full", {{"size", r.orbit_full}, {"method", r.orbit_method_full}, {"representative", r.representative_full}}}};
  j["coset_count"] = {{"algebra", r.coset_count_algebra}, {"full", r.coset_count_full}};
  j["relative_count"] = r.relative_count;
  j["relative_divides"] = r.relative_divides;
  Json verdict;
  verdict["frobenius_equals_algebra"] = r.frobenius_equals_algebra;
  verdict["witness"] = r.inequality_witness ? to_json(*r.inequality_witness) : Json(nullptr);
  j["strict_equality"] = verdict;
  j["checks"] = {{"stabilizer_matches_algebra", optional_bool(r.stabilizer_matches_algebra)},
                 {"stabilizer_matches_full", optional_bool(r.stabilizer_matches_full)},
                 {"groups_closed", optional_bool(r.groups_closed)},
                 {"subgroup_chain", optional_bool(r.subgroup_chain)},
                 {"constraint_agreement", optional_bool(r.constraint_agreement)}};
  Json pred = Json::object();
  if (r.prediction_gl_times_units) pred["gl_times_units"] = *r.prediction_gl_times_units;
  if (r.prediction_similitude) pred["similitude"] = *r.prediction_similitude;
  j["predictions"] = pred;
  j["warnings"] = r.warnings;
  j["invariants_hold"] = r.invariants_hold();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

}  // namespace frobreal
