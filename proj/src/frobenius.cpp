#include "frobreal/frobenius.hpp"

#include <stdexcept>

#include "frobreal/errors.hpp"

namespace frobreal {

namespace {

int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

void require_shape(const SpacePtr& space, const MultiOp& op, const char* name, unsigned m, unsigned n,
                   int degree) {
  if (!same_space(op.space(), space)) throw AmbientMismatch(std::string(name) + ": ambient mismatch");
  if (op.source_arity() != m || op.target_arity() != n || op.degree() != degree)
    throw ArityError(std::string(name) + " must have biarity (" + std::to_string(m) + "," + std::to_string(n) +
                     ") and degree " + std::to_string(degree));
}

MultiOp signed_op(const MultiOp& op, int sign) { return sign == 1 ? op : -op; }

}  // namespace

Signature frob_signature(int m) {
  return Signature({{"mu", 2, 1, 0}, {"eta", 0, 1, 0}, {"delta", 1, 2, m}, {"eps", 1, 0, -m}});
}

FrobeniusStructure::FrobeniusStructure(SpacePtr space, MultiOp mu, MultiOp eta, MultiOp delta, MultiOp eps,
                                       int m)
    : space_(std::move(space)),
      mu_(std::move(mu)),
      eta_(std::move(eta)),
      delta_(std::move(delta)),
      eps_(std::move(eps)),
      m_(m) {
  require_shape(space_, mu_, "mu", 2, 1, 0);
  require_shape(space_, eta_, "eta", 0, 1, 0);
  require_shape(space_, delta_, "delta", 1, 2, m_);
  require_shape(space_, eps_, "eps", 1, 0, -m_);
}

Interpretation FrobeniusStructure::interpretation() const {
  return Interpretation(space_, frob_signature(m_), {{"mu", mu_}, {"eta", eta_}, {"delta", delta_}, {"eps", eps_}});
}

FrobeniusStructure FrobeniusStructure::from_interpretation(const Interpretation& i, int m) {
  return FrobeniusStructure(i.space(), i.at("mu"), i.at("eta"), i.at("delta"), i.at("eps"), m);
}

bool structure_equal(const FrobeniusStructure& a, const FrobeniusStructure& b) {
  return a.coproduct_degree() == b.coproduct_degree() && op_equal(a.mu(), b.mu()) && op_equal(a.eta(), b.eta()) &&
         op_equal(a.delta(), b.delta()) && op_equal(a.eps(), b.eps());
}

Pairing pairing_from_op(const MultiOp& beta) {
  if (beta.source_arity() != 2 || beta.target_arity() != 0) throw ArityError("a pairing is a (2,0) operation");
  const auto& s = *beta.space();
  Matrix gram(s.dim(), s.dim(), s.field());
  for (const auto& e : beta.entries()) {
    auto t = s.decode(e.in, 2);
    gram(t[0], t[1]) = e.coeff;
  }
  return Pairing{beta.space(), beta, std::move(gram)};
}

Pairing pairing_from_structure(const FrobeniusStructure& s) {
  return pairing_from_op(vertical_compose(s.eps(), s.mu()));
}

bool is_nondegenerate(const Pairing& p) { return p.gram.rank() == p.space->dim(); }

MultiOp copairing_solve(const Pairing& p) {
  if (!is_nondegenerate(p)) throw DegenerateError("pairing is degenerate");
  const auto& space = p.space;
  const GradedSpace& s = *space;
  const int m = p.m();
  const FieldSpec field = s.field();
  const MultiOp id1 = identity_op(space, 1);
  const MultiOp lhs_outer = horizontal_tensor(p.beta, id1);

  // Unknowns: coefficients of e_a ⊗ e_b with |a| + |b| = m. Column k holds
  // the matrix of (β⊗id)∘(id⊗(e_a⊗e_b)), flattened.
  std::vector<TupleIndex> pairs;
  for (TupleIndex t = 0; t < s.tuple_count(2); ++t)
    if (s.tuple_degree(t, 2) == m) pairs.push_back(t);
  const std::size_t d = s.dim();
  Matrix system(d * d, pairs.size(), field);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    MultiOp::Builder g(space, 0, 2, m);
    g.add(0, pairs[k], Scalar::one(field));
    MultiOp snake = vertical_compose(lhs_outer, horizontal_tensor(id1, g.build()));
    for (const auto& e : snake.entries()) system(e.out * d + e.in, k) = e.coeff;
  }
  std::vector<Scalar> rhs(d * d, Scalar::zero(field));
  for (std::size_t i = 0; i < d; ++i) rhs[i * d + i] = Scalar::one(field);
  auto solution = system.solve(rhs);
  if (!solution) throw DegenerateError("no copairing solves the snake identity");

  MultiOp::Builder gb(space, 0, 2, m);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!(*solution)[k].is_zero()) gb.add(0, pairs[k], (*solution)[k]);
  MultiOp gamma = gb.build();

  MultiOp second = vertical_compose(horizontal_tensor(id1, p.beta), horizontal_tensor(gamma, id1));
  if (!op_equal(second, signed_op(id1, parity_sign(m))))
    throw SignConventionFault("second snake identity fails for the solved copairing");
  return gamma;
}

Coproduct coproduct_from_pairing(const MultiOp& mu, const MultiOp& eta, const Pairing& p) {
  MultiOp gamma = copairing_solve(p);
  const MultiOp id1 = identity_op(p.space, 1);
  MultiOp delta = vertical_compose(horizontal_tensor(mu, id1), horizontal_tensor(id1, gamma));
  MultiOp eps = vertical_compose(p.beta, horizontal_tensor(id1, eta));
  if (!op_equal(vertical_compose(eps, mu), p.beta))
    throw std::invalid_argument("pairing is not of the form eps∘mu for the given product and unit");
  return {std::move(delta), std::move(eps)};
}

Tensor tensor_of(const GradedSpace& space, unsigned arity,
                 const std::vector<std::pair<TupleIndex, Scalar>>& image) {
  Tensor t;
  for (const auto& [out, c] : image) t.terms.emplace_back(space.tuple_labels(out, arity), c);
  return t;
}

std::string Tensor::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [labels, c] : terms) {
    if (!s.empty()) s += " + ";
    s += c.to_string() + "*[";
    for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
    s += "]";
  }
  return s;
}

std::optional<Witness> find_witness(const MultiOp& lhs, const MultiOp& rhs, int sign) {
  MultiOp target = signed_op(rhs, sign);
  MultiOp diff = lhs - target;
  if (diff.is_zero()) return std::nullopt;
  const auto& s = *lhs.space();
  TupleIndex in = diff.entries().front().in;
  return Witness{s.tuple_labels(in, lhs.source_arity()), tensor_of(s, lhs.target_arity(), lhs.apply(in)),
                 tensor_of(s, lhs.target_arity(), target.apply(in))};
}

std::vector<AxiomDiagrams> axiom_diagrams(int m) {
  const Signature sig = frob_signature(m);
  const Diagram mu = Diagram::gen(sig, "mu"), eta = Diagram::gen(sig, "eta");
  const Diagram delta = Diagram::gen(sig, "delta"), eps = Diagram::gen(sig, "eps");
  const Diagram id = Diagram::id(1), tau = Diagram::perm({1, 0});
  const Diagram beta = Diagram::vcomp(eps, mu);
  const Diagram gamma = Diagram::vcomp(delta, eta);
  const int s = parity_sign(m);
  auto h = [](const Diagram& a, const Diagram& b) { return Diagram::hcomp(a, b); };
  auto v = [](const Diagram& a, const Diagram& b) { return Diagram::vcomp(a, b); };
  return {
      {"associativity", v(mu, h(mu, id)), v(mu, h(id, mu)), 1},
      {"coassociativity", v(h(delta, id), delta), v(h(id, delta), delta), s},
      {"unit_left", v(mu, h(eta, id)), id, 1},
      {"unit_right", v(mu, h(id, eta)), id, 1},
      {"counit_left", v(h(eps, id), delta), id, 1},
      {"counit_right", v(h(id, eps), delta), id, s},
      {"frobenius_left", v(delta, mu), v(h(mu, id), h(id, delta)), 1},
      {"frobenius_right", v(delta, mu), v(h(id, mu), h(delta, id)), 1},
      {"commutativity", v(mu, tau), mu, 1},
      {"cocommutativity", v(tau, delta), delta, s},
      {"pairing_symmetry", v(beta, tau), beta, 1},
      {"pairing_invariance", v(beta, h(mu, id)), v(beta, h(id, mu)), 1},
      {"snake_first", v(h(beta, id), h(id, gamma)), id, 1},
      {"snake_second", v(h(id, beta), h(gamma, id)), id, s},
  };
}

bool AxiomReport::all_pass() const {
  for (const auto& a : axioms)
    if (!a.pass) return false;
  return center.pass;
}

const AxiomVerdict* AxiomReport::find(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return &a;
  return nullptr;
}

CenterVerdict center_check(const FrobeniusStructure& s) {
  const auto& space = s.space();
  const MultiOp id1 = identity_op(space, 1);
  const MultiOp handle = vertical_compose(s.mu(), vertical_compose(symmetry_op(space), s.delta()));
  CenterVerdict out{true, {}};
  for (std::size_t z = 0; z < space->dim(); ++z) {
    MultiOp c = vertical_compose(handle, element_op(space, z, Scalar::one(s.field())));
    // id⊗c contributes (-1)^{|c||w|} on input w by the tensor sign rule.
    bool ok = op_equal(vertical_compose(s.mu(), horizontal_tensor(c, id1)),
                       vertical_compose(s.mu(), horizontal_tensor(id1, c)));
    out.per_element.emplace_back(space->label(z), ok);
    out.pass = out.pass && ok;
  }
  return out;
}

AxiomReport check_axioms(const FrobeniusStructure& s) {
  const Interpretation interp = s.interpretation();
  AxiomReport report{{}, {Scalar::zero(s.field()), false, identity_op(s.space(), 1), std::nullopt}, {}};
  for (const auto& ax : axiom_diagrams(s.coproduct_degree())) {
    MultiOp lhs = evaluate(ax.lhs, interp);
    MultiOp rhs = evaluate(ax.rhs, interp);
    auto w = find_witness(lhs, rhs, ax.sign);
    report.axioms.push_back({ax.name, !w.has_value(), ax.sign, std::move(w)});
  }

  MultiOp lambda0 = vertical_compose(s.eps(), s.eta());
  report.specialness.lambda0 = lambda0.coefficient(0, 0);
  report.specialness.lambda0_matches_unit = report.specialness.lambda0.is_one();
  report.specialness.handle_operator = vertical_compose(s.mu(), s.delta());
  if (s.coproduct_degree() == 0) {
    Scalar c = report.specialness.handle_operator.coefficient(0, 0);
    if (op_equal(report.specialness.handle_operator, identity_op(s.space(), 1).scaled(c)))
      report.specialness.lambda1 = c;
  }
  report.center = center_check(s);
  return report;
}

bool witness_reproduces(const FrobeniusStructure& s, const AxiomVerdict& v) {
  if (!v.witness) return true;
  const Interpretation interp = s.interpretation();
  for (const auto& ax : axiom_diagrams(s.coproduct_degree())) {
    if (ax.name != v.name) continue;
    MultiOp lhs = evaluate(ax.lhs, interp);
    MultiOp rhs = signed_op(evaluate(ax.rhs, interp), ax.sign);
    std::vector<std::size_t> in;
    for (const auto& l : v.witness->input) in.push_back(*s.space()->index_of(l));
    const auto& space = *s.space();
    return tensor_of(space, lhs.target_arity(), lhs.apply(in)).to_string() == v.witness->lhs.to_string() &&
           tensor_of(space, rhs.target_arity(), rhs.apply(in)).to_string() == v.witness->rhs.to_string() &&
           v.witness->lhs.to_string() != v.witness->rhs.to_string();
  }
  return false;
}

HandleCheck handle_element_check(const FrobeniusStructure& s, long chi, std::size_t omega) {
  const auto& space = s.space();
  const Scalar c = Scalar::from_integer(s.field(), chi);
  MultiOp op = vertical_compose(s.mu(), s.delta());
  MultiOp h = vertical_compose(op, s.eta());
  MultiOp expected_h = element_op(space, omega, c);
  MultiOp left_mult = vertical_compose(s.mu(), horizontal_tensor(element_op(space, omega, Scalar::one(s.field())),
                                                                 identity_op(space, 1)));
  bool element_ok = op_equal(h, expected_h);
  bool operator_ok = op_equal(op, left_mult.scaled(c));
  return {element_ok && operator_ok, element_ok, operator_ok, std::move(h), std::move(op)};
}

std::optional<std::size_t> find_top_class(const FrobeniusStructure& s) {
  const auto& space = *s.space();
  if (space.dim() == 0) return std::nullopt;
  std::optional<std::size_t> found;
  for (std::size_t i : space.indices_of_degree(space.top_degree())) {
    if (s.eps().coefficient(i, 0).is_one()) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

}  // namespace frobreal
