#include "frobreal/prop.hpp"

#include <set>
#include <stdexcept>

#include "frobreal/errors.hpp"

namespace frobreal {

Signature::Signature(std::vector<Generator> generators) : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_)
    if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator '" + g.name + "'");
}

const Generator* Signature::find(const std::string& name) const {
  for (const auto& g : generators_)
    if (g.name == name) return &g;
  return nullptr;
}

Diagram Diagram::gen(const Signature& sig, const std::string& name) {
  const Generator* g = sig.find(name);
  if (!g) throw std::invalid_argument("unknown generator '" + name + "'");
  return Diagram(std::make_shared<const Node>(
      Node{Kind::gen, g->source_arity, g->target_arity, g->degree, name, {}, nullptr, nullptr}));
}

Diagram Diagram::id(unsigned k) {
  return Diagram(std::make_shared<const Node>(Node{Kind::id, k, k, 0, {}, {}, nullptr, nullptr}));
}

Diagram Diagram::perm(std::vector<std::size_t> images) {
  if (!is_permutation(images)) throw DiagramError("perm: not a permutation", "root");
  unsigned k = static_cast<unsigned>(images.size());
  return Diagram(
      std::make_shared<const Node>(Node{Kind::perm, k, k, 0, {}, std::move(images), nullptr, nullptr}));
}

Diagram Diagram::hcomp(const Diagram& left, const Diagram& right) {
  return Diagram(std::make_shared<const Node>(
      Node{Kind::hcomp, left.source_arity() + right.source_arity(),
           left.target_arity() + right.target_arity(), left.degree() + right.degree(), {}, {},
           std::make_shared<const Diagram>(left), std::make_shared<const Diagram>(right)}));
}

Diagram Diagram::vcomp(const Diagram& upper, const Diagram& lower) {
  if (lower.target_arity() != upper.source_arity())
    throw DiagramError("vcomp: lower target arity " + std::to_string(lower.target_arity()) +
                           " does not match upper source arity " + std::to_string(upper.source_arity()),
                       "root");
  return Diagram(std::make_shared<const Node>(
      Node{Kind::vcomp, lower.source_arity(), upper.target_arity(), upper.degree() + lower.degree(), {}, {},
           std::make_shared<const Diagram>(upper), std::make_shared<const Diagram>(lower)}));
}

std::string Diagram::to_string() const {
  switch (kind()) {
    case Kind::gen:
      return name();
    case Kind::id:
      return "id" + std::to_string(source_arity());
    case Kind::perm: {
      std::string s = "perm[";
      for (std::size_t i = 0; i < images().size(); ++i) s += (i ? "," : "") + std::to_string(images()[i]);
      return s + "]";
    }
    case Kind::hcomp:
      return "(" + first().to_string() + " x " + second().to_string() + ")";
    case Kind::vcomp:
      return "(" + first().to_string() + " . " + second().to_string() + ")";
  }
  return {};
}

Diagram stack(const std::vector<Diagram>& layers) {
  if (layers.empty()) throw std::invalid_argument("stack of no layers");
  Diagram d = layers.front();
  for (std::size_t i = 1; i < layers.size(); ++i) d = Diagram::vcomp(layers[i], d);
  return d;
}

Diagram juxtapose(const std::vector<Diagram>& parts) {
  if (parts.empty()) return Diagram::id(0);
  Diagram d = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) d = Diagram::hcomp(d, parts[i]);
  return d;
}

Interpretation::Interpretation(SpacePtr space, Signature sig, std::map<std::string, MultiOp> assignment)
    : space_(std::move(space)), sig_(std::move(sig)), assignment_(std::move(assignment)) {
  for (const auto& g : sig_.generators()) {
    auto it = assignment_.find(g.name);
    if (it == assignment_.end()) throw std::invalid_argument("generator '" + g.name + "' is not assigned");
    const MultiOp& op = it->second;
    if (!same_space(op.space(), space_)) throw AmbientMismatch("generator '" + g.name + "': ambient mismatch");
    if (op.source_arity() != g.source_arity || op.target_arity() != g.target_arity || op.degree() != g.degree)
      throw ArityError("generator '" + g.name + "' expects (" + std::to_string(g.source_arity) + "," +
                       std::to_string(g.target_arity) + ") of degree " + std::to_string(g.degree) +
                       ", got (" + std::to_string(op.source_arity()) + "," +
                       std::to_string(op.target_arity()) + ") of degree " + std::to_string(op.degree()));
  }
  for (const auto& [name, op] : assignment_)
    if (!sig_.find(name)) throw std::invalid_argument("assignment for unknown generator '" + name + "'");
}

const MultiOp& Interpretation::at(const std::string& name) const {
  auto it = assignment_.find(name);
  if (it == assignment_.end()) throw std::invalid_argument("unknown generator '" + name + "'");
  return it->second;
}

bool interpretation_equal(const Interpretation& a, const Interpretation& b) {
  if (!same_space(a.space(), b.space()) || !(a.signature() == b.signature())) return false;
  for (const auto& [name, op] : a.assignment())
    if (!op_equal(op, b.at(name))) return false;
  return true;
}

MultiOp evaluate(const Diagram& d, const Interpretation& interp) {
  switch (d.kind()) {
    case Diagram::Kind::gen: {
      const Generator* g = interp.signature().find(d.name());
      if (!g) throw std::invalid_argument("unknown generator '" + d.name() + "'");
      if (g->source_arity != d.source_arity() || g->target_arity != d.target_arity() ||
          g->degree != d.degree())
        throw ArityError("generator '" + d.name() + "' has a different shape in the interpretation");
      return interp.at(d.name());
    }
    case Diagram::Kind::id:
      return identity_op(interp.space(), d.source_arity());
    case Diagram::Kind::perm:
      return permutation_op(d.images(), interp.space());
    case Diagram::Kind::hcomp:
      return horizontal_tensor(evaluate(d.first(), interp), evaluate(d.second(), interp));
    case Diagram::Kind::vcomp:
      return vertical_compose(evaluate(d.first(), interp), evaluate(d.second(), interp));
  }
  throw std::logic_error("bad diagram node");
}

MultiOp tensor_power(const MultiOp& g, unsigned k) {
  if (g.source_arity() != 1 || g.target_arity() != 1) throw ArityError("tensor_power needs a (1,1) operation");
  MultiOp out = identity_op(g.space(), 0);
  for (unsigned i = 0; i < k; ++i) out = horizontal_tensor(out, g);
  return out;
}

MultiOp inverse_op(const MultiOp& g) {
  if (g.source_arity() != 1 || g.target_arity() != 1) throw ArityError("inverse of a non-(1,1) operation");
  if (g.degree() != 0) throw ArityError("inverse of an operation of nonzero degree");
  Matrix inv = g.to_matrix().inverse();
  MultiOp::Builder b(g.space(), 1, 1, 0);
  for (std::size_t r = 0; r < inv.rows(); ++r)
    for (std::size_t c = 0; c < inv.cols(); ++c)
      if (!inv(r, c).is_zero()) b.add(c, r, inv(r, c));
  return b.build();
}

namespace {

// p with the degree-0 map h applied on one tensor axis, either before the
// inputs (p ∘ (id ⊗ h ⊗ id)) or after the outputs ((id ⊗ h ⊗ id) ∘ p).
// Degree 0 makes every Koszul sign of the padding identities trivial.
MultiOp along_axis(const MultiOp& p, const MultiOp& h, unsigned axis, bool on_input) {
  const GradedSpace& s = *p.space();
  const TupleIndex dim = s.dim();
  const unsigned k = on_input ? p.source_arity() : p.target_arity();
  TupleIndex weight = 1;
  for (unsigned i = axis + 1; i < k; ++i) weight *= dim;
  // on_input: basis r of the input factor comes from h(e_j) = Σ h(r,j) e_r, so
  // index h by its output r. Otherwise index it by its input.
  std::vector<std::vector<std::pair<TupleIndex, Scalar>>> by(dim);
  for (const auto& e : h.entries()) {
    if (on_input)
      by[e.out].emplace_back(e.in, e.coeff);
    else
      by[e.in].emplace_back(e.out, e.coeff);
  }
  MultiOp::Builder b(p.space(), p.source_arity(), p.target_arity(), p.degree());
  for (const auto& e : p.entries()) {
    TupleIndex idx = on_input ? e.in : e.out;
    TupleIndex digit = (idx / weight) % dim;
    TupleIndex base = idx - digit * weight;
    for (const auto& [other, c] : by[digit]) {
      TupleIndex moved = base + other * weight;
      if (on_input)
        b.add(moved, e.out, e.coeff * c);
      else
        b.add(e.in, moved, e.coeff * c);
    }
  }
  return b.build();
}

}  // namespace

MultiOp conjugate_op(const MultiOp& p, const MultiOp& g, const MultiOp& g_inverse) {
  if (g.degree() != 0 || g_inverse.degree() != 0 || g.source_arity() != 1 || g.target_arity() != 1)
    throw ArityError("conjugation needs a degree-0 (1,1) map");
  MultiOp out = p;
  for (unsigned a = 0; a < p.source_arity(); ++a) out = along_axis(out, g, a, true);
  for (unsigned a = 0; a < p.target_arity(); ++a) out = along_axis(out, g_inverse, a, false);
  return out;
}

Interpretation conjugate_interpretation(const Interpretation& interp, const MultiOp& g) {
  if (!same_space(g.space(), interp.space())) throw AmbientMismatch("conjugation: ambient mismatch");
  MultiOp g_inverse = inverse_op(g);
  std::map<std::string, MultiOp> out;
  for (const auto& [name, op] : interp.assignment()) out.emplace(name, conjugate_op(op, g, g_inverse));
  return Interpretation(interp.space(), interp.signature(), std::move(out));
}

Conjugator standard_conjugator(const MultiOp& g) {
  MultiOp g_inverse = inverse_op(g);
  return [g, g_inverse](const MultiOp& p) { return conjugate_op(p, g, g_inverse); };
}

bool check_prop_morphism_property(const Conjugator& conj, const std::vector<SamplePair>& samples) {
  for (const auto& [f1, f2] : samples) {
    if (!op_equal(conj(horizontal_tensor(f1, f2)), horizontal_tensor(conj(f1), conj(f2)))) return false;
    if (f1.target_arity() == f2.source_arity() &&
        !op_equal(conj(vertical_compose(f2, f1)), vertical_compose(conj(f2), conj(f1))))
      return false;
  }
  return true;
}

bool check_prop_morphism_property(const MultiOp& g, const std::vector<SamplePair>& samples) {
  return check_prop_morphism_property(standard_conjugator(g), samples);
}

LinearMap linear_map(SpacePtr source, SpacePtr target, Matrix matrix) {
  if (!(source->field() == target->field()) || !(matrix.field() == source->field()))
    throw AmbientMismatch("linear map across different fields");
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
    throw ArityError("linear map matrix has the wrong shape");
  for (std::size_t r = 0; r < matrix.rows(); ++r)
    for (std::size_t c = 0; c < matrix.cols(); ++c)
      if (!matrix(r, c).is_zero() && target->degree(r) != source->degree(c))
        throw ArityError("linear map is not of degree 0");
  return LinearMap{std::move(source), std::move(target), std::move(matrix)};
}

namespace {

std::vector<std::pair<TupleIndex, TupleIndex>> hom_basis(const GradedSpace& s, unsigned m, unsigned n,
                                                         int degree) {
  std::vector<std::pair<TupleIndex, TupleIndex>> out;
  for (TupleIndex in = 0; in < s.tuple_count(m); ++in)
    for (TupleIndex o = 0; o < s.tuple_count(n); ++o)
      if (s.tuple_degree(o, n) == s.tuple_degree(in, m) + degree) out.emplace_back(in, o);
  return out;
}

// Entry of f^{⊗k} from source tuple a to target tuple b. f has degree 0, so
// the tensor power has no signs.
Scalar power_entry(const LinearMap& f, unsigned k, TupleIndex b, TupleIndex a) {
  Scalar c = Scalar::one(f.matrix.field());
  auto bs = f.target->decode(b, k);
  auto as = f.source->decode(a, k);
  for (unsigned i = 0; i < k && !c.is_zero(); ++i) c *= f.matrix(bs[i], as[i]);
  return c;
}

}  // namespace

std::size_t hom_dimension(const GradedSpace& space, unsigned m, unsigned n, int degree) {
  return hom_basis(space, m, n, degree).size();
}

EndOfMapSpace end_of_map_space(const LinearMap& f, unsigned m, unsigned n, int degree) {
  const GradedSpace& X = *f.source;
  const GradedSpace& Y = *f.target;
  const FieldSpec field = X.field();
  auto pb = hom_basis(X, m, n, degree);
  auto qb = hom_basis(Y, m, n, degree);
  const std::size_t np = pb.size(), nq = qb.size();

  // One equation per (a in X^m, b in Y^n):
  //   sum_c p[a->c] f^n(b, c) - sum_e q[e->b] f^m(e, a) = 0.
  const TupleIndex xa = X.tuple_count(m), yb = Y.tuple_count(n);
  Matrix eqs(xa * yb, np + nq, field);
  for (std::size_t k = 0; k < np; ++k) {
    auto [a, c] = pb[k];
    for (TupleIndex b = 0; b < yb; ++b) {
      Scalar v = power_entry(f, n, b, c);
      if (!v.is_zero()) eqs(a * yb + b, k) += v;
    }
  }
  for (std::size_t k = 0; k < nq; ++k) {
    auto [e, b] = qb[k];
    for (TupleIndex a = 0; a < xa; ++a) {
      Scalar v = power_entry(f, m, e, a);
      if (!v.is_zero()) eqs(a * yb + b, np + k) -= v;
    }
  }

  auto kernel = eqs.null_space();
  EndOfMapSpace out{{}, Matrix(np, kernel.size(), field), Matrix(nq, kernel.size(), field)};
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    MultiOp::Builder p(f.source, m, n, degree), q(f.target, m, n, degree);
    for (std::size_t k = 0; k < np; ++k) {
      out.d0(k, j) = kernel[j][k];
      if (!kernel[j][k].is_zero()) p.add(pb[k].first, pb[k].second, kernel[j][k]);
    }
    for (std::size_t k = 0; k < nq; ++k) {
      out.d1(k, j) = kernel[j][np + k];
      if (!kernel[j][np + k].is_zero()) q.add(qb[k].first, qb[k].second, kernel[j][np + k]);
    }
    out.basis.emplace_back(p.build(), q.build());
  }
  return out;
}

}  // namespace frobreal
