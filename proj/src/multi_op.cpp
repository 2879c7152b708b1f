#include "frobreal/multi_op.hpp"

#include <algorithm>
#include <stdexcept>

#include "frobreal/errors.hpp"

namespace frobreal {

namespace {

void require_same_space(const MultiOp& a, const MultiOp& b, const char* what) {
  if (!same_space(a.space(), b.space())) throw AmbientMismatch(std::string(what) + ": ambient mismatch");
}

bool odd(long x) { return (x % 2) != 0; }

}  // namespace

MultiOp::Builder::Builder(SpacePtr space, unsigned source_arity, unsigned target_arity, int degree)
    : space_(std::move(space)), m_(source_arity), n_(target_arity), degree_(degree) {
  space_->tuple_count(m_);
  space_->tuple_count(n_);
}

MultiOp::Builder& MultiOp::Builder::add(TupleIndex in, TupleIndex out, const Scalar& coeff) {
  if (in >= space_->tuple_count(m_) || out >= space_->tuple_count(n_))
    throw std::out_of_range("tuple index out of range");
  auto [it, inserted] = acc_.try_emplace({in, out}, coeff);
  if (!inserted) it->second += coeff;
  return *this;
}

MultiOp::Builder& MultiOp::Builder::add(const std::vector<std::size_t>& in,
                                        const std::vector<std::size_t>& out, const Scalar& coeff) {
  if (in.size() != m_ || out.size() != n_) throw ArityError("tuple length does not match arity");
  return add(space_->encode(in), space_->encode(out), coeff);
}

MultiOp::Builder& MultiOp::Builder::add(const std::vector<std::string>& in,
                                        const std::vector<std::string>& out, const Scalar& coeff) {
  auto lookup = [&](const std::vector<std::string>& labels) {
    std::vector<std::size_t> t;
    for (const auto& l : labels) {
      auto i = space_->index_of(l);
      if (!i) throw std::invalid_argument("unknown basis label '" + l + "'");
      t.push_back(*i);
    }
    return t;
  };
  return add(lookup(in), lookup(out), coeff);
}

MultiOp::Builder& MultiOp::Builder::add(const std::vector<std::size_t>& in,
                                        const std::vector<std::size_t>& out, long coeff) {
  return add(in, out, Scalar::from_integer(space_->field(), coeff));
}

MultiOp MultiOp::Builder::build() const {
  std::vector<Entry> entries;
  entries.reserve(acc_.size());
  for (const auto& [key, c] : acc_)
    if (!c.is_zero()) entries.push_back(Entry{key.first, key.second, c});
  return MultiOp(space_, m_, n_, degree_, std::move(entries));
}

MultiOp::MultiOp(SpacePtr space, unsigned m, unsigned n, int degree, std::vector<Entry> entries)
    : space_(std::move(space)), m_(m), n_(n), degree_(degree), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.coeff.field() != space_->field()) throw std::logic_error("coefficient field mismatch");
    int din = space_->tuple_degree(e.in, m_);
    int dout = space_->tuple_degree(e.out, n_);
    if (dout != din + degree_)
      throw ArityError("non-homogeneous entry " + std::to_string(e.in) + "->" + std::to_string(e.out) +
                       ": degree " + std::to_string(din) + " to " + std::to_string(dout) +
                       " in an operation of degree " + std::to_string(degree_));
  }
}

std::vector<std::pair<TupleIndex, Scalar>> MultiOp::apply(TupleIndex in) const {
  std::vector<std::pair<TupleIndex, Scalar>> out;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), in,
                             [](const Entry& e, TupleIndex key) { return e.in < key; });
  for (; it != entries_.end() && it->in == in; ++it) out.emplace_back(it->out, it->coeff);
  return out;
}

std::vector<std::pair<TupleIndex, Scalar>> MultiOp::apply(const std::vector<std::size_t>& in) const {
  if (in.size() != m_) throw ArityError("input tuple length does not match source arity");
  return apply(space_->encode(in));
}

Scalar MultiOp::coefficient(TupleIndex in, TupleIndex out) const {
  for (const auto& [o, c] : apply(in))
    if (o == out) return c;
  return Scalar::zero(field());
}

MultiOp MultiOp::scaled(const Scalar& factor) const {
  std::vector<Entry> entries;
  if (!factor.is_zero())
    for (const auto& e : entries_) entries.push_back(Entry{e.in, e.out, e.coeff * factor});
  return MultiOp(space_, m_, n_, degree_, std::move(entries));
}

MultiOp MultiOp::operator-() const { return scaled(-Scalar::one(field())); }

MultiOp MultiOp::operator+(const MultiOp& other) const {
  require_same_space(*this, other, "sum");
  if (m_ != other.m_ || n_ != other.n_ || degree_ != other.degree_)
    throw ArityError("sum of operations with different arity or degree");
  Builder b(space_, m_, n_, degree_);
  for (const auto& e : entries_) b.add(e.in, e.out, e.coeff);
  for (const auto& e : other.entries_) b.add(e.in, e.out, e.coeff);
  return b.build();
}

MultiOp MultiOp::operator-(const MultiOp& other) const { return *this + (-other); }

Matrix MultiOp::to_matrix() const {
  Matrix m(space_->tuple_count(n_), space_->tuple_count(m_), field());
  for (const auto& e : entries_) m(e.out, e.in) = e.coeff;
  return m;
}

MultiOp identity_op(const SpacePtr& space, unsigned k) {
  MultiOp::Builder b(space, k, k, 0);
  Scalar one = Scalar::one(space->field());
  for (TupleIndex t = 0; t < space->tuple_count(k); ++t) b.add(t, t, one);
  return b.build();
}

MultiOp vertical_compose(const MultiOp& g, const MultiOp& f) {
  require_same_space(g, f, "vertical_compose");
  if (f.target_arity() != g.source_arity())
    throw ArityError("vertical_compose: target arity " + std::to_string(f.target_arity()) +
                     " of the lower operation does not match source arity " +
                     std::to_string(g.source_arity()) + " of the upper operation");
  MultiOp::Builder b(f.space(), f.source_arity(), g.target_arity(), f.degree() + g.degree());
  const auto& ge = g.entries();
  for (const auto& e : f.entries()) {
    auto it = std::lower_bound(ge.begin(), ge.end(), e.out,
                               [](const MultiOp::Entry& x, TupleIndex key) { return x.in < key; });
    for (; it != ge.end() && it->in == e.out; ++it) b.add(e.in, it->out, e.coeff * it->coeff);
  }
  return b.build();
}

MultiOp horizontal_tensor(const MultiOp& f, const MultiOp& g) {
  require_same_space(f, g, "horizontal_tensor");
  const auto& space = f.space();
  const TupleIndex in_radix = space->tuple_count(g.source_arity());
  const TupleIndex out_radix = space->tuple_count(g.target_arity());
  space->tuple_count(f.source_arity() + g.source_arity());
  space->tuple_count(f.target_arity() + g.target_arity());
  MultiOp::Builder b(space, f.source_arity() + g.source_arity(), f.target_arity() + g.target_arity(),
                     f.degree() + g.degree());
  const bool g_odd = odd(g.degree());
  for (const auto& ef : f.entries()) {
    const bool flip = g_odd && odd(space->tuple_degree(ef.in, f.source_arity()));
    for (const auto& eg : g.entries()) {
      Scalar c = ef.coeff * eg.coeff;
      b.add(ef.in * in_radix + eg.in, ef.out * out_radix + eg.out, flip ? -c : c);
    }
  }
  return b.build();
}

bool is_permutation(const std::vector<std::size_t>& images) {
  std::vector<bool> hit(images.size(), false);
  for (auto i : images) {
    if (i >= images.size() || hit[i]) return false;
    hit[i] = true;
  }
  return true;
}

std::vector<std::size_t> compose_permutations(const std::vector<std::size_t>& sigma,
                                              const std::vector<std::size_t>& rho) {
  if (sigma.size() != rho.size()) throw ArityError("composing permutations of different sizes");
  std::vector<std::size_t> out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = sigma.at(rho[i]);
  return out;
}

MultiOp permutation_op(const std::vector<std::size_t>& images, const SpacePtr& space) {
  if (!is_permutation(images)) throw std::invalid_argument("not a permutation");
  const unsigned k = static_cast<unsigned>(images.size());
  MultiOp::Builder b(space, k, k, 0);
  const FieldSpec& field = space->field();
  for (TupleIndex t = 0; t < space->tuple_count(k); ++t) {
    auto u = space->decode(t, k);
    std::vector<std::size_t> w(k);
    bool negative = false;
    for (unsigned i = 0; i < k; ++i) {
      w[images[i]] = u[i];
      for (unsigned j = i + 1; j < k; ++j)
        if (images[i] > images[j] && odd(space->degree(u[i])) && odd(space->degree(u[j])))
          negative = !negative;
    }
    b.add(t, space->encode(w), negative ? -Scalar::one(field) : Scalar::one(field));
  }
  return b.build();
}

MultiOp symmetry_op(const SpacePtr& space) { return permutation_op({1, 0}, space); }

MultiOp element_op(const SpacePtr& space, std::size_t i, const Scalar& coeff) {
  MultiOp::Builder b(space, 0, 1, space->degree(i));
  b.add(0, i, coeff);
  return b.build();
}

OpComparison op_compare(const MultiOp& f, const MultiOp& g) {
  if (!same_space(f.space(), g.space())) return {false, "ambient mismatch"};
  if (f.source_arity() != g.source_arity() || f.target_arity() != g.target_arity())
    return {false, "arity mismatch: (" + std::to_string(f.source_arity()) + "," +
                       std::to_string(f.target_arity()) + ") vs (" + std::to_string(g.source_arity()) +
                       "," + std::to_string(g.target_arity()) + ")"};
  if (f.degree() != g.degree())
    return {false, "degree mismatch: " + std::to_string(f.degree()) + " vs " + std::to_string(g.degree())};
  const auto& a = f.entries();
  const auto& b = g.entries();
  std::size_t i = 0, j = 0;
  const auto& space = *f.space();
  auto describe = [&](TupleIndex in) {
    std::string s = "(";
    for (const auto& l : space.tuple_labels(in, f.source_arity())) s += (s.size() > 1 ? "," : "") + l;
    return s + ")";
  };
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i].in == b[j].in && a[i].out == b[j].out) {
      if (!(a[i].coeff == b[j].coeff)) return {false, "coefficient mismatch on input " + describe(a[i].in)};
      ++i, ++j;
      continue;
    }
    bool a_first = j == b.size() ||
                   (i < a.size() && std::pair(a[i].in, a[i].out) < std::pair(b[j].in, b[j].out));
    return {false, "entry mismatch on input " + describe(a_first ? a[i].in : b[j].in)};
  }
  return {true, {}};
}

bool op_equal(const MultiOp& f, const MultiOp& g) { return op_compare(f, g).equal; }

}  // namespace frobreal
