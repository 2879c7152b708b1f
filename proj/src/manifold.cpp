#include "frobreal/manifold.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "frobreal/errors.hpp"

namespace frobreal {

ManifoldSpec ManifoldSpec::sphere(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be at least 1");
  return ManifoldSpec(Kind::sphere, n);
}

ManifoldSpec ManifoldSpec::cp(int n) {
  if (n < 1) throw std::invalid_argument("cp dimension must be at least 1");
  return ManifoldSpec(Kind::cp, n);
}

ManifoldSpec ManifoldSpec::surface(int g) {
  if (g < 0) throw std::invalid_argument("surface genus must be non-negative");
  return ManifoldSpec(Kind::surface, g);
}

ManifoldSpec ManifoldSpec::connsum(const ManifoldSpec& left, const ManifoldSpec& right) {
  if (left.top_degree() != right.top_degree())
    throw std::invalid_argument("top degree mismatch " + std::to_string(left.top_degree()) + "≠" +
                                std::to_string(right.top_degree()));
  ManifoldSpec s(Kind::connsum, 0);
  s.left_ = std::make_shared<const ManifoldSpec>(left);
  s.right_ = std::make_shared<const ManifoldSpec>(right);
  return s;
}

int ManifoldSpec::top_degree() const {
  switch (kind_) {
    case Kind::sphere:
      return param_;
    case Kind::cp:
      return 2 * param_;
    case Kind::surface:
      return 2;
    case Kind::connsum:
      return left_->top_degree();
  }
  return 0;
}

std::string ManifoldSpec::to_string() const {
  switch (kind_) {
    case Kind::sphere:
      return "sphere:" + std::to_string(param_);
    case Kind::cp:
      return "cp:" + std::to_string(param_);
    case Kind::surface:
      return "surface:" + std::to_string(param_);
    case Kind::connsum:
      return "connsum(" + left_->to_string() + "," + right_->to_string() + ")";
  }
  return {};
}

namespace {

// Integral model of a graded-commutative ring with explicit products.
struct RingModel {
  std::vector<BasisElement> basis;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, long>> products;
  std::size_t unit = 0;
  std::size_t top = 0;
};

RingModel sphere_model(int n) {
  RingModel r;
  r.basis = {{"1", 0}, {"x", n}};
  r.products = {{{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, {{1, 0}, {1, 1}}};
  r.top = 1;
  return r;
}

RingModel cp_model(int n) {
  RingModel r;
  for (int k = 0; k <= n; ++k)
    r.basis.push_back({k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k), 2 * k});
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) r.products[{std::size_t(i), std::size_t(j)}] = {std::size_t(i + j), 1};
  r.top = std::size_t(n);
  return r;
}

RingModel surface_model(int g, bool ab_positive) {
  RingModel r;
  r.basis.push_back({"1", 0});
  for (int i = 1; i <= g; ++i) {
    r.basis.push_back({"a" + std::to_string(i), 1});
    r.basis.push_back({"b" + std::to_string(i), 1});
  }
  r.basis.push_back({"w", 2});
  r.top = r.basis.size() - 1;
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    r.products[{0, i}] = {i, 1};
    r.products[{i, 0}] = {i, 1};
  }
  const long s = ab_positive ? 1 : -1;
  for (int i = 0; i < g; ++i) {
    std::size_t a = 1 + 2 * i, b = 2 + 2 * i;
    r.products[{a, b}] = {r.top, s};
    r.products[{b, a}] = {r.top, -s};
  }
  return r;
}

RingModel model_of(const ManifoldSpec& spec, const BuildOptions& options);

RingModel connsum_model(const RingModel& left, const RingModel& right) {
  struct Slot {
    int side;
    std::size_t index;
  };
  std::vector<Slot> middle;
  for (int side = 0; side < 2; ++side) {
    const RingModel& r = side == 0 ? left : right;
    for (std::size_t i = 0; i < r.basis.size(); ++i)
      if (i != r.unit && i != r.top) middle.push_back({side, i});
  }
  std::stable_sort(middle.begin(), middle.end(), [&](const Slot& a, const Slot& b) {
    const RingModel& ra = a.side == 0 ? left : right;
    const RingModel& rb = b.side == 0 ? left : right;
    return ra.basis[a.index].degree < rb.basis[b.index].degree;
  });

  RingModel out;
  out.basis.push_back({"1", 0});
  std::map<std::pair<int, std::size_t>, std::size_t> where;
  for (const auto& slot : middle) {
    const RingModel& r = slot.side == 0 ? left : right;
    where[{slot.side, slot.index}] = out.basis.size();
    out.basis.push_back({(slot.side == 0 ? "L." : "R.") + r.basis[slot.index].label, r.basis[slot.index].degree});
  }
  out.basis.push_back({"w", left.basis[left.top].degree});
  out.top = out.basis.size() - 1;
  for (int side = 0; side < 2; ++side) {
    const RingModel& r = side == 0 ? left : right;
    auto map_index = [&](std::size_t i) {
      if (i == r.unit) return out.unit;
      if (i == r.top) return out.top;
      return where.at({side, i});
    };
    for (const auto& [key, value] : r.products)
      out.products[{map_index(key.first), map_index(key.second)}] = {map_index(value.first), value.second};
  }
  return out;
}

RingModel model_of(const ManifoldSpec& spec, const BuildOptions& options) {
  switch (spec.kind()) {
    case ManifoldSpec::Kind::sphere:
      return sphere_model(spec.parameter());
    case ManifoldSpec::Kind::cp:
      return cp_model(spec.parameter());
    case ManifoldSpec::Kind::surface:
      return surface_model(spec.parameter(), options.surface_ab_positive);
    case ManifoldSpec::Kind::connsum:
      return connsum_model(model_of(spec.left(), options), model_of(spec.right(), options));
  }
  throw std::logic_error("bad manifold spec");
}

FrobeniusStructure structure_from_model(const RingModel& r, const FieldSpec& field) {
  auto space = make_space(r.basis, field);
  MultiOp::Builder mu(space, 2, 1, 0), eta(space, 0, 1, 0);
  const int m = r.basis[r.top].degree;
  MultiOp::Builder eps(space, 1, 0, -m);
  for (const auto& [key, value] : r.products) mu.add({key.first, key.second}, {value.first}, value.second);
  eta.add({}, {r.unit}, 1);
  eps.add({r.top}, {}, 1);
  MultiOp mu_op = mu.build(), eta_op = eta.build(), eps_op = eps.build();
  Pairing p = pairing_from_op(vertical_compose(eps_op, mu_op));
  Coproduct c = coproduct_from_pairing(mu_op, eta_op, p);
  return FrobeniusStructure(space, mu_op, eta_op, c.delta, c.eps, m);
}

void verify_built(const FrobeniusStructure& s, const ManifoldSpec& spec) {
  AxiomReport report = check_axioms(s);
  for (const auto& a : report.axioms)
    if (!a.pass)
      throw std::logic_error("constructed structure for " + spec.to_string() + " fails " + a.name);
  if (!report.center.pass) throw std::logic_error("constructed structure for " + spec.to_string() + " fails centrality");
}

}  // namespace

FrobeniusStructure build_structure(const ManifoldSpec& spec, const FieldSpec& field, const BuildOptions& options) {
  FrobeniusStructure s = structure_from_model(model_of(spec, options), FieldSpec::rationals());
  if (!field.is_rationals()) s = reduce_mod_p(s, field.characteristic());
  if (options.verify) verify_built(s, spec);
  return s;
}

std::vector<std::string> build_warnings(const ManifoldSpec& spec, const FieldSpec& field) {
  std::vector<std::string> out;
  if (field.is_rationals() || field.characteristic() != 2) return out;
  auto model = model_of(spec, {});
  for (const auto& b : model.basis)
    if (b.degree % 2 != 0) {
      out.push_back("characteristic 2: squares of odd-degree classes are kept at 0 from the integral model");
      break;
    }
  return out;
}

long euler_characteristic(const GradedSpace& space) {
  long chi = 0;
  for (const auto& [degree, dim] : space.dims_by_degree()) chi += (degree % 2 == 0 ? 1 : -1) * long(dim);
  return chi;
}

long euler_characteristic_formula(const ManifoldSpec& spec) {
  switch (spec.kind()) {
    case ManifoldSpec::Kind::sphere:
      return spec.parameter() % 2 == 0 ? 2 : 0;
    case ManifoldSpec::Kind::cp:
      return spec.parameter() + 1;
    case ManifoldSpec::Kind::surface:
      return 2 - 2L * spec.parameter();
    case ManifoldSpec::Kind::connsum: {
      long glued = spec.top_degree() % 2 == 0 ? 2 : 0;
      return euler_characteristic_formula(spec.left()) + euler_characteristic_formula(spec.right()) - glued;
    }
  }
  return 0;
}

std::size_t top_class(const FrobeniusStructure& s) {
  auto t = find_top_class(s);
  if (!t) throw std::invalid_argument("structure has no fundamental class");
  return *t;
}

FrobeniusStructure reduce_mod_p(const FrobeniusStructure& s, std::uint32_t p) {
  if (!s.field().is_rationals()) throw std::invalid_argument("reduce_mod_p expects a structure over the rationals");
  const FieldSpec target = FieldSpec::prime(p);
  auto space = s.space()->with_field(target);
  auto reduce = [&](const MultiOp& op, const char* name) {
    MultiOp::Builder b(space, op.source_arity(), op.target_arity(), op.degree());
    for (const auto& e : op.entries()) {
      if (!e.coeff.is_integral())
        throw std::invalid_argument(std::string(name) + " has a non-integral structure constant " +
                                    e.coeff.to_string());
      b.add(e.in, e.out, Scalar::from_integer(target, e.coeff.to_rational().get_num()));
    }
    return b.build();
  };
  MultiOp mu = reduce(s.mu(), "mu"), eta = reduce(s.eta(), "eta"), eps = reduce(s.eps(), "eps");
  Pairing pairing = pairing_from_op(vertical_compose(eps, mu));
  if (!is_nondegenerate(pairing)) {
    // Name the degree block whose determinant vanishes.
    const auto& sp = *space;
    const int m = s.coproduct_degree();
    for (const auto& [k, dim] : sp.dims_by_degree()) {
      auto rows = sp.indices_of_degree(k);
      auto cols = sp.indices_of_degree(m - k);
      bool singular = rows.size() != cols.size();
      if (!singular) {
        Matrix block(rows.size(), cols.size(), target);
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < cols.size(); ++j) block(i, j) = pairing.gram(rows[i], cols[j]);
        singular = block.determinant().is_zero();
      }
      if (singular)
        throw DegenerateError("reduced pairing is degenerate mod " + std::to_string(p) + ": Gram block of degrees " +
                              std::to_string(k) + " x " + std::to_string(m - k) + " has vanishing determinant");
    }
    throw DegenerateError("reduced pairing is degenerate mod " + std::to_string(p));
  }
  Coproduct c = coproduct_from_pairing(mu, eta, pairing);
  return FrobeniusStructure(space, mu, eta, c.delta, c.eps, s.coproduct_degree());
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : text_(text) {}

  ManifoldSpec parse() {
    ManifoldSpec s = spec();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return s;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool keyword(const std::string& word) {
    skip();
    if (text_.compare(pos_, word.size(), word) != 0) return false;
    pos_ += word.size();
    return true;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a non-negative integer", start);
    if (pos_ - start > 6) throw ParseError("parameter out of range", start);
    return std::stoi(text_.substr(start, pos_ - start));
  }

  template <typename F>
  ManifoldSpec with_parameter(F make) {
    expect(':');
    skip();
    std::size_t at = pos_;
    int n = integer();
    try {
      return make(n);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
  }

  ManifoldSpec spec() {
    skip();
    std::size_t start = pos_;
    if (keyword("sphere")) return with_parameter(ManifoldSpec::sphere);
    if (keyword("surface")) return with_parameter(ManifoldSpec::surface);
    if (keyword("connsum")) {
      expect('(');
      ManifoldSpec a = spec();
      expect(',');
      ManifoldSpec b = spec();
      expect(')');
      try {
        return ManifoldSpec::connsum(a, b);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), start);
      }
    }
    if (keyword("cp")) return with_parameter(ManifoldSpec::cp);
    throw ParseError("expected sphere, cp, surface or connsum", start);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

ManifoldSpec parse_spec(const std::string& text) { return SpecParser(text).parse(); }

}  // namespace frobreal
