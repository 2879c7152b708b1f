#include "frobreal/aut.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "frobreal/errors.hpp"

namespace frobreal {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

u64 checked_mul(u64 a, u64 b) {
  if (b != 0 && a > std::numeric_limits<u64>::max() / b) throw std::overflow_error("group order exceeds 64 bits");
  return a * b;
}

u64 checked_pow(u64 q, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, q);
  return r;
}

u32 residue(const Scalar& s) { return static_cast<u32>(s.to_rational().get_num().get_ui()); }

// Residue arithmetic with Barrett reduction.
struct Fp {
  u32 p;
  u64 m;
  explicit Fp(u32 prime) : p(prime), m(~u64{0} / prime) {}
  u32 reduce(u64 x) const {
    u64 q = static_cast<u64>((static_cast<unsigned __int128>(x) * m) >> 64);
    u64 r = x - q * p;
    while (r >= p) r -= p;
    return static_cast<u32>(r);
  }
  u32 mul(u32 a, u32 b) const { return reduce(static_cast<u64>(a) * b); }
  u32 add(u32 a, u32 b) const {
    u32 s = a + b;
    return s >= p ? s - p : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
  u32 pow(u32 a, u64 e) const {
    u32 r = 1 % p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u32 inv(u32 a) const { return pow(a, p - 2); }
};

void require_prime_field(const GradedSpace& space, const char* what) {
  if (space.field().is_rationals()) throw std::invalid_argument(std::string(what) + " needs a prime field");
}

u32 prime_of(const GradedSpace& space, const char* what) {
  require_prime_field(space, what);
  return space.field().characteristic();
}

u32 det_mod(std::vector<u32> a, std::size_t d, const Fp& F) {
  u32 det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv * d + c] == 0) ++piv;
    if (piv == d) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < d; ++k) std::swap(a[piv * d + k], a[c * d + k]);
      det = F.neg(det);
    }
    det = F.mul(det, a[c * d + c]);
    u32 iv = F.inv(a[c * d + c]);
    for (std::size_t r = c + 1; r < d; ++r) {
      u32 f = F.mul(a[r * d + c], iv);
      if (f == 0) continue;
      for (std::size_t k = c; k < d; ++k) a[r * d + k] = F.sub(a[r * d + k], F.mul(f, a[c * d + k]));
    }
  }
  return det;
}

// Blocks of a graded basis, in degree order.
struct BlockLayout {
  std::vector<int> degrees;
  std::vector<std::vector<std::size_t>> indices;
  std::vector<std::size_t> block_of;

  explicit BlockLayout(const GradedSpace& space) : block_of(space.dim()) {
    for (const auto& [deg, d] : space.dims_by_degree()) {
      (void)d;
      degrees.push_back(deg);
      indices.push_back(space.indices_of_degree(deg));
      for (std::size_t i : indices.back()) block_of[i] = indices.size() - 1;
    }
  }
  std::optional<std::size_t> block_of_degree(int deg) const {
    auto it = std::lower_bound(degrees.begin(), degrees.end(), deg);
    if (it == degrees.end() || *it != deg) return std::nullopt;
    return static_cast<std::size_t>(it - degrees.begin());
  }
};

std::string naive_estimate(const GradedSpace& space) {
  try {
    return std::to_string(graded_linear_order(space, space.field().characteristic()));
  } catch (const std::overflow_error&) {
    return "more than 2^64";
  }
}

}  // namespace

std::uint64_t gl_order(unsigned d, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  u64 qd = checked_pow(q, d);
  u64 r = 1;
  for (unsigned k = 0; k < d; ++k) r = checked_mul(r, qd - checked_pow(q, k));
  return r;
}

std::uint64_t sp_order(unsigned g, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  u64 r = checked_pow(q, g * g);
  for (unsigned i = 1; i <= g; ++i) r = checked_mul(r, checked_pow(q, 2 * i) - 1);
  return r;
}

std::uint64_t gsp_order(unsigned g, std::uint64_t q) { return checked_mul(q - 1, sp_order(g, q)); }

std::uint64_t graded_linear_order(const GradedSpace& space, std::uint64_t q) {
  if (!space.field().is_rationals() && space.field().characteristic() != q)
    throw std::invalid_argument("q does not match the characteristic of the space");
  u64 r = 1;
  for (const auto& [deg, d] : space.dims_by_degree()) {
    (void)deg;
    r = checked_mul(r, gl_order(static_cast<unsigned>(d), q));
  }
  return r;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("FROBREAL_BUDGET")) {
    std::string text(env);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || v == 0)
      throw std::invalid_argument("FROBREAL_BUDGET must be a positive integer, got '" + text + "'");
    return v;
  }
  return 100'000'000ULL;
}

// ---------------------------------------------------------------------------
// GradedAutomorphism

GradedAutomorphism::GradedAutomorphism(SpacePtr space, std::vector<std::uint32_t> matrix)
    : space_(std::move(space)), m_(std::move(matrix)) {
  require_prime_field(*space_, "GradedAutomorphism");
  const std::size_t n = space_->dim();
  const u32 p = space_->field().characteristic();
  if (m_.size() != n * n) throw std::invalid_argument("automorphism matrix has the wrong size");
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      u32 v = m_[r * n + c];
      if (v >= p) throw std::invalid_argument("automorphism entry is not a canonical residue");
      if (v != 0 && space_->degree(r) != space_->degree(c))
        throw ArityError("automorphism does not preserve degrees: entry (" + space_->label(r) + ", " +
                         space_->label(c) + ")");
    }
  Fp F{p};
  BlockLayout layout(*space_);
  for (const auto& idx : layout.indices) {
    const std::size_t d = idx.size();
    std::vector<u32> block(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        block[r * d + c] = m_[idx[r] * n + idx[c]];
        key_.push_back(block[r * d + c]);
      }
    if (det_mod(block, d, F) == 0)
      throw DegenerateError("automorphism block of degree " + std::to_string(space_->degree(idx[0])) +
                            " is singular");
  }
}

GradedAutomorphism GradedAutomorphism::identity(const SpacePtr& space) {
  const std::size_t n = space->dim();
  std::vector<u32> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return GradedAutomorphism(space, std::move(m));
}

GradedAutomorphism GradedAutomorphism::from_op(const MultiOp& g) {
  if (g.source_arity() != 1 || g.target_arity() != 1 || g.degree() != 0)
    throw ArityError("automorphism must be a degree-0 (1,1) operation");
  const std::size_t n = g.space()->dim();
  std::vector<u32> m(n * n, 0);
  for (const auto& e : g.entries()) m[e.out * n + e.in] = residue(e.coeff);
  return GradedAutomorphism(g.space(), std::move(m));
}

std::vector<std::pair<int, Matrix>> GradedAutomorphism::blocks() const {
  BlockLayout layout(*space_);
  std::vector<std::pair<int, Matrix>> out;
  const std::size_t n = dim();
  for (std::size_t b = 0; b < layout.indices.size(); ++b) {
    const auto& idx = layout.indices[b];
    Matrix mat(idx.size(), idx.size(), space_->field());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        mat(r, c) = Scalar::from_integer(space_->field(), static_cast<long>(m_[idx[r] * n + idx[c]]));
    out.emplace_back(layout.degrees[b], std::move(mat));
  }
  return out;
}

GradedAutomorphism GradedAutomorphism::compose(const GradedAutomorphism& other) const {
  if (!same_space(space_, other.space_)) throw AmbientMismatch("automorphisms live on different spaces");
  const std::size_t n = dim();
  Fp F{space_->field().characteristic()};
  std::vector<u32> out(n * n, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      u32 a = m_[r * n + k];
      if (a == 0) continue;
      for (std::size_t c = 0; c < n; ++c) out[r * n + c] = F.add(out[r * n + c], F.mul(a, other.m_[k * n + c]));
    }
  return GradedAutomorphism(space_, std::move(out));
}

GradedAutomorphism GradedAutomorphism::inverse() const {
  BlockLayout layout(*space_);
  const std::size_t n = dim();
  std::vector<u32> out(n * n, 0);
  auto bl = blocks();
  for (std::size_t b = 0; b < bl.size(); ++b) {
    Matrix inv = bl[b].second.inverse();
    const auto& idx = layout.indices[b];
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) out[idx[r] * n + idx[c]] = residue(inv(r, c));
  }
  return GradedAutomorphism(space_, std::move(out));
}

MultiOp GradedAutomorphism::to_op() const {
  MultiOp::Builder b(space_, 1, 1, 0);
  const std::size_t n = dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (m_[r * n + c] != 0)
        b.add(static_cast<TupleIndex>(c), static_cast<TupleIndex>(r),
              Scalar::from_integer(space_->field(), static_cast<long>(m_[r * n + c])));
  return b.build();
}

std::string GradedAutomorphism::to_string() const {
  std::ostringstream os;
  const std::size_t n = dim();
  os << '[';
  for (std::size_t r = 0; r < n; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < n; ++c) os << (c ? "," : "") << m_[r * n + c];
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<GradedAutomorphism> enumerate_graded_linear(const SpacePtr& space, std::uint64_t budget) {
  require_prime_field(*space, "enumerate_graded_linear");
  const u32 p = space->field().characteristic();
  Fp F{p};
  u64 order = graded_linear_order(*space, p);
  if (order > budget)
    throw BudgetExceeded("graded linear group has " + std::to_string(order) + " elements, budget is " +
                             std::to_string(budget),
                         0, budget);
  BlockLayout layout(*space);
  u64 work = 0;
  std::vector<std::vector<std::vector<u32>>> per_block;
  for (const auto& idx : layout.indices) {
    const std::size_t d = idx.size();
    u64 total = checked_pow(p, static_cast<unsigned>(d * d));
    work += total;
    if (work > budget)
      throw BudgetExceeded("block enumeration needs " + std::to_string(work) + " candidates, budget is " +
                               std::to_string(budget),
                           work, budget);
    std::vector<std::vector<u32>> mats;
    std::vector<u32> a(d * d, 0);
    for (u64 t = 0; t < total; ++t) {
      if (det_mod(a, d, F) != 0) mats.push_back(a);
      for (std::size_t k = d * d; k-- > 0;) {
        if (++a[k] < p) break;
        a[k] = 0;
      }
    }
    per_block.push_back(std::move(mats));
  }
  const std::size_t n = space->dim();
  std::vector<GradedAutomorphism> out;
  out.reserve(order);
  std::vector<std::size_t> pick(per_block.size(), 0);
  for (u64 t = 0; t < order; ++t) {
    std::vector<u32> m(n * n, 0);
    for (std::size_t b = 0; b < per_block.size(); ++b) {
      const auto& idx = layout.indices[b];
      const auto& blk = per_block[b][pick[b]];
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) m[idx[r] * n + idx[c]] = blk[r * idx.size() + c];
    }
    out.emplace_back(space, std::move(m));
    for (std::size_t b = per_block.size(); b-- > 0;) {
      if (++pick[b] < per_block[b].size()) break;
      pick[b] = 0;
    }
  }
  return out;
}

bool preserves_algebra(const FrobeniusStructure& s, const GradedAutomorphism& g) {
  MultiOp G = g.to_op();
  return op_equal(vertical_compose(G, s.mu()), vertical_compose(s.mu(), horizontal_tensor(G, G))) &&
         op_equal(vertical_compose(G, s.eta()), s.eta());
}

bool preserves_frobenius(const FrobeniusStructure& s, const GradedAutomorphism& g) {
  if (!preserves_algebra(s, g)) return false;
  MultiOp G = g.to_op();
  return op_equal(vertical_compose(horizontal_tensor(G, G), s.delta()), vertical_compose(s.delta(), G)) &&
         op_equal(vertical_compose(s.eps(), G), s.eps());
}

// ---------------------------------------------------------------------------
// Automorphism search over F_p on dense residue arrays.

namespace {

struct Model {
  std::size_t n;
  Fp F;
  bool small;  // p < 2^16: products of residues can be summed before reducing
  BlockLayout layout;
  std::vector<int> deg;
  std::vector<u32> mu;  // mu[(a*n+b)*n+r]
  std::vector<std::vector<std::pair<std::size_t, u32>>> mu_terms;
  std::vector<u32> eta, eps;
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, u32>>> delta_terms;

  explicit Model(const FrobeniusStructure& s)
      : n(s.space()->dim()), F{prime_of(*s.space(), "automorphism enumeration")}, small(F.p < 65536),
        layout(*s.space()) {
    if (F.p < 256) {
      table.resize(static_cast<std::size_t>(F.p) * F.p);
      for (u32 a = 0; a < F.p; ++a)
        for (u32 b = 0; b < F.p; ++b) table[a * F.p + b] = static_cast<std::uint8_t>(F.mul(a, b));
    }
    const auto& sp = *s.space();
    for (std::size_t i = 0; i < n; ++i) deg.push_back(sp.degree(i));
    mu.assign(n * n * n, 0);
    mu_terms.resize(n * n);
    for (const auto& e : s.mu().entries()) {
      auto in = sp.decode(e.in, 2);
      u32 c = residue(e.coeff);
      mu[(in[0] * n + in[1]) * n + e.out] = c;
      mu_terms[in[0] * n + in[1]].emplace_back(e.out, c);
    }
    eta.assign(n, 0);
    for (const auto& e : s.eta().entries()) eta[e.out] = residue(e.coeff);
    eps.assign(n, 0);
    for (const auto& e : s.eps().entries()) eps[e.in] = residue(e.coeff);
    delta_terms.resize(n);
    for (const auto& e : s.delta().entries()) {
      auto out = sp.decode(e.out, 2);
      delta_terms[e.in].emplace_back(out[0], out[1], residue(e.coeff));
    }
  }

  std::vector<std::uint8_t> table;  // products for p < 256

  u32 mul(u32 a, u32 b) const { return table.empty() ? F.mul(a, b) : table[a * F.p + b]; }
  u32 reduce(u64 acc) const { return F.reduce(acc); }
  void mac(u64& acc, u32 a, u32 b) const {
    acc += static_cast<u64>(a) * b;
    if (!small) acc = F.reduce(acc);
  }
};

struct LinearConstraint {
  std::size_t other;
  bool other_left;                                   // μ(col_other, v) versus μ(v, col_other)
  std::vector<std::pair<std::size_t, u32>> terms;    // μ(e_i, e_j) with the free column excluded
  u32 self_coeff;                                    // coefficient of e_j in μ(e_i, e_j)
  std::size_t target_block;
};

struct Step {
  enum class Kind { unit, forced, free } kind;
  std::size_t col;
  std::size_t i = 0, j = 0;  // forced: col = c_inv · μ(col_i, col_j)
  u32 c_inv = 0;
  std::vector<LinearConstraint> linear;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> checks;  // (a, b, target block)
};

class Search {
 public:
  using Leaf = std::function<void(const std::vector<u32>&)>;  // column-major

  Search(const Model& m, u64 budget, std::string estimate)
      : M(m), budget_(budget), estimate_(std::move(estimate)) {
    schedule();
    scratch_.resize(steps_.size());
    G_.assign(M.n * M.n, 0);
    ech_.resize(M.layout.indices.size());
    for (std::size_t b = 0; b < ech_.size(); ++b) {
      std::size_t d = M.layout.indices[b].size();
      ech_[b].rows.assign(d * d, 0);
      ech_[b].piv.assign(d, 0);
    }
  }

  u64 run(const Leaf& leaf) {
    leaf_ = &leaf;
    candidates_ = 0;
    go(0);
    return candidates_;
  }

  u64 candidates() const { return candidates_; }

 private:
  // Per-step buffers; each step occupies one recursion level.
  struct Scratch {
    std::vector<u32> A, t, x;
    std::vector<std::size_t> pivots, freev;
  };

  struct Echelon {
    std::vector<u32> rows;
    std::vector<std::size_t> piv;
    std::size_t count = 0;
  };

  const Model& M;
  u64 budget_;
  std::string estimate_;
  std::vector<Step> steps_;
  bool eta_at_leaf_ = false;
  std::vector<u32> G_;
  std::vector<Echelon> ech_;
  std::vector<Scratch> scratch_;
  const Leaf* leaf_ = nullptr;
  u64 candidates_ = 0;

  u32 col(std::size_t j, std::size_t r) const { return G_[j * M.n + r]; }

  void schedule() {
    const std::size_t n = M.n;
    std::vector<bool> assigned(n, false);
    std::vector<bool> settled(n * n, false);  // pair satisfied by construction or already checked
    std::vector<std::size_t> unit_cols;

    auto close_checks = [&](Step& st) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (settled[a * n + b] || !assigned[a] || !assigned[b]) continue;
          bool ready = true;
          for (const auto& [k, c] : M.mu_terms[a * n + b]) {
            (void)c;
            ready = ready && assigned[k];
          }
          if (!ready) continue;
          settled[a * n + b] = true;
          auto tb = M.layout.block_of_degree(M.deg[a] + M.deg[b]);
          if (tb) st.checks.emplace_back(a, b, *tb);
        }
    };

    std::vector<std::size_t> eta_support;
    for (std::size_t i = 0; i < n; ++i)
      if (M.eta[i] != 0) eta_support.push_back(i);
    if (eta_support.size() == 1) {
      Step st{Step::Kind::unit, eta_support[0], 0, 0, 0, {}, {}};
      assigned[st.col] = true;
      unit_cols.push_back(st.col);
      close_checks(st);
      steps_.push_back(std::move(st));
    } else {
      eta_at_leaf_ = true;
    }

    while (std::find(assigned.begin(), assigned.end(), false) != assigned.end()) {
      bool forced = false;
      for (std::size_t a = 0; a < n && !forced; ++a)
        for (std::size_t b = 0; b < n && !forced; ++b) {
          const auto& t = M.mu_terms[a * n + b];
          if (!assigned[a] || !assigned[b] || t.size() != 1 || assigned[t[0].first]) continue;
          Step st{Step::Kind::forced, t[0].first, a, b, M.F.inv(t[0].second), {}, {}};
          assigned[st.col] = true;
          settled[a * n + b] = true;
          close_checks(st);
          steps_.push_back(std::move(st));
          forced = true;
        }
      if (forced) continue;

      std::size_t j = static_cast<std::size_t>(std::find(assigned.begin(), assigned.end(), false) - assigned.begin());
      Step st{Step::Kind::free, j, 0, 0, 0, {}, {}};
      for (std::size_t i = 0; i < n; ++i) {
        if (!assigned[i]) continue;
        for (bool left : {true, false}) {
          std::size_t pa = left ? i : j, pb = left ? j : i;
          const auto& t = M.mu_terms[pa * n + pb];
          bool ready = true;
          for (const auto& [k, c] : t) {
            (void)c;
            ready = ready && (assigned[k] || k == j);
          }
          if (!ready) continue;
          settled[pa * n + pb] = true;
          auto tb = M.layout.block_of_degree(M.deg[i] + M.deg[j]);
          if (!tb) continue;  // both sides vanish for degree reasons
          LinearConstraint lc{i, left, {}, 0, *tb};
          for (const auto& [k, c] : t) {
            if (k == j)
              lc.self_coeff = c;
            else
              lc.terms.emplace_back(k, c);
          }
          if (trivial_on_units(lc, j, unit_cols)) continue;
          if (!left && !st.linear.empty() && st.linear.back().other == i && st.linear.back().other_left &&
              proportional(st.linear.back(), lc, j))
            continue;
          st.linear.push_back(std::move(lc));
        }
      }
      assigned[j] = true;
      close_checks(st);
      steps_.push_back(std::move(st));
    }
  }

  // True when the μ(v, col_i) equation is a fixed multiple of the μ(col_i, v)
  // one for every value of the columns, so it carries no information.
  bool proportional(const LinearConstraint& l, const LinearConstraint& r, std::size_t j) const {
    const std::size_t n = M.n;
    const auto& io = M.layout.indices[M.layout.block_of[l.other]];
    const auto& vars = M.layout.indices[M.layout.block_of[j]];
    std::optional<u32> lambda;
    auto match = [&](u32 x, u32 y) {  // require y = λ x
      if (x == 0) return y == 0;
      u32 q = M.F.mul(y, M.F.inv(x));
      if (!lambda) lambda = q;
      return *lambda == q;
    };
    for (std::size_t t : M.layout.indices[l.target_block])
      for (std::size_t a : io)
        for (std::size_t sv : vars)
          if (!match(M.mu[(a * n + sv) * n + t], M.mu[(sv * n + a) * n + t])) return false;
    if (!match(l.self_coeff, r.self_coeff)) return false;
    std::map<std::size_t, std::pair<u32, u32>> terms;
    for (const auto& [k, c] : l.terms) terms[k].first = c;
    for (const auto& [k, c] : r.terms) terms[k].second = c;
    for (const auto& [k, cc] : terms)
      if (!match(cc.first, cc.second)) return false;
    return true;
  }

  // A constraint against a unit column whose value is fixed to e_u can be
  // decided once, without knowing v.
  bool trivial_on_units(const LinearConstraint& lc, std::size_t j, const std::vector<std::size_t>& unit_cols) const {
    auto is_unit = [&](std::size_t k) { return std::find(unit_cols.begin(), unit_cols.end(), k) != unit_cols.end(); };
    if (!is_unit(lc.other)) return false;
    for (const auto& [k, c] : lc.terms) {
      (void)c;
      if (!is_unit(k)) return false;
    }
    const std::size_t n = M.n, u = lc.other;
    const auto& rows = M.layout.indices[lc.target_block];
    const auto& vars = M.layout.indices[M.layout.block_of[j]];
    for (std::size_t r : rows) {
      for (std::size_t s : vars) {
        u32 a = lc.other_left ? M.mu[(u * n + s) * n + r] : M.mu[(s * n + u) * n + r];
        if (r == s) a = M.F.sub(a, lc.self_coeff);
        if (a != 0) return false;
      }
      u32 b = 0;
      for (const auto& [k, c] : lc.terms)
        if (k == r) b = M.F.add(b, c);
      if (b != 0) return false;
    }
    return true;
  }

  void count_candidate() {
    if (++candidates_ > budget_)
      throw BudgetExceeded("automorphism search exceeded the budget of " + std::to_string(budget_) +
                               " candidate evaluations (naive candidate count " + estimate_ + ")",
                           candidates_, budget_);
  }

  bool push_independent(std::size_t j) {
    std::size_t b = M.layout.block_of[j];
    const auto& idx = M.layout.indices[b];
    const std::size_t d = idx.size();
    Echelon& e = ech_[b];
    u32* row = &e.rows[e.count * d];
    for (std::size_t t = 0; t < d; ++t) row[t] = col(j, idx[t]);
    for (std::size_t k = 0; k < e.count; ++k) {
      u32 f = row[e.piv[k]];
      if (f == 0) continue;
      const u32* w = &e.rows[k * d];
      for (std::size_t t = 0; t < d; ++t) row[t] = M.F.sub(row[t], M.mul(f, w[t]));
    }
    std::size_t pv = 0;
    while (pv < d && row[pv] == 0) ++pv;
    if (pv == d) return false;
    if (e.count + 1 == d) {  // block complete; the row is never reused
      e.piv[e.count++] = pv;
      return true;
    }
    u32 iv = M.F.inv(row[pv]);
    for (std::size_t t = 0; t < d; ++t) row[t] = M.mul(row[t], iv);
    e.piv[e.count++] = pv;
    return true;
  }

  void pop_independent(std::size_t j) { --ech_[M.layout.block_of[j]].count; }

  void clear_col(std::size_t j) { std::fill(G_.begin() + j * M.n, G_.begin() + (j + 1) * M.n, 0); }

  // μ(col_a, col_b)[r] for r in the target block, compared with Σ c col_k[r].
  bool pair_holds(std::size_t a, std::size_t b, std::size_t tb) const {
    const std::size_t n = M.n;
    const auto& ia = M.layout.indices[M.layout.block_of[a]];
    const auto& ib = M.layout.indices[M.layout.block_of[b]];
    for (std::size_t r : M.layout.indices[tb]) {
      u64 lhs = 0;
      for (std::size_t x : ia) {
        u32 ga = col(a, x);
        if (ga == 0) continue;
        u64 inner = 0;
        for (std::size_t y : ib) M.mac(inner, col(b, y), M.mu[(x * n + y) * n + r]);
        M.mac(lhs, ga, M.reduce(inner));
      }
      u64 rhs = 0;
      for (const auto& [k, c] : M.mu_terms[a * n + b]) M.mac(rhs, c, col(k, r));
      if (M.reduce(lhs) != M.reduce(rhs)) return false;
    }
    return true;
  }

  bool checks_hold(const Step& st) const {
    for (const auto& [a, b, tb] : st.checks)
      if (!pair_holds(a, b, tb)) return false;
    return true;
  }

  void descend(std::size_t s) {
    if (!push_independent(steps_[s].col)) return;
    if (checks_hold(steps_[s])) go(s + 1);
    pop_independent(steps_[s].col);
  }

  void go(std::size_t s) {
    const std::size_t n = M.n;
    if (s == steps_.size()) {
      if (eta_at_leaf_) {
        for (std::size_t r = 0; r < n; ++r) {
          u64 acc = 0;
          for (std::size_t c = 0; c < n; ++c) M.mac(acc, col(c, r), M.eta[c]);
          if (M.reduce(acc) != M.eta[r]) return;
        }
      }
      (*leaf_)(G_);
      return;
    }
    const Step& st = steps_[s];
    switch (st.kind) {
      case Step::Kind::unit: {
        count_candidate();
        clear_col(st.col);
        G_[st.col * n + st.col] = 1;
        descend(s);
        clear_col(st.col);
        return;
      }
      case Step::Kind::forced: {
        count_candidate();
        clear_col(st.col);
        const auto& ia = M.layout.indices[M.layout.block_of[st.i]];
        const auto& ib = M.layout.indices[M.layout.block_of[st.j]];
        for (std::size_t r : M.layout.indices[M.layout.block_of[st.col]]) {
          u64 acc = 0;
          for (std::size_t x : ia) {
            u32 gx = col(st.i, x);
            if (gx == 0) continue;
            u64 inner = 0;
            for (std::size_t y : ib) M.mac(inner, col(st.j, y), M.mu[(x * n + y) * n + r]);
            M.mac(acc, gx, M.reduce(inner));
          }
          G_[st.col * n + r] = M.mul(st.c_inv, M.reduce(acc));
        }
        descend(s);
        clear_col(st.col);
        return;
      }
      case Step::Kind::free:
        free_step(s);
        return;
    }
  }

  void free_step(std::size_t s) {
    const Step& st = steps_[s];
    const std::size_t n = M.n;
    const auto& vars = M.layout.indices[M.layout.block_of[st.col]];
    const std::size_t d = vars.size();
    const std::size_t w = d + 1;
    Scratch& sc = scratch_[s];
    // Each constraint row is reduced against the pivot rows found so far, so
    // A stays in reduced row echelon form with rank rows.
    std::vector<u32>& A = sc.A;
    A.resize(w * (d + 1));
    std::vector<std::size_t>& pivots = sc.pivots;
    pivots.clear();
    std::size_t rank = 0;
    u32* row = &A[d * w];
    for (const auto& lc : st.linear) {
      const auto& io = M.layout.indices[M.layout.block_of[lc.other]];
      for (std::size_t r : M.layout.indices[lc.target_block]) {
        bool nonzero = false;
        for (std::size_t t = 0; t < d; ++t) {
          std::size_t sv = vars[t];
          u64 acc = 0;
          for (std::size_t a : io) {
            u32 ga = col(lc.other, a);
            if (ga == 0) continue;
            M.mac(acc, ga, lc.other_left ? M.mu[(a * n + sv) * n + r] : M.mu[(sv * n + a) * n + r]);
          }
          u32 v = M.reduce(acc);
          if (r == sv) v = M.F.sub(v, lc.self_coeff);
          row[t] = v;
          nonzero = nonzero || v != 0;
        }
        u64 rhs = 0;
        for (const auto& [k, c] : lc.terms) M.mac(rhs, c, col(k, r));
        row[d] = M.reduce(rhs);
        if (!nonzero && row[d] == 0) continue;
        for (std::size_t k = 0; k < rank; ++k) {
          u32 f = row[pivots[k]];
          if (f == 0) continue;
          const u32* pr = &A[k * w];
          for (std::size_t t = 0; t < w; ++t) row[t] = M.F.sub(row[t], M.mul(f, pr[t]));
        }
        std::size_t c = 0;
        while (c < d && row[c] == 0) ++c;
        if (c == d) {
          if (row[d] != 0) return;  // inconsistent
          continue;
        }
        u32 iv = M.F.inv(row[c]);
        for (std::size_t t = 0; t < w; ++t) row[t] = M.mul(row[t], iv);
        for (std::size_t k = 0; k < rank; ++k) {
          u32* pr = &A[k * w];
          u32 f = pr[c];
          if (f == 0) continue;
          for (std::size_t t = 0; t < w; ++t) pr[t] = M.F.sub(pr[t], M.mul(f, row[t]));
        }
        std::copy(row, row + w, &A[rank * w]);
        pivots.push_back(c);
        ++rank;
      }
    }
    std::vector<std::size_t>& freev = sc.freev;
    freev.clear();
    for (std::size_t c = 0; c < d; ++c)
      if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) freev.push_back(c);
    std::vector<u32>& t = sc.t;
    t.assign(freev.size(), 0);
    std::vector<u32>& x = sc.x;
    x.resize(d);
    while (true) {
      count_candidate();
      for (std::size_t c = 0; c < freev.size(); ++c) x[freev[c]] = t[c];
      for (std::size_t k = 0; k < rank; ++k) {
        u32 v = A[k * w + d];
        for (std::size_t c = 0; c < freev.size(); ++c) v = M.F.sub(v, M.mul(A[k * w + freev[c]], t[c]));
        x[pivots[k]] = v;
      }
      clear_col(st.col);
      for (std::size_t k = 0; k < d; ++k) G_[st.col * n + vars[k]] = x[k];
      descend(s);
      std::size_t c = freev.size();
      while (c-- > 0) {
        if (++t[c] < M.F.p) break;
        t[c] = 0;
      }
      if (c == static_cast<std::size_t>(-1)) break;
    }
    clear_col(st.col);
  }
};

void row_major(const std::vector<u32>& colmajor, std::size_t n, std::vector<u32>& m) {
  m.resize(n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) m[r * n + c] = colmajor[c * n + r];
}

std::vector<u32> row_major(const std::vector<u32>& colmajor, std::size_t n) {
  std::vector<u32> m;
  row_major(colmajor, n, m);
  return m;
}

// ε∘g = ε and (g⊗g)∘Δ = Δ∘g on column-major g. Only the positions (r, s)
// of the right total degree are accumulated and compared.
class FrobeniusTest {
 public:
  explicit FrobeniusTest(const Model& m) : M(m), diff_(m.n * m.n, 0), positions_(m.n) {
    const std::size_t n = M.n;
    int shift = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [a, b, c] : M.delta_terms[j]) {
        (void)c;
        shift = M.deg[a] + M.deg[b] - M.deg[j];
      }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t t = 0; t < n; ++t)
          if (M.deg[r] + M.deg[t] == M.deg[j] + shift) positions_[j].push_back(r * n + t);
  }

  bool operator()(const std::vector<u32>& G) {
    const std::size_t n = M.n;
    for (std::size_t j = 0; j < n; ++j) {
      u64 acc = 0;
      for (std::size_t r : M.layout.indices[M.layout.block_of[j]]) M.mac(acc, M.eps[r], G[j * n + r]);
      if (M.reduce(acc) != M.eps[j]) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [a, b, c] : M.delta_terms[j]) {
        const auto& ia = M.layout.indices[M.layout.block_of[a]];
        const auto& ib = M.layout.indices[M.layout.block_of[b]];
        for (std::size_t r : ia) {
          u32 ca = M.mul(c, G[a * n + r]);
          if (ca == 0) continue;
          for (std::size_t t : ib) M.mac(diff_[r * n + t], ca, G[b * n + t]);
        }
      }
      for (std::size_t t : M.layout.indices[M.layout.block_of[j]]) {
        u32 gt = G[j * n + t];
        if (gt == 0) continue;
        u32 minus = M.F.p - gt;
        for (const auto& [a, b, c] : M.delta_terms[t]) M.mac(diff_[a * n + b], minus, c);
      }
      bool same = true;
      for (std::size_t k : positions_[j]) {
        same = same && M.reduce(diff_[k]) == 0;
        diff_[k] = 0;
      }
      if (!same) return false;
    }
    return true;
  }

 private:
  const Model& M;
  std::vector<u64> diff_;  // lhs - rhs
  std::vector<std::vector<std::size_t>> positions_;
};

}  // namespace

std::uint64_t for_each_algebra_automorphism(const FrobeniusStructure& s, std::uint64_t budget,
                                            const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  Model model(s);
  Search search(model, budget, naive_estimate(*s.space()));
  std::vector<u32> buf;
  return search.run([&](const std::vector<u32>& G) {
    row_major(G, model.n, buf);
    visit(buf);
  });
}

Census automorphism_census(const FrobeniusStructure& s, std::uint64_t budget) {
  Model model(s);
  Search search(model, budget, naive_estimate(*s.space()));
  FrobeniusTest frob(model);
  Census c;
  c.candidates = search.run([&](const std::vector<u32>& G) {
    ++c.algebra_count;
    if (frob(G))
      ++c.frobenius_count;
    else if (!c.witness)
      c.witness.emplace(s.space(), row_major(G, model.n));
  });
  return c;
}

namespace {

void list_limit_guard(std::uint64_t size) {
  if (size > kListLimit)
    throw BudgetExceeded("automorphism list would exceed " + std::to_string(kListLimit) +
                             " elements; use the census instead",
                         size, kListLimit);
}

}  // namespace

std::vector<GradedAutomorphism> enumerate_algebra_automorphisms(const FrobeniusStructure& s, std::uint64_t budget) {
  std::vector<GradedAutomorphism> out;
  for_each_algebra_automorphism(s, budget, [&](const std::vector<u32>& m) {
    list_limit_guard(out.size() + 1);
    out.emplace_back(s.space(), m);
  });
  std::sort(out.begin(), out.end());
  return out;
}

FrobeniusAutomorphisms enumerate_frobenius_automorphisms(const FrobeniusStructure& s, std::uint64_t budget) {
  Model model(s);
  Search search(model, budget, naive_estimate(*s.space()));
  FrobeniusTest frob(model);
  FrobeniusAutomorphisms out{{}, false};
  search.run([&](const std::vector<u32>& G) {
    if (frob(G)) {
      list_limit_guard(out.elements.size() + 1);
      out.elements.emplace_back(s.space(), row_major(G, model.n));
    } else {
      out.differs_from_algebra = true;
    }
  });
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation on dense arrays and orbits.

namespace {

struct DenseOp {
  std::string name;
  unsigned m, k;
  int degree;
  std::vector<u64> strides;           // per axis, inputs first
  std::vector<std::size_t> positions;  // homogeneous flat positions, increasing
  // Per axis and position: the digit on that axis and the position with it cleared.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> digits;
};

class TensorCodec {
 public:
  TensorCodec(const Interpretation& interp) : space_(interp.space()), sig_(interp.signature()) {
    require_prime_field(*space_, "orbit computation");
    n_ = space_->dim();
    p_ = prime_of(*space_, "orbit computation");
    F_ = Fp(p_);
    for (const auto& gen : sig_.generators()) {
      DenseOp op{gen.name, gen.source_arity, gen.target_arity, gen.degree, {}, {}, {}};
      unsigned axes = op.m + op.k;
      op.strides.resize(axes);
      u64 st = 1;
      for (unsigned t = axes; t-- > 0;) {
        op.strides[t] = st;
        st *= n_;
      }
      TupleIndex outs = space_->tuple_count(op.k);
      for (TupleIndex in = 0; in < space_->tuple_count(op.m); ++in) {
        int din = space_->tuple_degree(in, op.m);
        for (TupleIndex out = 0; out < outs; ++out)
          if (space_->tuple_degree(out, op.k) == din + op.degree) op.positions.push_back(in * outs + out);
      }
      op.digits.resize(axes);
      for (unsigned t = 0; t < axes; ++t)
        for (std::size_t pos : op.positions) {
          std::size_t digit = (pos / op.strides[t]) % n_;
          op.digits[t].emplace_back(digit, pos - digit * op.strides[t]);
        }
      ops_.push_back(std::move(op));
    }
  }

  using Dense = std::vector<std::vector<u32>>;

  Dense dense(const Interpretation& interp) const {
    Dense d;
    for (const auto& op : ops_) {
      std::vector<u32> a(size_of(op), 0);
      TupleIndex outs = space_->tuple_count(op.k);
      for (const auto& e : interp.at(op.name).entries()) a[e.in * outs + e.out] = residue(e.coeff);
      d.push_back(std::move(a));
    }
    return d;
  }

  std::string key(const Dense& d) const {
    std::string s;
    for (std::size_t o = 0; o < ops_.size(); ++o)
      for (std::size_t pos : ops_[o].positions) put(s, d[o][pos]);
    return s;
  }

  Dense decode(const std::string& key) const {
    Dense d;
    std::size_t at = 0;
    for (const auto& op : ops_) {
      std::vector<u32> a(size_of(op), 0);
      for (std::size_t pos : op.positions) a[pos] = get(key, at);
      d.push_back(std::move(a));
    }
    return d;
  }

  Interpretation interpretation(const Dense& d) const {
    std::map<std::string, MultiOp> ops;
    for (std::size_t o = 0; o < ops_.size(); ++o) {
      const auto& op = ops_[o];
      MultiOp::Builder b(space_, op.m, op.k, op.degree);
      TupleIndex outs = space_->tuple_count(op.k);
      for (std::size_t pos : op.positions)
        if (d[o][pos] != 0)
          b.add(pos / outs, pos % outs, Scalar::from_integer(space_->field(), static_cast<long>(d[o][pos])));
      ops.emplace(op.name, b.build());
    }
    return Interpretation(space_, sig_, std::move(ops));
  }

  std::string serialize(const Dense& d) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t o = 0; o < ops_.size(); ++o) {
      const auto& op = ops_[o];
      TupleIndex outs = space_->tuple_count(op.k);
      for (std::size_t pos : op.positions) {
        if (d[o][pos] == 0) continue;
        auto join = [&](TupleIndex t, unsigned arity) {
          std::string s;
          for (const auto& l : space_->tuple_labels(t, arity)) s += (s.empty() ? "" : ",") + l;
          return s;
        };
        os << (first ? "" : " ") << op.name << '(' << join(pos / outs, op.m) << ';' << join(pos % outs, op.k)
           << ")=" << d[o][pos];
        first = false;
      }
    }
    return os.str();
  }

  // Sparse form of g: rows of g for inputs, columns of g⁻¹ for outputs.
  struct Action {
    std::vector<std::vector<std::pair<std::size_t, u32>>> in_rows;   // c -> (a, g[c][a])
    std::vector<std::vector<std::pair<std::size_t, u32>>> out_cols;  // s -> (r, ginv[r][s])
  };

  Action action(const GradedAutomorphism& g) const {
    GradedAutomorphism h = g.inverse();
    Action act{std::vector<std::vector<std::pair<std::size_t, u32>>>(n_),
               std::vector<std::vector<std::pair<std::size_t, u32>>>(n_)};
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) {
        if (g.entry(r, c) != 0) act.in_rows[r].emplace_back(c, g.entry(r, c));
        if (h.entry(r, c) != 0) act.out_cols[c].emplace_back(r, h.entry(r, c));
      }
    return act;
  }

  Dense conjugate(const Dense& d, const Action& act) const {
    Dense out;
    for (std::size_t o = 0; o < ops_.size(); ++o) {
      const auto& op = ops_[o];
      std::vector<u32> cur = d[o];
      acc_.resize(std::max(acc_.size(), cur.size()), 0);
      for (unsigned axis = 0; axis < op.m + op.k; ++axis) {
        const u64 st = op.strides[axis];
        const auto& sparse = axis < op.m ? act.in_rows : act.out_cols;
        const auto& dig = op.digits[axis];
        for (std::size_t k = 0; k < op.positions.size(); ++k) {
          u32 v = cur[op.positions[k]];
          if (v == 0) continue;
          const auto& [digit, base] = dig[k];
          for (const auto& [t, c] : sparse[digit]) {
            u64& slot = acc_[base + t * st];
            slot += static_cast<u64>(v) * c;
            if (p_ >= 65536) slot = F_.reduce(slot);
          }
        }
        for (std::size_t pos : op.positions) {
          cur[pos] = F_.reduce(acc_[pos]);
          acc_[pos] = 0;
        }
      }
      out.push_back(std::move(cur));
    }
    return out;
  }

 private:
  std::size_t size_of(const DenseOp& op) const {
    return static_cast<std::size_t>(space_->tuple_count(op.m) * space_->tuple_count(op.k));
  }
  void put(std::string& s, u32 v) const {
    if (p_ < 256) {
      s.push_back(static_cast<char>(v));
    } else {
      for (int b = 3; b >= 0; --b) s.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
    }
  }
  u32 get(const std::string& s, std::size_t& at) const {
    if (p_ < 256) return static_cast<unsigned char>(s[at++]);
    u32 v = 0;
    for (int b = 0; b < 4; ++b) v = (v << 8) | static_cast<unsigned char>(s[at++]);
    return v;
  }

  SpacePtr space_;
  Signature sig_;
  std::size_t n_;
  u32 p_;
  Fp F_{2};
  std::vector<DenseOp> ops_;
  mutable std::vector<u64> acc_;
};

Interpretation target_interpretation(const FrobeniusStructure& s, OrbitTarget which) {
  Interpretation full = s.interpretation();
  if (which == OrbitTarget::full) return full;
  std::vector<Generator> gens;
  std::map<std::string, MultiOp> ops;
  for (const auto& g : full.signature().generators())
    if (g.name == "mu" || g.name == "eta") {
      gens.push_back(g);
      ops.emplace(g.name, full.at(g.name));
    }
  return Interpretation(s.space(), Signature(gens), std::move(ops));
}

u32 primitive_root(u32 p) {
  Fp F{p};
  std::vector<u32> factors;
  u32 m = p - 1;
  for (u32 f = 2; static_cast<u64>(f) * f <= m; ++f)
    if (m % f == 0) {
      factors.push_back(f);
      while (m % f == 0) m /= f;
    }
  if (m > 1) factors.push_back(m);
  for (u32 g = 1; g < p; ++g) {
    bool ok = true;
    for (u32 f : factors) ok = ok && F.pow(g, (p - 1) / f) != 1;
    if (ok) return g;
  }
  return 1;
}

// Generators of the block-diagonal group: per block a primitive-root diagonal
// and the adjacent elementary transvections.
std::vector<GradedAutomorphism> group_generators(const SpacePtr& space) {
  const std::size_t n = space->dim();
  const u32 p = space->field().characteristic();
  BlockLayout layout(*space);
  std::vector<GradedAutomorphism> gens;
  auto identity = [&] {
    std::vector<u32> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
  };
  u32 root = primitive_root(p);
  for (const auto& idx : layout.indices) {
    if (root != 1) {
      auto m = identity();
      m[idx[0] * n + idx[0]] = root;
      gens.emplace_back(space, std::move(m));
    }
    for (std::size_t t = 0; t + 1 < idx.size(); ++t) {
      auto up = identity();
      up[idx[t] * n + idx[t + 1]] = 1;
      gens.emplace_back(space, std::move(up));
      auto down = identity();
      down[idx[t + 1] * n + idx[t]] = 1;
      gens.emplace_back(space, std::move(down));
    }
  }
  return gens;
}

constexpr u64 kExhaustiveLimit = 100'000;

}  // namespace

Interpretation fast_conjugate(const Interpretation& interp, const GradedAutomorphism& g) {
  if (!same_space(interp.space(), g.space())) throw AmbientMismatch("automorphism and interpretation differ in space");
  TensorCodec codec(interp);
  return codec.interpretation(codec.conjugate(codec.dense(interp), codec.action(g)));
}

OrbitResult orbit_of_structure(const FrobeniusStructure& s, OrbitTarget which, std::uint64_t budget,
                               OrbitMethod method) {
  require_prime_field(*s.space(), "orbit computation");
  Interpretation start = target_interpretation(s, which);
  TensorCodec codec(start);
  auto dense0 = codec.dense(start);
  const std::string key0 = codec.key(dense0);
  u64 order = 0;
  bool order_known = true;
  try {
    order = graded_linear_order(*s.space(), s.field().characteristic());
  } catch (const std::overflow_error&) {
    order_known = false;
  }
  if (method == OrbitMethod::automatic)
    method = order_known && order <= kExhaustiveLimit ? OrbitMethod::exhaustive : OrbitMethod::generators;

  std::string best = key0;
  OrbitResult res{0, start, "", "", 0, std::nullopt};
  if (method == OrbitMethod::exhaustive) {
    if (!order_known || order > budget)
      throw BudgetExceeded("exhaustive orbit needs " + naive_estimate(*s.space()) + " conjugations, budget is " +
                               std::to_string(budget),
                           0, budget);
    res.method = "exhaustive";
    std::unordered_set<std::string> seen;
    std::vector<GradedAutomorphism> stab;
    for (const auto& g : enumerate_graded_linear(s.space(), budget)) {
      ++res.evaluations;
      std::string k = codec.key(codec.conjugate(dense0, codec.action(g)));
      if (k == key0) stab.push_back(g);
      if (k < best) best = k;
      seen.insert(std::move(k));
    }
    res.size = seen.size();
    res.stabilizer = std::move(stab);
  } else {
    res.method = "generators";
    std::vector<TensorCodec::Action> acts;
    for (const auto& g : group_generators(s.space())) acts.push_back(codec.action(g));
    std::unordered_set<std::string> seen{key0};
    std::deque<std::string> queue{key0};
    while (!queue.empty()) {
      auto cur = codec.decode(queue.front());
      queue.pop_front();
      for (const auto& act : acts) {
        if (++res.evaluations > budget)
          throw BudgetExceeded("orbit closure exceeded the budget of " + std::to_string(budget) + " conjugations",
                               res.evaluations, budget);
        std::string k = codec.key(codec.conjugate(cur, act));
        if (seen.insert(k).second) {
          if (k < best) best = k;
          queue.push_back(std::move(k));
        }
      }
    }
    res.size = seen.size();
  }
  auto rep = codec.decode(best);
  res.representative = codec.interpretation(rep);
  res.serialized_representative = codec.serialize(rep);
  return res;
}

std::vector<GradedAutomorphism> connsum_constraint_solutions(const FrobeniusStructure& s) {
  require_prime_field(*s.space(), "constraint solver");
  const auto& sp = *s.space();
  auto dims = sp.dims_by_degree();
  if (dims.size() != 3 || dims.begin()->second != 1 || std::next(dims.begin())->second != 2 ||
      dims.rbegin()->second != 1)
    throw std::invalid_argument("constraint solver expects degree dimensions 1, 2, 1");
  const std::size_t unit = sp.indices_of_degree(dims.begin()->first)[0];
  const auto mid = sp.indices_of_degree(std::next(dims.begin())->first);
  const std::size_t top = sp.indices_of_degree(dims.rbegin()->first)[0];
  const u32 p = sp.field().characteristic();
  Fp F{p};
  const std::size_t n = sp.dim();
  std::vector<GradedAutomorphism> out;
  for (u32 a1 = 0; a1 < p; ++a1)
    for (u32 a2 = 0; a2 < p; ++a2)
      for (u32 b1 = 0; b1 < p; ++b1)
        for (u32 b2 = 0; b2 < p; ++b2) {
          u32 na = F.add(F.mul(a1, a1), F.mul(a2, a2));
          u32 nb = F.add(F.mul(b1, b1), F.mul(b2, b2));
          u32 dot = F.add(F.mul(a1, b1), F.mul(a2, b2));
          u32 det = F.sub(F.mul(a1, b2), F.mul(a2, b1));
          if (na != nb || dot != 0 || det == 0 || na == 0) continue;
          std::vector<u32> m(n * n, 0);
          m[unit * n + unit] = 1;
          m[mid[0] * n + mid[0]] = a1;
          m[mid[1] * n + mid[0]] = a2;
          m[mid[0] * n + mid[1]] = b1;
          m[mid[1] * n + mid[1]] = b2;
          m[top * n + top] = na;
          out.emplace_back(s.space(), std::move(m));
        }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Report

bool AutOrbitReport::invariants_hold() const {
  auto ok = [](const std::optional<bool>& b) { return !b || *b; };
  return orbit_stabilizer_algebra && orbit_stabilizer_full && relative_divides && ok(stabilizer_matches_algebra) &&
         ok(stabilizer_matches_full) && ok(groups_closed) && ok(subgroup_chain) && ok(constraint_agreement);
}

namespace {

bool times_equals(u64 a, u64 b, u64 c) {
  try {
    return checked_mul(a, b) == c;
  } catch (const std::overflow_error&) {
    return false;
  }
}

constexpr u64 kDeskScale = 1000;

}  // namespace

AutOrbitReport realization_count_report(const ManifoldSpec& spec, std::uint32_t q, std::uint64_t budget) {
  FieldSpec field = FieldSpec::prime(q);
  FrobeniusStructure s = build_structure(spec, field);
  AutOrbitReport r;
  r.spec = spec.to_string();
  r.q = q;
  r.warnings = build_warnings(spec, field);
  r.euler_characteristic = euler_characteristic(*s.space());
  std::size_t omega = top_class(s);
  r.handle_check = handle_element_check(s, r.euler_characteristic, omega).pass;
  AxiomReport axioms = check_axioms(s);
  r.lambda0 = axioms.specialness.lambda0.to_string();
  r.lambda0_matches_unit = axioms.specialness.lambda0_matches_unit;

  r.aut_k = graded_linear_order(*s.space(), q);
  Census census = automorphism_census(s, budget);
  r.aut_alg = census.algebra_count;
  r.aut_frob = census.frobenius_count;
  r.candidates = census.candidates;

  OrbitResult oa = orbit_of_structure(s, OrbitTarget::algebra, budget);
  OrbitResult of = orbit_of_structure(s, OrbitTarget::full, budget);
  r.orbit_algebra = oa.size;
  r.orbit_full = of.size;
  r.orbit_method_algebra = oa.method;
  r.orbit_method_full = of.method;
  r.orbit_stabilizer_algebra = times_equals(oa.size, r.aut_alg, r.aut_k);
  r.orbit_stabilizer_full = times_equals(of.size, r.aut_frob, r.aut_k);
  r.coset_count_algebra = oa.size;
  r.coset_count_full = of.size;
  r.relative_divides = r.aut_frob != 0 && r.aut_alg % r.aut_frob == 0;
  r.relative_count = r.aut_frob != 0 ? r.aut_alg / r.aut_frob : 0;
  r.frobenius_equals_algebra = r.aut_alg == r.aut_frob;
  r.inequality_witness = census.witness;
  r.representative_algebra = oa.serialized_representative;
  r.representative_full = of.serialized_representative;

  const bool connsum_cp2 = spec.kind() == ManifoldSpec::Kind::connsum &&
                           spec.left().kind() == ManifoldSpec::Kind::cp && spec.left().parameter() == 2 &&
                           spec.right().kind() == ManifoldSpec::Kind::cp && spec.right().parameter() == 2;
  const bool need_lists = oa.stabilizer || of.stabilizer || r.aut_alg <= kDeskScale || connsum_cp2;
  if (need_lists && r.aut_alg <= kListLimit) {
    auto alg = enumerate_algebra_automorphisms(s, budget);
    auto frob = enumerate_frobenius_automorphisms(s, budget);
    if (oa.stabilizer) r.stabilizer_matches_algebra = *oa.stabilizer == alg;
    if (of.stabilizer) r.stabilizer_matches_full = *of.stabilizer == frob.elements;
    if (r.aut_alg <= kDeskScale) {
      bool chain = true;
      for (const auto& g : alg) chain = chain && preserves_algebra(s, g);
      for (const auto& g : frob.elements)
        chain = chain && preserves_frobenius(s, g) && std::binary_search(alg.begin(), alg.end(), g);
      r.subgroup_chain = chain;
      bool closed = true;
      for (const auto* group : {&alg, &frob.elements})
        for (const auto& g : *group) {
          closed = closed && std::binary_search(group->begin(), group->end(), g.inverse());
          for (const auto& h : *group) closed = closed && std::binary_search(group->begin(), group->end(), g.compose(h));
        }
      r.groups_closed = closed;
    }
    if (connsum_cp2) r.constraint_agreement = connsum_constraint_solutions(s) == alg;
  }
  if (spec.kind() == ManifoldSpec::Kind::surface) {
    unsigned g = static_cast<unsigned>(spec.parameter());
    r.prediction_gl_times_units = checked_mul(gl_order(2 * g, q), q - 1);
    r.prediction_similitude = gsp_order(g, q);
  }
  return r;
}

std::string report_table(const AutOrbitReport& r) {
  std::ostringstream os;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  auto line = [&](const std::string& k, const auto& v) { os << k << " = " << v << '\n'; };
  line("spec", r.spec);
  line("field", "q=" + std::to_string(r.q));
  line("euler characteristic", r.euler_characteristic);
  line("handle element = chi*omega", yes(r.handle_check));
  line("specialness lambda0", r.lambda0);
  line("lambda0 equals 1", yes(r.lambda0_matches_unit));
  line("|Aut_K|", r.aut_k);
  line("|Aut_alg|", r.aut_alg);
  line("|Aut_frob|", r.aut_frob);
  line("search candidates", r.candidates);
  line("orbit size (algebra)", r.orbit_algebra);
  line("orbit size (full)", r.orbit_full);
  line("orbit method (algebra)", r.orbit_method_algebra);
  line("orbit method (full)", r.orbit_method_full);
  line("coset count (algebra)", r.coset_count_algebra);
  line("coset count (full)", r.coset_count_full);
  line("orbit x stabilizer = |Aut_K| (algebra)", yes(r.orbit_stabilizer_algebra));
  line("orbit x stabilizer = |Aut_K| (full)", yes(r.orbit_stabilizer_full));
  auto opt = [&](const std::string& k, const std::optional<bool>& b) {
    line(k, b ? yes(*b) : "not computed");
  };
  opt("stabilizer equals enumeration (algebra)", r.stabilizer_matches_algebra);
  opt("stabilizer equals enumeration (full)", r.stabilizer_matches_full);
  opt("subgroup chain verified", r.subgroup_chain);
  opt("groups closed", r.groups_closed);
  line("relative count", r.relative_count);
  line("Aut_frob = Aut_alg", yes(r.frobenius_equals_algebra));
  line("inequality witness", r.inequality_witness ? r.inequality_witness->to_string() : std::string("none"));
  if (r.constraint_agreement) opt("constraint solutions equal enumeration", r.constraint_agreement);
  if (r.prediction_gl_times_units) line("prediction |GL_2g| x units", *r.prediction_gl_times_units);
  if (r.prediction_similitude) line("prediction similitude group", *r.prediction_similitude);
  line("representative (algebra)", r.representative_algebra);
  line("representative (full)", r.representative_full);
  for (const auto& w : r.warnings) line("warning", w);
  line("invariants hold", yes(r.invariants_hold()));
  return os.str();
}

}  // namespace frobreal
