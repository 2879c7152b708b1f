#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobreal/matrix.hpp"
#include "frobreal/multi_op.hpp"
#include "frobreal/prop.hpp"

namespace frobreal {

/// Generators mu (2,1,0), eta (0,1,0), delta (1,2,m), eps (1,0,-m).
Signature frob_signature(int m);

class FrobeniusStructure {
 public:
  /// Throws ArityError / AmbientMismatch if any operation has the wrong shape.
  FrobeniusStructure(SpacePtr space, MultiOp mu, MultiOp eta, MultiOp delta, MultiOp eps, int m);

  const SpacePtr& space() const { return space_; }
  const FieldSpec& field() const { return space_->field(); }
  const MultiOp& mu() const { return mu_; }
  const MultiOp& eta() const { return eta_; }
  const MultiOp& delta() const { return delta_; }
  const MultiOp& eps() const { return eps_; }
  int coproduct_degree() const { return m_; }

  Interpretation interpretation() const;
  static FrobeniusStructure from_interpretation(const Interpretation& i, int m);

 private:
  SpacePtr space_;
  MultiOp mu_, eta_, delta_, eps_;
  int m_;
};

bool structure_equal(const FrobeniusStructure& a, const FrobeniusStructure& b);

struct Pairing {
  SpacePtr space;
  MultiOp beta;  // (2,0) of degree -m
  Matrix gram;   // gram(i, j) = beta(e_i ⊗ e_j)
  int m() const { return -beta.degree(); }
};

Pairing pairing_from_op(const MultiOp& beta);
Pairing pairing_from_structure(const FrobeniusStructure& s);
bool is_nondegenerate(const Pairing& p);

/// The (0,2) operation γ solving (β⊗id)∘(id⊗γ) = id. Also asserts
/// (id⊗β)∘(γ⊗id) = (-1)^m id, throwing SignConventionFault otherwise.
/// Throws DegenerateError for a degenerate pairing.
MultiOp copairing_solve(const Pairing& p);

struct Coproduct {
  MultiOp delta;
  MultiOp eps;
};

/// Δ = (μ⊗id)∘(id⊗γ) and ε = β∘(id⊗η); checks ε∘μ = β.
Coproduct coproduct_from_pairing(const MultiOp& mu, const MultiOp& eta, const Pairing& p);

/// One image of a basis tuple: sum of coefficient × output labels.
struct Tensor {
  std::vector<std::pair<std::vector<std::string>, Scalar>> terms;
  std::string to_string() const;
};

struct Witness {
  std::vector<std::string> input;
  Tensor lhs;
  Tensor rhs;
};

struct AxiomVerdict {
  std::string name;
  bool pass;
  /// Sign s in the tested identity lhs = s·rhs.
  int sign;
  std::optional<Witness> witness;
};

/// Unordered pair of diagrams plus the sign relating them.
struct AxiomDiagrams {
  std::string name;
  Diagram lhs;
  Diagram rhs;
  int sign;
};

/// The fixed relation list over frob_signature(m).
std::vector<AxiomDiagrams> axiom_diagrams(int m);

struct Specialness {
  Scalar lambda0;                 // ε(η(1))
  bool lambda0_matches_unit;      // λ0 == 1
  MultiOp handle_operator;        // μ∘Δ, degree m
  std::optional<Scalar> lambda1;  // only when m == 0 and μ∘Δ is scalar
};

struct CenterVerdict {
  bool pass;
  std::vector<std::pair<std::string, bool>> per_element;  // by basis label z
};

struct AxiomReport {
  std::vector<AxiomVerdict> axioms;
  Specialness specialness;
  CenterVerdict center;

  bool all_pass() const;
  const AxiomVerdict* find(const std::string& name) const;
};

/// First input tuple on which lhs and s·rhs differ, or nullopt.
std::optional<Witness> find_witness(const MultiOp& lhs, const MultiOp& rhs, int sign);

AxiomReport check_axioms(const FrobeniusStructure& s);

/// Re-evaluates a reported witness; true iff it reproduces the stored tensors.
bool witness_reproduces(const FrobeniusStructure& s, const AxiomVerdict& v);

struct HandleCheck {
  bool pass;
  bool element_ok;
  bool operator_ok;
  MultiOp handle_element;   // μ∘Δ∘η
  MultiOp handle_operator;  // μ∘Δ
};

/// μΔη = χ·ω and μ∘Δ = χ·(ω·−).
HandleCheck handle_element_check(const FrobeniusStructure& s, long chi, std::size_t omega);

/// For every basis z, c = μτΔ(z) must satisfy μ(c⊗w) = (-1)^{|c||w|} μ(w⊗c).
CenterVerdict center_check(const FrobeniusStructure& s);

/// The unique top-degree basis element with ε = 1, if any.
std::optional<std::size_t> find_top_class(const FrobeniusStructure& s);

Tensor tensor_of(const GradedSpace& space, unsigned arity,
                 const std::vector<std::pair<TupleIndex, Scalar>>& image);

}  // namespace frobreal
