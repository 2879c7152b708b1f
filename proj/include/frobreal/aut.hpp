#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frobreal/frobenius.hpp"
#include "frobreal/manifold.hpp"

namespace frobreal {

/// |GL_d(F_q)|; throws std::overflow_error if it does not fit 64 bits.
std::uint64_t gl_order(unsigned d, std::uint64_t q);
/// |Sp_2g(F_q)| and |GSp_2g(F_q)| = (q-1)|Sp_2g(F_q)|.
std::uint64_t sp_order(unsigned g, std::uint64_t q);
std::uint64_t gsp_order(unsigned g, std::uint64_t q);

/// Order of the group of degree-preserving automorphisms of space over F_q.
/// If the space is over a prime field, q must be its characteristic.
std::uint64_t graded_linear_order(const GradedSpace& space, std::uint64_t q);

/// Candidate budget: FROBREAL_BUDGET if set, else 10^8.
std::uint64_t default_budget();

/// A degree-preserving invertible map over a prime field, stored as the full
/// matrix (column j is the image of basis j).
class GradedAutomorphism {
 public:
  /// Throws unless matrix is block diagonal for the grading and invertible.
  GradedAutomorphism(SpacePtr space, std::vector<std::uint32_t> matrix);
  static GradedAutomorphism identity(const SpacePtr& space);
  /// From an invertible degree-0 (1,1) operation.
  static GradedAutomorphism from_op(const MultiOp& g);

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return space_->dim(); }
  std::uint32_t entry(std::size_t row, std::size_t col) const { return m_[row * dim() + col]; }
  const std::vector<std::uint32_t>& matrix() const { return m_; }

  /// One square block per occupied degree, in degree order.
  std::vector<std::pair<int, Matrix>> blocks() const;

  /// this ∘ other
  GradedAutomorphism compose(const GradedAutomorphism& other) const;
  GradedAutomorphism inverse() const;
  MultiOp to_op() const;

  std::string to_string() const;

  friend bool operator==(const GradedAutomorphism& a, const GradedAutomorphism& b) { return a.m_ == b.m_; }
  /// Canonical order: lexicographic on the block entries, degree by degree,
  /// each block row-major.
  friend bool operator<(const GradedAutomorphism& a, const GradedAutomorphism& b) { return a.key_ < b.key_; }

 private:
  SpacePtr space_;
  std::vector<std::uint32_t> m_;
  std::vector<std::uint32_t> key_;
};

/// Every invertible block-diagonal map, in canonical order. Exhaustive; throws
/// BudgetExceeded when the group is larger than budget.
std::vector<GradedAutomorphism> enumerate_graded_linear(const SpacePtr& space, std::uint64_t budget);

bool preserves_algebra(const FrobeniusStructure& s, const GradedAutomorphism& g);
bool preserves_frobenius(const FrobeniusStructure& s, const GradedAutomorphism& g);

struct Census {
  std::uint64_t algebra_count = 0;
  std::uint64_t frobenius_count = 0;
  std::uint64_t candidates = 0;
  /// First algebra automorphism (search order) that is not Frobenius.
  std::optional<GradedAutomorphism> witness;
};

/// Counts Aut_alg and Aut_frob in one pass without storing the groups.
Census automorphism_census(const FrobeniusStructure& s, std::uint64_t budget);

/// Visits every algebra automorphism in search order; the callback receives
/// the full matrix row-major.
std::uint64_t for_each_algebra_automorphism(const FrobeniusStructure& s, std::uint64_t budget,
                                            const std::function<void(const std::vector<std::uint32_t>&)>& visit);

/// Lists are capped at this many elements; larger groups need the census.
inline constexpr std::uint64_t kListLimit = 2'000'000;

/// Maps with g∘μ = μ∘(g⊗g) and g∘η = η, canonical order.
std::vector<GradedAutomorphism> enumerate_algebra_automorphisms(const FrobeniusStructure& s,
                                                                std::uint64_t budget = default_budget());

struct FrobeniusAutomorphisms {
  std::vector<GradedAutomorphism> elements;
  /// True when the result is a proper subgroup of the algebra automorphisms.
  bool differs_from_algebra;
};

/// The algebra automorphisms that also preserve Δ and ε.
FrobeniusAutomorphisms enumerate_frobenius_automorphisms(const FrobeniusStructure& s,
                                                         std::uint64_t budget = default_budget());

enum class OrbitTarget { algebra, full };
enum class OrbitMethod { automatic, exhaustive, generators };

struct OrbitResult {
  std::uint64_t size = 0;
  /// The lexicographically minimal tensor tuple of the orbit.
  Interpretation representative;
  std::string serialized_representative;
  std::string method;  // "exhaustive" or "generators"
  std::uint64_t evaluations = 0;
  /// Exhaustive method only: the stabilizer, canonical order.
  std::optional<std::vector<GradedAutomorphism>> stabilizer;
};

/// Orbit of (μ,η) or (μ,η,Δ,ε) under conjugation by the graded linear group.
/// Automatic uses exhaustive sweeps up to 10^5 group elements and generator
/// closure above that.
OrbitResult orbit_of_structure(const FrobeniusStructure& s, OrbitTarget which, std::uint64_t budget = default_budget(),
                               OrbitMethod method = OrbitMethod::automatic);

/// Conjugation by g computed on dense residue arrays; agrees with
/// conjugate_interpretation.
Interpretation fast_conjugate(const Interpretation& interp, const GradedAutomorphism& g);

/// Degree-2 blocks [[a1,b1],[a2,b2]] with a1²+a2² = b1²+b2², a1b1+a2b2 = 0,
/// invertible and nonzero norm, extended by the unit and the forced top scalar.
std::vector<GradedAutomorphism> connsum_constraint_solutions(const FrobeniusStructure& s);

struct AutOrbitReport {
  std::string spec;
  std::uint32_t q = 0;
  long euler_characteristic = 0;
  bool handle_check = false;
  std::string lambda0;
  bool lambda0_matches_unit = false;

  std::uint64_t aut_k = 0;
  std::uint64_t aut_alg = 0;
  std::uint64_t aut_frob = 0;
  std::uint64_t candidates = 0;

  std::uint64_t orbit_algebra = 0;
  std::uint64_t orbit_full = 0;
  std::string orbit_method_algebra;
  std::string orbit_method_full;
  bool orbit_stabilizer_algebra = false;
  bool orbit_stabilizer_full = false;
  /// Exhaustive orbits only: stabilizer equals the enumerated group.
  std::optional<bool> stabilizer_matches_algebra;
  std::optional<bool> stabilizer_matches_full;
  std::optional<bool> groups_closed;
  std::optional<bool> subgroup_chain;

  std::uint64_t coset_count_algebra = 0;  // orbit cardinality
  std::uint64_t coset_count_full = 0;
  std::uint64_t relative_count = 0;  // |Aut_alg| / |Aut_frob|
  bool relative_divides = false;

  bool frobenius_equals_algebra = false;
  std::optional<GradedAutomorphism> inequality_witness;

  std::string representative_algebra;
  std::string representative_full;

  /// connsum(cp:2,cp:2) only: constraint solutions equal enumeration.
  std::optional<bool> constraint_agreement;

  /// Surfaces only: two closed-form candidates for |Aut_alg|.
  std::optional<std::uint64_t> prediction_gl_times_units;
  std::optional<std::uint64_t> prediction_similitude;

  std::vector<std::string> warnings;

  /// Orbit-stabilizer identities and every optional cross-check that ran.
  bool invariants_hold() const;
};

AutOrbitReport realization_count_report(const ManifoldSpec& spec, std::uint32_t q,
                                        std::uint64_t budget = default_budget());

/// Human-readable table, one "name = value" line per field.
std::string report_table(const AutOrbitReport& r);

}  // namespace frobreal
