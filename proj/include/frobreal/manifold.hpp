#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "frobreal/frobenius.hpp"

namespace frobreal {

class ManifoldSpec {
 public:
  enum class Kind { sphere, cp, surface, connsum };

  /// n >= 1
  static ManifoldSpec sphere(int n);
  /// n >= 1
  static ManifoldSpec cp(int n);
  /// g >= 0
  static ManifoldSpec surface(int g);
  /// Both sides must have the same top degree.
  static ManifoldSpec connsum(const ManifoldSpec& left, const ManifoldSpec& right);

  Kind kind() const { return kind_; }
  int parameter() const { return param_; }
  const ManifoldSpec& left() const { return *left_; }
  const ManifoldSpec& right() const { return *right_; }

  /// Formal dimension.
  int top_degree() const;
  /// Canonical text form, e.g. "connsum(cp:2,cp:2)".
  std::string to_string() const;

 private:
  ManifoldSpec(Kind kind, int param) : kind_(kind), param_(param) {}

  Kind kind_;
  int param_;
  std::shared_ptr<const ManifoldSpec> left_, right_;
};

struct BuildOptions {
  /// Surface ring sign: a_i b_i = +w (default) or b_i a_i = +w.
  bool surface_ab_positive = true;
  /// Run the axiom checker on the result and throw if anything fails.
  bool verify = true;
};

/// Poincaré-duality structure on the cohomology ring described by spec.
/// Prime fields are reached through reduce_mod_p of the integral model.
FrobeniusStructure build_structure(const ManifoldSpec& spec, const FieldSpec& field,
                                   const BuildOptions& options = {});

/// Caveats attached to a build, e.g. characteristic 2 with odd-degree classes.
std::vector<std::string> build_warnings(const ManifoldSpec& spec, const FieldSpec& field);

long euler_characteristic(const GradedSpace& space);

/// Euler characteristic from the spec's closed-form expression.
long euler_characteristic_formula(const ManifoldSpec& spec);

/// Index of the fundamental class of a built structure.
std::size_t top_class(const FrobeniusStructure& s);

/// Residues of μ, η, ε; Δ re-derived from the reduced pairing. Throws
/// DegenerateError naming the vanishing Gram block.
FrobeniusStructure reduce_mod_p(const FrobeniusStructure& s, std::uint32_t p);

/// Parses "sphere:n", "cp:n", "surface:g", "connsum(<spec>,<spec>)".
/// Whitespace is ignored; errors are ParseError with a byte offset.
ManifoldSpec parse_spec(const std::string& text);

}  // namespace frobreal
