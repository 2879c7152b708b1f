#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frobreal/errors.hpp"
#include "frobreal/matrix.hpp"
#include "frobreal/multi_op.hpp"

namespace frobreal {

struct Generator {
  std::string name;
  unsigned source_arity;
  unsigned target_arity;
  int degree;

  friend bool operator==(const Generator&, const Generator&) = default;
};

class Signature {
 public:
  Signature() = default;
  /// Throws std::invalid_argument on duplicate names.
  explicit Signature(std::vector<Generator> generators);

  const std::vector<Generator>& generators() const { return generators_; }
  const Generator* find(const std::string& name) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Generator> generators_;
};

/// Ill-formed diagram. path locates the offending node from the root, e.g.
/// "root.lower.right".
class DiagramError : public ArityError {
 public:
  DiagramError(const std::string& message, std::string path)
      : ArityError(message + " (at " + path + ")"), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// An expression in the free prop on a signature. Nodes are immutable and
/// shared; arities are checked when a node is built.
class Diagram {
 public:
  enum class Kind { gen, id, perm, hcomp, vcomp };

  static Diagram gen(const Signature& sig, const std::string& name);
  static Diagram id(unsigned k);
  static Diagram perm(std::vector<std::size_t> images);
  static Diagram hcomp(const Diagram& left, const Diagram& right);
  /// upper ∘ lower
  static Diagram vcomp(const Diagram& upper, const Diagram& lower);

  Kind kind() const { return node_->kind; }
  unsigned source_arity() const { return node_->m; }
  unsigned target_arity() const { return node_->n; }
  int degree() const { return node_->degree; }

  const std::string& name() const { return node_->name; }
  const std::vector<std::size_t>& images() const { return node_->images; }
  /// hcomp: (left, right); vcomp: (upper, lower).
  const Diagram& first() const { return *node_->first; }
  const Diagram& second() const { return *node_->second; }

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    unsigned m, n;
    int degree;
    std::string name;
    std::vector<std::size_t> images;
    std::shared_ptr<const Diagram> first, second;
  };
  explicit Diagram(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Chain a list of layers bottom to top: layers[0] is applied first.
Diagram stack(const std::vector<Diagram>& layers);
/// Horizontal juxtaposition of several diagrams, left to right.
Diagram juxtapose(const std::vector<Diagram>& parts);

/// A prop morphism from the free prop on sig to End_X.
class Interpretation {
 public:
  /// Every generator must be assigned an operation of matching biarity and
  /// degree on space; extra names are rejected.
  Interpretation(SpacePtr space, Signature sig, std::map<std::string, MultiOp> assignment);

  const SpacePtr& space() const { return space_; }
  const Signature& signature() const { return sig_; }
  const std::map<std::string, MultiOp>& assignment() const { return assignment_; }
  const MultiOp& at(const std::string& name) const;

 private:
  SpacePtr space_;
  Signature sig_;
  std::map<std::string, MultiOp> assignment_;
};

bool interpretation_equal(const Interpretation& a, const Interpretation& b);

MultiOp evaluate(const Diagram& d, const Interpretation& interp);

/// k-fold tensor power of a (1,1) operation; k = 0 gives the unit.
MultiOp tensor_power(const MultiOp& g, unsigned k);

/// Exact inverse of an invertible degree-0 (1,1) operation.
MultiOp inverse_op(const MultiOp& g);

/// The map p ↦ (g⁻¹)^{⊗n} ∘ p ∘ g^{⊗m} on a single operation.
MultiOp conjugate_op(const MultiOp& p, const MultiOp& g, const MultiOp& g_inverse);

/// Conjugation of every assigned operation. g must be (1,1), degree 0 and
/// invertible. Satisfies conj(conj(i, g1), g2) = conj(i, g1 ∘ g2).
Interpretation conjugate_interpretation(const Interpretation& interp, const MultiOp& g);

/// Operation-level conjugator: given p returns its transport.
using Conjugator = std::function<MultiOp(const MultiOp&)>;

Conjugator standard_conjugator(const MultiOp& g);

struct SamplePair {
  MultiOp first;
  MultiOp second;
};

/// Checks conj(f1⊗f2) = conj(f1)⊗conj(f2) on every pair and, when arities
/// allow, conj(f2∘f1) = conj(f2)∘conj(f1).
bool check_prop_morphism_property(const Conjugator& conj, const std::vector<SamplePair>& samples);
bool check_prop_morphism_property(const MultiOp& g, const std::vector<SamplePair>& samples);

/// A degree-0 linear map between two graded spaces over the same field.
struct LinearMap {
  SpacePtr source;
  SpacePtr target;
  /// target.dim × source.dim; column j is the image of source basis j.
  Matrix matrix;
};

LinearMap linear_map(SpacePtr source, SpacePtr target, Matrix matrix);

struct EndOfMapSpace {
  /// Basis of the solution space as (p, q) pairs.
  std::vector<std::pair<MultiOp, MultiOp>> basis;
  /// Coordinates of d0(basis_k) = p_k and d1(basis_k) = q_k against the
  /// standard bases of Hom(X^m, X^n)_d and Hom(Y^m, Y^n)_d.
  Matrix d0;
  Matrix d1;
  std::size_t dimension() const { return basis.size(); }
};

/// Solutions (p, q) in Hom(X^m,X^n)_d × Hom(Y^m,Y^n)_d of f^{⊗n}∘p = q∘f^{⊗m}.
EndOfMapSpace end_of_map_space(const LinearMap& f, unsigned m, unsigned n, int degree = 0);

/// Number of (input, output) tuple pairs of Hom(X^m, X^n) in the given degree.
std::size_t hom_dimension(const GradedSpace& space, unsigned m, unsigned n, int degree);

}  // namespace frobreal
