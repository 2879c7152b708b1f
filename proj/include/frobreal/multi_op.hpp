#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frobreal/field.hpp"
#include "frobreal/graded_space.hpp"
#include "frobreal/matrix.hpp"

namespace frobreal {

/// An element of End_X(m, n) = Hom(X^{⊗m}, X^{⊗n}): a homogeneous operation
/// as sparse structure constants. Entries are kept sorted by (input, output)
/// tuple, zero coefficients dropped. Immutable.
class MultiOp {
 public:
  struct Entry {
    TupleIndex in;
    TupleIndex out;
    Scalar coeff;
  };

  class Builder {
   public:
    Builder(SpacePtr space, unsigned source_arity, unsigned target_arity, int degree);

    Builder& add(TupleIndex in, TupleIndex out, const Scalar& coeff);
    Builder& add(const std::vector<std::size_t>& in, const std::vector<std::size_t>& out,
                 const Scalar& coeff);
    Builder& add(const std::vector<std::string>& in, const std::vector<std::string>& out,
                 const Scalar& coeff);
    Builder& add(const std::vector<std::size_t>& in, const std::vector<std::size_t>& out, long coeff);

    /// Throws ArityError if an entry violates homogeneity.
    MultiOp build() const;

   private:
    SpacePtr space_;
    unsigned m_, n_;
    int degree_;
    std::map<std::pair<TupleIndex, TupleIndex>, Scalar> acc_;
  };

  const SpacePtr& space() const { return space_; }
  const FieldSpec& field() const { return space_->field(); }
  unsigned source_arity() const { return m_; }
  unsigned target_arity() const { return n_; }
  int degree() const { return degree_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  /// Image of one basis tensor, as (output tuple, coefficient) pairs.
  std::vector<std::pair<TupleIndex, Scalar>> apply(TupleIndex in) const;
  std::vector<std::pair<TupleIndex, Scalar>> apply(const std::vector<std::size_t>& in) const;
  /// Coefficient of out in the image of in.
  Scalar coefficient(TupleIndex in, TupleIndex out) const;

  MultiOp scaled(const Scalar& factor) const;
  MultiOp operator-() const;
  /// Both operands must share space, arities and degree.
  MultiOp operator+(const MultiOp& other) const;
  MultiOp operator-(const MultiOp& other) const;

  /// Dense matrix of size dim^n × dim^m (column = input tuple).
  Matrix to_matrix() const;

 private:
  friend class Builder;
  MultiOp(SpacePtr space, unsigned m, unsigned n, int degree, std::vector<Entry> entries);

  SpacePtr space_;
  unsigned m_, n_;
  int degree_;
  std::vector<Entry> entries_;
};

MultiOp identity_op(const SpacePtr& space, unsigned k);

/// g ∘ f. Requires target_arity(f) == source_arity(g).
MultiOp vertical_compose(const MultiOp& g, const MultiOp& f);

/// f ⊗ g acting on u ⊗ v as (-1)^{|g||u|} f(u) ⊗ g(v).
MultiOp horizontal_tensor(const MultiOp& f, const MultiOp& g);

/// Permutation of k tensor factors: the factor in position i moves to position
/// images[i], with the Koszul sign of the transpositions performed.
MultiOp permutation_op(const std::vector<std::size_t>& images, const SpacePtr& space);

/// The symmetry τ on X ⊗ X.
MultiOp symmetry_op(const SpacePtr& space);

/// Single-output (0, 1) operation sending the empty tuple to basis element i.
MultiOp element_op(const SpacePtr& space, std::size_t i, const Scalar& coeff);

struct OpComparison {
  bool equal;
  std::string reason;  // empty when equal
};

OpComparison op_compare(const MultiOp& f, const MultiOp& g);
bool op_equal(const MultiOp& f, const MultiOp& g);

/// Group composition σ∘ρ of permutations in image notation.
std::vector<std::size_t> compose_permutations(const std::vector<std::size_t>& sigma,
                                              const std::vector<std::size_t>& rho);
bool is_permutation(const std::vector<std::size_t>& images);

}  // namespace frobreal
