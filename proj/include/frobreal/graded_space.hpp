#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frobreal/field.hpp"

namespace frobreal {

struct BasisElement {
  std::string label;
  int degree;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Flat encoding of a tuple of basis indices: mixed radix in base dim(), first
/// factor most significant, so numeric order is lexicographic order.
using TupleIndex = std::uint64_t;

/// A finite-dimensional graded vector space with an ordered homogeneous basis.
class GradedSpace {
 public:
  GradedSpace(std::vector<BasisElement> basis, FieldSpec field);

  std::size_t dim() const { return basis_.size(); }
  const FieldSpec& field() const { return field_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const std::string& label(std::size_t i) const { return basis_.at(i).label; }
  int degree(std::size_t i) const { return basis_.at(i).degree; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Dimension of each occupied degree.
  std::map<int, std::size_t> dims_by_degree() const;
  std::vector<std::size_t> indices_of_degree(int degree) const;
  int top_degree() const;

  /// Number of tuples of the given arity; throws if it does not fit a TupleIndex.
  TupleIndex tuple_count(unsigned arity) const;
  TupleIndex encode(const std::vector<std::size_t>& tuple) const;
  std::vector<std::size_t> decode(TupleIndex index, unsigned arity) const;
  int tuple_degree(TupleIndex index, unsigned arity) const;
  std::vector<std::string> tuple_labels(TupleIndex index, unsigned arity) const;

  /// Same basis and field, different ambient object.
  std::shared_ptr<const GradedSpace> with_field(const FieldSpec& field) const;

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.field_ == b.field_ && a.basis_ == b.basis_;
  }

 private:
  std::vector<BasisElement> basis_;
  FieldSpec field_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

SpacePtr make_space(std::vector<BasisElement> basis, FieldSpec field);

inline bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || *a == *b; }

}  // namespace frobreal
