#include "frobreal/graded_space.hpp"

#include <limits>
#include <set>
#include <stdexcept>

namespace frobreal {

GradedSpace::GradedSpace(std::vector<BasisElement> basis, FieldSpec field)
    : basis_(std::move(basis)), field_(field) {
  std::set<std::string> seen;
  for (const auto& b : basis_) {
    if (b.label.empty()) throw std::invalid_argument("empty basis label");
    if (!seen.insert(b.label).second) throw std::invalid_argument("duplicate basis label '" + b.label + "'");
  }
}

std::optional<std::size_t> GradedSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label == label) return i;
  return std::nullopt;
}

std::map<int, std::size_t> GradedSpace::dims_by_degree() const {
  std::map<int, std::size_t> dims;
  for (const auto& b : basis_) ++dims[b.degree];
  return dims;
}

std::vector<std::size_t> GradedSpace::indices_of_degree(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == degree) out.push_back(i);
  return out;
}

int GradedSpace::top_degree() const {
  if (basis_.empty()) throw std::domain_error("top degree of the zero space");
  int top = basis_.front().degree;
  for (const auto& b : basis_) top = std::max(top, b.degree);
  return top;
}

TupleIndex GradedSpace::tuple_count(unsigned arity) const {
  TupleIndex count = 1;
  for (unsigned i = 0; i < arity; ++i) {
    if (dim() != 0 && count > std::numeric_limits<TupleIndex>::max() / dim())
      throw std::overflow_error("tensor power too large to index");
    count *= dim();
  }
  return count;
}

TupleIndex GradedSpace::encode(const std::vector<std::size_t>& tuple) const {
  TupleIndex index = 0;
  for (std::size_t t : tuple) {
    if (t >= dim()) throw std::out_of_range("basis index " + std::to_string(t) + " out of range");
    index = index * dim() + t;
  }
  return index;
}

std::vector<std::size_t> GradedSpace::decode(TupleIndex index, unsigned arity) const {
  std::vector<std::size_t> tuple(arity);
  for (unsigned i = arity; i-- > 0;) {
    tuple[i] = static_cast<std::size_t>(index % dim());
    index /= dim();
  }
  return tuple;
}

int GradedSpace::tuple_degree(TupleIndex index, unsigned arity) const {
  int degree = 0;
  for (unsigned i = 0; i < arity; ++i) {
    degree += basis_[index % dim()].degree;
    index /= dim();
  }
  return degree;
}

std::vector<std::string> GradedSpace::tuple_labels(TupleIndex index, unsigned arity) const {
  std::vector<std::string> labels;
  for (std::size_t t : decode(index, arity)) labels.push_back(basis_[t].label);
  return labels;
}

std::shared_ptr<const GradedSpace> GradedSpace::with_field(const FieldSpec& field) const {
  return std::make_shared<const GradedSpace>(basis_, field);
}

SpacePtr make_space(std::vector<BasisElement> basis, FieldSpec field) {
  return std::make_shared<const GradedSpace>(std::move(basis), field);
}

}  // namespace frobreal
