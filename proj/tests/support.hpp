#pragma once

#include <random>
#include <vector>

#include "frobreal/multi_op.hpp"

namespace testing_support {

using namespace frobreal;

inline SpacePtr sphere_space(int n, const FieldSpec& f = FieldSpec::rationals()) {
  return make_space({{"1", 0}, {"x", n}}, f);
}

inline SpacePtr mixed_space(const FieldSpec& f = FieldSpec::rationals()) {
  return make_space({{"1", 0}, {"a", 1}, {"b", 1}, {"c", 2}, {"w", 3}}, f);
}

inline Scalar random_scalar(std::mt19937& rng, const FieldSpec& f, int spread = 3) {
  std::uniform_int_distribution<long> d(-spread, spread);
  return Scalar::from_integer(f, d(rng));
}

/// Random homogeneous operation of the requested shape; about `density` of the
/// admissible (input, output) pairs get a random coefficient.
inline MultiOp random_op(std::mt19937& rng, const SpacePtr& s, unsigned m, unsigned n, int degree,
                         double density = 0.5) {
  MultiOp::Builder b(s, m, n, degree);
  std::bernoulli_distribution keep(density);
  for (TupleIndex in = 0; in < s->tuple_count(m); ++in)
    for (TupleIndex out = 0; out < s->tuple_count(n); ++out)
      if (s->tuple_degree(out, n) == s->tuple_degree(in, m) + degree && keep(rng))
        b.add(in, out, random_scalar(rng, s->field()));
  return b.build();
}

/// Dense Kronecker product, row/column order matching the flat tuple encoding.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace testing_support
