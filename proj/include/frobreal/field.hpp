#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace frobreal {

/// Ground field of every structure: the rationals or a prime field F_p.
class FieldSpec {
 public:
  enum class Kind { rationals, prime_field };

  static FieldSpec rationals() { return FieldSpec(Kind::rationals, 0); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  std::uint32_t characteristic() const { return characteristic_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }

  std::string to_string() const;  // "rationals" or "q=<p>"

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;

  FieldSpec(Kind kind, std::uint32_t characteristic)
      : kind_(kind), characteristic_(characteristic) {}

  Kind kind_;
  std::uint32_t characteristic_;
};

bool is_prime(std::uint64_t n);

/// An exact element of a FieldSpec. Rationals are kept in lowest terms,
/// prime-field elements as canonical residues in [0, p).
class Scalar {
 public:
  static Scalar zero(const FieldSpec& field);
  static Scalar one(const FieldSpec& field);
  static Scalar from_integer(const FieldSpec& field, long value);
  static Scalar from_integer(const FieldSpec& field, const mpz_class& value);
  /// Rationals only, or prime fields when the denominator is invertible mod p.
  static Scalar from_rational(const FieldSpec& field, const mpq_class& value);
  /// Parses "p/q", "p" (rationals) or a decimal residue (prime fields).
  static Scalar parse(const FieldSpec& field, const std::string& text);

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& other) const;
  Scalar operator-(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  Scalar operator/(const Scalar& other) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

  /// Throws std::domain_error on zero.
  Scalar inverse() const;

  /// Rationals: the value itself. Prime fields: the residue as an integer.
  mpq_class to_rational() const;
  bool is_integral() const;

  /// "p/q" with q > 0 in lowest terms for rationals; decimal residue otherwise.
  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };

  explicit Scalar(Residue r) : v_(r) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}

  void require_same_field(const Scalar& other) const;

  std::variant<Residue, mpq_class> v_;
};

}  // namespace frobreal
