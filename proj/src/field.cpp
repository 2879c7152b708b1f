#include "frobreal/field.hpp"

#include <stdexcept>

namespace frobreal {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ULL << 31)) throw std::invalid_argument("characteristic too large: " + std::to_string(p));
  if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime: " + std::to_string(p));
  return FieldSpec(Kind::prime_field, static_cast<std::uint32_t>(p));
}

std::string FieldSpec::to_string() const {
  return is_rationals() ? std::string("rationals") : "q=" + std::to_string(characteristic_);
}

namespace {

std::uint32_t reduce(const mpz_class& value, std::uint32_t p) {
  mpz_class r = value % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Scalar Scalar::zero(const FieldSpec& field) { return from_integer(field, 0L); }
Scalar Scalar::one(const FieldSpec& field) { return from_integer(field, 1L); }

Scalar Scalar::from_integer(const FieldSpec& field, long value) {
  return from_integer(field, mpz_class(value));
}

Scalar Scalar::from_integer(const FieldSpec& field, const mpz_class& value) {
  if (field.is_rationals()) return Scalar(mpq_class(value));
  return Scalar(Residue{reduce(value, field.characteristic()), field.characteristic()});
}

Scalar Scalar::from_rational(const FieldSpec& field, const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  if (field.is_rationals()) return Scalar(v);
  Scalar num = from_integer(field, v.get_num());
  Scalar den = from_integer(field, v.get_den());
  if (den.is_zero())
    throw std::domain_error("denominator " + v.get_den().get_str() + " vanishes mod " +
                            std::to_string(field.characteristic()));
  return num / den;
}

Scalar Scalar::parse(const FieldSpec& field, const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad coefficient '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return from_rational(field, q);
}

FieldSpec Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&v_)) return FieldSpec(FieldSpec::Kind::prime_field, r->modulus);
  return FieldSpec::rationals();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&v_)) return r->value == 0;
  return std::get<mpq_class>(v_) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&v_)) return r->value == 1;
  return std::get<mpq_class>(v_) == 1;
}

void Scalar::require_same_field(const Scalar& other) const {
  const auto* a = std::get_if<Residue>(&v_);
  const auto* b = std::get_if<Residue>(&other.v_);
  if ((a == nullptr) != (b == nullptr) || (a && a->modulus != b->modulus))
    throw std::logic_error("scalar field mismatch: " + field().to_string() + " vs " +
                           other.field().to_string());
}

Scalar Scalar::operator+(const Scalar& other) const {
  require_same_field(other);
  if (const auto* a = std::get_if<Residue>(&v_)) {
    const auto& b = std::get<Residue>(other.v_);
    std::uint64_t s = std::uint64_t(a->value) + b.value;
    return Scalar(Residue{static_cast<std::uint32_t>(s % a->modulus), a->modulus});
  }
  return Scalar(mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(other.v_)));
}

Scalar Scalar::operator-(const Scalar& other) const { return *this + (-other); }

Scalar Scalar::operator*(const Scalar& other) const {
  require_same_field(other);
  if (const auto* a = std::get_if<Residue>(&v_)) {
    const auto& b = std::get<Residue>(other.v_);
    std::uint64_t s = std::uint64_t(a->value) * b.value;
    return Scalar(Residue{static_cast<std::uint32_t>(s % a->modulus), a->modulus});
  }
  return Scalar(mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(other.v_)));
}

Scalar Scalar::operator/(const Scalar& other) const { return *this * other.inverse(); }

Scalar Scalar::operator-() const {
  if (const auto* a = std::get_if<Residue>(&v_))
    return Scalar(Residue{a->value == 0 ? 0 : a->modulus - a->value, a->modulus});
  return Scalar(mpq_class(-std::get<mpq_class>(v_)));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (const auto* a = std::get_if<Residue>(&v_))
    return Scalar(Residue{pow_mod(a->value, a->modulus - 2, a->modulus), a->modulus});
  return Scalar(mpq_class(1 / std::get<mpq_class>(v_)));
}

mpq_class Scalar::to_rational() const {
  if (const auto* a = std::get_if<Residue>(&v_)) return mpq_class(static_cast<unsigned long>(a->value));
  return std::get<mpq_class>(v_);
}

bool Scalar::is_integral() const {
  if (std::holds_alternative<Residue>(v_)) return true;
  return std::get<mpq_class>(v_).get_den() == 1;
}

std::string Scalar::to_string() const {
  if (const auto* a = std::get_if<Residue>(&v_)) return std::to_string(a->value);
  const auto& q = std::get<mpq_class>(v_);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_field(b);
  if (const auto* x = std::get_if<Scalar::Residue>(&a.v_))
    return x->value == std::get<Scalar::Residue>(b.v_).value;
  return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
}

bool operator<(const Scalar& a, const Scalar& b) {
  a.require_same_field(b);
  if (const auto* x = std::get_if<Scalar::Residue>(&a.v_))
    return x->value < std::get<Scalar::Residue>(b.v_).value;
  return std::get<mpq_class>(a.v_) < std::get<mpq_class>(b.v_);
}

}  // namespace frobreal
