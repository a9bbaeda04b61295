#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliffcoact/errors.hpp"

namespace cliffcoact {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// An exact scalar in one of the supported fields: the rationals, a prime
/// field GF(p) with p an odd prime, or a quadratic extension k(sqrt d) of
/// one of the former two.
///
/// Values are immutable and kept in canonical form (reduced fraction with
/// positive denominator, residue in [0,p), componentwise-canonical pair
/// a + b*sqrt(d)), so operator== is structural equality.
class Scalar {
 public:
  static Scalar zero(const FieldPtr& field);
  static Scalar one(const FieldPtr& field);
  static Scalar of_int(const FieldPtr& field, long long value);
  /// num/den mapped into the field; throws DivisionByZeroError when den
  /// vanishes there (e.g. "1/7" over GF(7)).
  static Scalar of_fraction(const FieldPtr& field, const BigInt& num, const BigInt& den);
  /// a + b*sqrt(d) from base-field components; field must be quadratic.
  static Scalar quadratic(const FieldPtr& field, Scalar a, Scalar b);

  const FieldPtr& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inverse() const;  // throws DivisionByZeroError on zero
  Scalar pow(long long e) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  bool operator==(const Scalar& other) const;
  bool operator!=(const Scalar& other) const { return !(*this == other); }

  /// Canonical string: "-3/4" (rational), "5" (GF(p) residue),
  /// "a+b*r" / "a-b*r" with r the adjoined square root (quadratic).
  std::string str() const;
  /// Parses the canonical forms back; accepts any integer residue for GF(p)
  /// and plain base-field strings for quadratic extensions.
  static Scalar parse(const FieldPtr& field, std::string_view text);

  // Representation accessors (valid only for the matching field kind).
  const BigRat& rational_value() const;
  BigInt residue() const;
  const Scalar& re() const;  // quadratic: a of a + b*sqrt(d)
  const Scalar& im() const;  // quadratic: b of a + b*sqrt(d)

 private:
  Scalar(FieldPtr field, BigRat v) : field_(std::move(field)), rat_(std::move(v)) {}
  Scalar(FieldPtr field, Scalar a, Scalar b);

  FieldPtr field_;
  BigRat rat_;                // rational value, or GF(p) residue as an integer
  std::vector<Scalar> quad_;  // {a, b} for quadratic extensions, empty otherwise

  friend class Field;
};

/// Field descriptor. Characteristic 2 is rejected at construction, as is a
/// quadratic extension whose radicand is already a square in the base.
class Field : public std::enable_shared_from_this<Field> {
 public:
  enum class Kind { Rational, Prime, Quadratic };

  static FieldPtr rationals();
  static FieldPtr prime(const BigInt& p);
  static FieldPtr quadratic(const FieldPtr& base, const Scalar& d);

  Kind kind() const { return kind_; }
  const BigInt& modulus() const { return p_; }        // Prime only
  const FieldPtr& base() const { return base_; }      // Quadratic only
  const Scalar& radicand() const { return *d_; }      // Quadratic only
  BigInt characteristic() const;

  bool operator==(const Field& other) const;
  std::string describe() const;  // "Q", "GF(7)", "GF(7)(sqrt 3)", ...

 private:
  Field() = default;
  Kind kind_ = Kind::Rational;
  BigInt p_;
  FieldPtr base_;
  std::optional<Scalar> d_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

/// Exact square-root test. Returns a canonical root when one exists in the
/// field, and nothing otherwise (the decision is exact, never probabilistic).
/// Root selection is deterministic: nonnegative over Q, residue <= (p-1)/2
/// over GF(p), leading-component rule over quadratic extensions.
std::optional<Scalar> square_root(const Scalar& x);

}  // namespace cliffcoact
