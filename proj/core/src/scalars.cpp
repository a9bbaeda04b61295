#include "cliffcoact/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace cliffcoact {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// Field

FieldPtr Field::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Rational;
    return FieldPtr(f);
  }();
  return q;
}

namespace {

bool is_prime(const BigInt& p) {
  if (p < 2) return false;
  for (BigInt d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

FieldPtr Field::prime(const BigInt& p) {
  if (p == 2) throw CharTwoError("GF(2) is not supported: characteristic must differ from 2");
  if (!is_prime(p)) throw BadPrimeError("modulus " + p.str() + " is not prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Prime;
  f->p_ = p;
  return f;
}

FieldPtr Field::quadratic(const FieldPtr& base, const Scalar& d) {
  if (!base || (base->kind() != Kind::Rational && base->kind() != Kind::Prime))
    throw BadIndexError("quadratic extensions are supported over Q and GF(p) only");
  if (!same_field(base, d.field()))
    throw FieldMismatchError("radicand does not live in the base field");
  if (d.is_zero()) throw NotASquareBaseError("radicand must be nonzero");
  if (square_root(d).has_value())
    throw NotASquareBaseError("radicand " + d.str() + " is a square in the base field");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Quadratic;
  f->base_ = base;
  f->d_ = d;
  return f;
}

BigInt Field::characteristic() const {
  switch (kind_) {
    case Kind::Rational: return 0;
    case Kind::Prime: return p_;
    case Kind::Quadratic: return base_->characteristic();
  }
  throw InternalError("unreachable");
}

bool Field::operator==(const Field& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Rational: return true;
    case Kind::Prime: return p_ == other.p_;
    case Kind::Quadratic:
      return *base_ == *other.base_ && *d_ == *other.d_;
  }
  return false;
}

std::string Field::describe() const {
  switch (kind_) {
    case Kind::Rational: return "Q";
    case Kind::Prime: return "GF(" + p_.str() + ")";
    case Kind::Quadratic: return base_->describe() + "(sqrt " + d_->str() + ")";
  }
  return "?";
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------
// Scalar construction

Scalar::Scalar(FieldPtr field, Scalar a, Scalar b) : field_(std::move(field)) {
  quad_.reserve(2);
  quad_.push_back(std::move(a));
  quad_.push_back(std::move(b));
}

Scalar Scalar::zero(const FieldPtr& field) { return of_int(field, 0); }
Scalar Scalar::one(const FieldPtr& field) { return of_int(field, 1); }

Scalar Scalar::of_int(const FieldPtr& field, long long value) {
  return of_fraction(field, BigInt(value), BigInt(1));
}

namespace {

BigInt mod_reduce(const BigInt& v, const BigInt& p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r;
}

// Inverse mod an odd prime via Fermat.
BigInt mod_inverse(const BigInt& a, const BigInt& p) {
  BigInt r = mod_reduce(a, p);
  if (r == 0) throw DivisionByZeroError("division by zero in GF(" + p.str() + ")");
  return mp::powm(r, p - 2, p);
}

}  // namespace

Scalar Scalar::of_fraction(const FieldPtr& field, const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZeroError("zero denominator");
  switch (field->kind()) {
    case Field::Kind::Rational:
      return Scalar(field, BigRat(num, den));
    case Field::Kind::Prime: {
      const BigInt& p = field->modulus();
      BigInt v = mod_reduce(num, p) * mod_inverse(den, p);
      return Scalar(field, BigRat(mod_reduce(v, p)));
    }
    case Field::Kind::Quadratic: {
      Scalar a = of_fraction(field->base(), num, den);
      Scalar b = zero(field->base());
      return Scalar(field, std::move(a), std::move(b));
    }
  }
  throw InternalError("unreachable");
}

Scalar Scalar::quadratic(const FieldPtr& field, Scalar a, Scalar b) {
  if (field->kind() != Field::Kind::Quadratic)
    throw FieldMismatchError("quadratic components on a non-quadratic field");
  if (!same_field(a.field(), field->base()) || !same_field(b.field(), field->base()))
    throw FieldMismatchError("components must live in the base field");
  return Scalar(field, std::move(a), std::move(b));
}

const BigRat& Scalar::rational_value() const {
  if (field_->kind() != Field::Kind::Rational) throw FieldMismatchError("not a rational");
  return rat_;
}

BigInt Scalar::residue() const {
  if (field_->kind() != Field::Kind::Prime) throw FieldMismatchError("not a prime-field element");
  return mp::numerator(rat_);
}

const Scalar& Scalar::re() const {
  if (quad_.empty()) throw FieldMismatchError("not a quadratic-extension element");
  return quad_[0];
}

const Scalar& Scalar::im() const {
  if (quad_.empty()) throw FieldMismatchError("not a quadratic-extension element");
  return quad_[1];
}

// ---------------------------------------------------------------------------
// Arithmetic

bool Scalar::is_zero() const {
  if (field_->kind() == Field::Kind::Quadratic) return quad_[0].is_zero() && quad_[1].is_zero();
  return rat_ == 0;
}

bool Scalar::is_one() const {
  if (field_->kind() == Field::Kind::Quadratic) return quad_[0].is_one() && quad_[1].is_zero();
  return rat_ == 1;
}

namespace {

void require_same_field(const Scalar& a, const Scalar& b) {
  if (!same_field(a.field(), b.field()))
    throw FieldMismatchError("scalars from different fields: " + a.field()->describe() + " vs " +
                             b.field()->describe());
}

}  // namespace

Scalar Scalar::operator-() const {
  switch (field_->kind()) {
    case Field::Kind::Rational:
      return Scalar(field_, -rat_);
    case Field::Kind::Prime:
      return Scalar(field_, BigRat(mod_reduce(-mp::numerator(rat_), field_->modulus())));
    case Field::Kind::Quadratic:
      return Scalar(field_, -quad_[0], -quad_[1]);
  }
  throw InternalError("unreachable");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  switch (a.field_->kind()) {
    case Field::Kind::Rational:
      return Scalar(a.field_, a.rat_ + b.rat_);
    case Field::Kind::Prime:
      return Scalar(a.field_, BigRat(mod_reduce(mp::numerator(a.rat_) + mp::numerator(b.rat_),
                                                a.field_->modulus())));
    case Field::Kind::Quadratic:
      return Scalar(a.field_, a.quad_[0] + b.quad_[0], a.quad_[1] + b.quad_[1]);
  }
  throw InternalError("unreachable");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  switch (a.field_->kind()) {
    case Field::Kind::Rational:
      return Scalar(a.field_, a.rat_ * b.rat_);
    case Field::Kind::Prime:
      return Scalar(a.field_, BigRat(mod_reduce(mp::numerator(a.rat_) * mp::numerator(b.rat_),
                                                a.field_->modulus())));
    case Field::Kind::Quadratic: {
      // (a0 + a1 r)(b0 + b1 r) = a0 b0 + a1 b1 d + (a0 b1 + a1 b0) r
      const Scalar& d = a.field_->radicand();
      return Scalar(a.field_, a.quad_[0] * b.quad_[0] + a.quad_[1] * b.quad_[1] * d,
                    a.quad_[0] * b.quad_[1] + a.quad_[1] * b.quad_[0]);
    }
  }
  throw InternalError("unreachable");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZeroError("inverse of zero in " + field_->describe());
  switch (field_->kind()) {
    case Field::Kind::Rational:
      return Scalar(field_, BigRat(1) / rat_);
    case Field::Kind::Prime:
      return Scalar(field_, BigRat(mod_inverse(mp::numerator(rat_), field_->modulus())));
    case Field::Kind::Quadratic: {
      // 1/(a + b r) = (a - b r) / (a^2 - b^2 d); the norm is nonzero because
      // d is not a square in the base field.
      const Scalar& d = field_->radicand();
      Scalar norm = quad_[0] * quad_[0] - quad_[1] * quad_[1] * d;
      Scalar ninv = norm.inverse();
      return Scalar(field_, quad_[0] * ninv, -(quad_[1] * ninv));
    }
  }
  throw InternalError("unreachable");
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::pow(long long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                               : static_cast<unsigned long long>(e);
  Scalar acc = Scalar::one(field_);
  while (k > 0) {
    if (k & 1ull) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& other) const {
  if (!same_field(field_, other.field_)) return false;
  if (field_->kind() == Field::Kind::Quadratic)
    return quad_[0] == other.quad_[0] && quad_[1] == other.quad_[1];
  return rat_ == other.rat_;
}

// ---------------------------------------------------------------------------
// Canonical strings

namespace {

std::string rat_str(const BigRat& r) {
  BigInt num = mp::numerator(r), den = mp::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Does the base-field canonical string of x start with '-'?
bool base_str_negative(const Scalar& x) {
  return x.field()->kind() == Field::Kind::Rational && x.rational_value() < 0;
}

}  // namespace

std::string Scalar::str() const {
  switch (field_->kind()) {
    case Field::Kind::Rational:
    case Field::Kind::Prime:
      return rat_str(rat_);
    case Field::Kind::Quadratic: {
      if (quad_[1].is_zero()) return quad_[0].str();
      if (base_str_negative(quad_[1])) return quad_[0].str() + "-" + (-quad_[1]).str() + "*r";
      return quad_[0].str() + "+" + quad_[1].str() + "*r";
    }
  }
  throw InternalError("unreachable");
}

namespace {

BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw ParseError("empty integer");
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) throw ParseError("malformed integer '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw ParseError("malformed integer '" + std::string(s) + "'");
  return BigInt(std::string(s));
}

Scalar parse_base(const FieldPtr& field, std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Scalar::of_fraction(field, parse_integer(s), 1);
  BigInt num = parse_integer(s.substr(0, slash));
  BigInt den = parse_integer(s.substr(slash + 1));
  return Scalar::of_fraction(field, num, den);
}

}  // namespace

Scalar Scalar::parse(const FieldPtr& field, std::string_view text) {
  if (field->kind() != Field::Kind::Quadratic) return parse_base(field, text);
  if (text.size() >= 2 && text.substr(text.size() - 2) == "*r") {
    std::string_view body = text.substr(0, text.size() - 2);
    // Split at the last sign character past position 0; base strings carry a
    // sign only at the front, so this is unambiguous.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') { split = k; break; }
    }
    if (split == std::string_view::npos)
      throw ParseError("malformed quadratic scalar '" + std::string(text) + "'");
    Scalar a = parse_base(field->base(), body.substr(0, split));
    Scalar b = parse_base(field->base(), body.substr(split + 1));
    if (body[split] == '-') b = -b;
    return Scalar::quadratic(field, std::move(a), std::move(b));
  }
  return Scalar::quadratic(field, parse_base(field->base(), text), Scalar::zero(field->base()));
}

// ---------------------------------------------------------------------------
// Square roots

namespace {

// Floor square root test for nonnegative integers.
std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = mp::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

std::optional<Scalar> rational_sqrt(const Scalar& x) {
  const BigRat& v = x.rational_value();
  if (v < 0) return std::nullopt;
  auto rn = exact_isqrt(mp::numerator(v));
  if (!rn) return std::nullopt;
  auto rd = exact_isqrt(mp::denominator(v));
  if (!rd) return std::nullopt;
  return Scalar::of_fraction(x.field(), *rn, *rd);
}

// Deterministic Tonelli-Shanks; the quadratic non-residue is found by
// scanning 2, 3, ... upward.
std::optional<Scalar> prime_sqrt(const Scalar& x) {
  const BigInt p = x.field()->modulus();
  BigInt a = x.residue();
  if (a == 0) return Scalar::zero(x.field());
  BigInt legendre = mp::powm(a, (p - 1) / 2, p);
  if (legendre != 1) return std::nullopt;

  // p - 1 = q * 2^s with q odd.
  BigInt q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }

  BigInt z = 2;
  while (mp::powm(z, (p - 1) / 2, p) != p - 1) ++z;

  BigInt m = s;
  BigInt c = mp::powm(z, q, p);
  BigInt t = mp::powm(a, q, p);
  BigInt r = mp::powm(a, (q + 1) / 2, p);
  while (t != 1) {
    BigInt i = 0;
    BigInt tt = t;
    while (tt != 1) { tt = (tt * tt) % p; ++i; }
    BigInt exp = m - i - 1;
    BigInt b = c;
    for (BigInt k = 0; k < exp; ++k) b = (b * b) % p;
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  if (r > (p - 1) / 2) r = p - r;  // canonical representative
  return Scalar::of_fraction(x.field(), r, 1);
}

// Preferred representative of the pair {x, -x}.
bool preferred_sign(const Scalar& x) {
  switch (x.field()->kind()) {
    case Field::Kind::Rational:
      return x.rational_value() >= 0;
    case Field::Kind::Prime:
      return x.residue() <= (x.field()->modulus() - 1) / 2;
    case Field::Kind::Quadratic: {
      if (!x.re().is_zero()) return preferred_sign(x.re());
      return preferred_sign(x.im());
    }
  }
  return true;
}

std::optional<Scalar> quadratic_sqrt(const Scalar& x) {
  const FieldPtr& field = x.field();
  const FieldPtr& base = field->base();
  const Scalar& d = field->radicand();
  const Scalar& a = x.re();
  const Scalar& b = x.im();
  const Scalar half = Scalar::of_fraction(base, 1, 2);

  if (b.is_zero()) {
    // (u + v r)^2 = u^2 + v^2 d + 2uv r, so either v = 0 or u = 0.
    if (auto u = square_root(a)) return Scalar::quadratic(field, *u, Scalar::zero(base));
    if (auto v = square_root(a / d)) return Scalar::quadratic(field, Scalar::zero(base), *v);
    return std::nullopt;
  }

  // 2uv = b with u != 0, and u^2 is a root of 4 U^2 - 4 a U + b^2 d = 0,
  // i.e. u^2 = (a +- sqrt(a^2 - b^2 d)) / 2. The norm a^2 - b^2 d must be a
  // base-field square for a root to exist.
  auto t = square_root(a * a - b * b * d);
  if (!t) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    Scalar usq = (sign == 0) ? (a + *t) * half : (a - *t) * half;
    if (auto u = square_root(usq)) {
      if (u->is_zero()) continue;
      Scalar v = b * half / *u;
      Scalar root = Scalar::quadratic(field, *u, v);
      if (root * root == x) {
        if (!preferred_sign(root)) root = -root;
        return root;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Scalar> square_root(const Scalar& x) {
  switch (x.field()->kind()) {
    case Field::Kind::Rational: return rational_sqrt(x);
    case Field::Kind::Prime: return prime_sqrt(x);
    case Field::Kind::Quadratic: {
      auto r = quadratic_sqrt(x);
      if (r && !preferred_sign(*r)) r = -*r;
      return r;
    }
  }
  throw InternalError("unreachable");
}

}  // namespace cliffcoact
