#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cliffcoact/linalg.hpp"
#include "cliffcoact/scalars.hpp"

namespace cliffcoact {

/// Basis monomial g^j x_P of a Clifford-type algebra: j in {0,1}, P a subset
/// of {1..n} stored as a bitmask (bit i-1 <=> index i). Ordered j-major, then
/// by mask value; the linear index is (j << n) | mask.
struct BasisLabel {
  unsigned j = 0;
  std::uint32_t mask = 0;
  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

inline unsigned popcount(std::uint32_t m) { return static_cast<unsigned>(__builtin_popcount(m)); }

std::string label_string(BasisLabel l);  // "1", "g", "x{1,3}", "g x{1,3}"

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;
class Element;

/// The unital associative algebra on generators G, X_1..X_n subject to
/// G^2 = alpha, X_i^2 = beta_i, G X_i + X_i G = gamma_i,
/// X_i X_j + X_j X_i = lambda_ij (i < j). Basis {G^j X_P}, dimension 2^(n+1).
/// Immutable after construction; safe to share across threads.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  /// Validates and builds a descriptor (rejects characteristic 2, lambda
  /// entries with i >= j, out-of-range indices).
  static AlgebraPtr make(const FieldPtr& field, unsigned n, Scalar alpha,
                         std::vector<Scalar> beta, std::vector<Scalar> gamma = {},
                         std::map<std::pair<unsigned, unsigned>, Scalar> lambda = {});

  const FieldPtr& field() const { return field_; }
  unsigned n() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << (n_ + 1); }
  const Scalar& alpha() const { return alpha_; }
  const Scalar& beta(unsigned i) const;          // 1-based
  const Scalar& gamma(unsigned i) const;         // 1-based
  Scalar lambda(unsigned i, unsigned j) const;   // 1-based, i < j; absent => 0
  bool orthogonal() const { return orthogonal_; }

  std::size_t index_of(BasisLabel l) const { return (std::size_t{l.j} << n_) | l.mask; }
  BasisLabel label_at(std::size_t idx) const {
    return BasisLabel{static_cast<unsigned>(idx >> n_),
                      static_cast<std::uint32_t>(idx & ((std::uint32_t{1} << n_) - 1))};
  }

  /// Product of two basis monomials, normalized to the g^j x_P form.
  Element basis_product(BasisLabel a, BasisLabel b) const;

  bool operator==(const Algebra& other) const;

 private:
  friend Element mul(const Element& a, const Element& b);
  using TermList = std::vector<std::pair<BasisLabel, Scalar>>;

  Algebra() = default;
  Element basis_product_uncached(BasisLabel a, BasisLabel b) const;
  Element append_g(const Element& e) const;
  Element append_x(const Element& e, unsigned i) const;
  const TermList* cached_product(BasisLabel a, BasisLabel b) const;

  FieldPtr field_;
  unsigned n_ = 0;
  Scalar alpha_ = Scalar::zero(Field::rationals());
  std::vector<Scalar> beta_, gamma_;
  std::map<std::pair<unsigned, unsigned>, Scalar> lambda_;
  bool orthogonal_ = true;
  std::vector<TermList> table_;  // dim*dim products, built eagerly for small dim
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Element of a Clifford-type algebra: a sparse coefficient map over the
/// basis {g^j x_P}; zero entries are never stored.
class Element {
 public:
  explicit Element(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}
  static Element basis(const AlgebraPtr& a, BasisLabel l);
  static Element scalar(const AlgebraPtr& a, const Scalar& s);
  static Element one(const AlgebraPtr& a);
  static Element from_vector(const AlgebraPtr& a, const Vec& coords);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::map<BasisLabel, Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(BasisLabel l) const;
  void add_term(BasisLabel l, const Scalar& c);
  bool is_zero() const { return coeffs_.empty(); }
  Vec to_vector() const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator-() const;
  Element operator*(const Element& other) const;  // algebra product
  Element operator*(const Scalar& s) const;
  bool operator==(const Element& other) const;
  bool operator!=(const Element& other) const { return !(*this == other); }

  /// If the element is a scalar multiple of 1, returns that scalar.
  std::optional<Scalar> as_scalar() const;
  std::string str() const;

 private:
  AlgebraPtr algebra_;
  std::map<BasisLabel, Scalar> coeffs_;
};

Element mul(const Element& a, const Element& b);

/// Main (grade) involution: +1 on even monomials (|P| + j even), -1 on odd.
Element grade_involution(const Element& a);

/// a = even + odd with sigma(even) = even and sigma(odd) = -odd.
std::pair<Element, Element> even_odd_split(const Element& a);

/// Two-sided inverse found by solving a x = 1 in the regular representation;
/// one-sidedness cannot happen in finite dimension, but x a = 1 is checked.
std::optional<Element> try_invert(const Element& a);

/// Canonical basis of the center, the nullspace of all commutators with
/// basis monomials.
std::vector<Element> center(const AlgebraPtr& a);

/// Trace of left multiplication by a in the fixed basis order.
Scalar regular_trace(const Element& a);

/// Product of the orthogonal generators produced by the deterministic
/// congruence diagonalization, expressed in the original basis. Its square
/// is a central scalar whose square-class is basis independent.
Element pseudoscalar(const AlgebraPtr& a);  // defined with the quadratic ops

Matrix left_mul_matrix(const Element& a);
Matrix right_mul_matrix(const Element& a);
/// Matrix whose column c is the image of the c-th basis monomial.
Matrix operator_matrix(const AlgebraPtr& a, const std::function<Element(const Element&)>& f);

}  // namespace cliffcoact
