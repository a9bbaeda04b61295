#include "cliffcoact/clifford.hpp"

#include <algorithm>
#include <sstream>

namespace cliffcoact {

namespace {
// Eager product tables up to this dimension; larger algebras multiply
// monomials on demand.
constexpr std::size_t kTableDimCap = 128;
}  // namespace

// ---------------------------------------------------------------------------
// Algebra

AlgebraPtr Algebra::make(const FieldPtr& field, unsigned n, Scalar alpha,
                         std::vector<Scalar> beta, std::vector<Scalar> gamma,
                         std::map<std::pair<unsigned, unsigned>, Scalar> lambda) {
  if (field->characteristic() == 2)
    throw CharTwoError("Clifford-type algebras require characteristic != 2");
  if (n > 20) throw BadIndexError("generator count out of supported range");
  if (beta.size() != n) throw BadIndexError("beta must have n entries");
  if (gamma.empty()) gamma.assign(n, Scalar::zero(field));
  if (gamma.size() != n) throw BadIndexError("gamma must have n entries");
  if (!same_field(alpha.field(), field)) throw FieldMismatchError("alpha field mismatch");
  for (const auto& s : beta)
    if (!same_field(s.field(), field)) throw FieldMismatchError("beta field mismatch");
  for (const auto& s : gamma)
    if (!same_field(s.field(), field)) throw FieldMismatchError("gamma field mismatch");
  for (const auto& [ij, s] : lambda) {
    if (ij.first < 1 || ij.second <= ij.first || ij.second > n)
      throw BadIndexError("lambda index pair must satisfy 1 <= i < j <= n");
    if (!same_field(s.field(), field)) throw FieldMismatchError("lambda field mismatch");
  }

  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->field_ = field;
  a->n_ = n;
  a->alpha_ = std::move(alpha);
  a->beta_ = std::move(beta);
  a->gamma_ = std::move(gamma);
  // Drop explicit zeros so descriptors compare structurally.
  for (auto& [ij, s] : lambda)
    if (!s.is_zero()) a->lambda_.emplace(ij, s);
  a->orthogonal_ =
      std::all_of(a->gamma_.begin(), a->gamma_.end(), [](const Scalar& s) { return s.is_zero(); }) &&
      a->lambda_.empty();

  if (a->dim() <= kTableDimCap) {
    const std::size_t d = a->dim();
    a->table_.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Element p = a->basis_product_uncached(a->label_at(i), a->label_at(j));
        TermList terms(p.coeffs().begin(), p.coeffs().end());
        a->table_.push_back(std::move(terms));
      }
  }
  return a;
}

const Algebra::TermList* Algebra::cached_product(BasisLabel a, BasisLabel b) const {
  if (table_.empty()) return nullptr;
  return &table_[index_of(a) * dim() + index_of(b)];
}

const Scalar& Algebra::beta(unsigned i) const {
  if (i < 1 || i > n_) throw BadIndexError("beta index out of range");
  return beta_[i - 1];
}

const Scalar& Algebra::gamma(unsigned i) const {
  if (i < 1 || i > n_) throw BadIndexError("gamma index out of range");
  return gamma_[i - 1];
}

Scalar Algebra::lambda(unsigned i, unsigned j) const {
  if (i < 1 || j <= i || j > n_) throw BadIndexError("lambda index pair out of range");
  auto it = lambda_.find({i, j});
  return it == lambda_.end() ? Scalar::zero(field_) : it->second;
}

bool Algebra::operator==(const Algebra& other) const {
  return n_ == other.n_ && same_field(field_, other.field_) && alpha_ == other.alpha_ &&
         beta_ == other.beta_ && gamma_ == other.gamma_ && lambda_ == other.lambda_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// Right-multiplication by G, pushed through x_P with X_i G = gamma_i - G X_i.
Element Algebra::append_g(const Element& e) const {
  AlgebraPtr self = shared_from_this();
  Element out(self);
  for (const auto& [l, c] : e.coeffs()) {
    if (l.mask == 0) {
      if (l.j == 0) {
        out.add_term({1, 0}, c);
      } else {
        out.add_term({0, 0}, c * alpha_);
      }
      continue;
    }
    const unsigned top = 31 - static_cast<unsigned>(__builtin_clz(l.mask));  // max index - 1
    const std::uint32_t rest = l.mask & ~(std::uint32_t{1} << top);
    // g^j x_rest x_{top+1} g = gamma * g^j x_rest - (g^j x_rest g) x_{top+1}
    Element head = Element::basis(self, {l.j, rest});
    out.add_term({l.j, rest}, c * gamma_[top]);
    Element moved = append_x(append_g(head), top + 1);
    for (const auto& [ml, mc] : moved.coeffs()) out.add_term(ml, -(c * mc));
  }
  return out;
}

// Right-multiplication by X_i (1-based i), normalizing with
// X_j X_i = lambda_ij - X_i X_j (i < j) and X_i^2 = beta_i.
Element Algebra::append_x(const Element& e, unsigned i) const {
  AlgebraPtr self = shared_from_this();
  const std::uint32_t bit = std::uint32_t{1} << (i - 1);
  Element out(self);
  for (const auto& [l, c] : e.coeffs()) {
    const std::uint32_t above = l.mask & ~((bit << 1) - 1);  // indices > i
    if (above == 0) {
      if (l.mask & bit) {
        out.add_term({l.j, l.mask & ~bit}, c * beta_[i - 1]);
      } else {
        out.add_term({l.j, l.mask | bit}, c);
      }
      continue;
    }
    const unsigned top = 31 - static_cast<unsigned>(__builtin_clz(l.mask));
    const std::uint32_t rest = l.mask & ~(std::uint32_t{1} << top);
    // ... x_{top+1} x_i = lambda_{i,top+1} * 1 - x_i x_{top+1}
    out.add_term({l.j, rest}, c * lambda(i, top + 1));
    Element moved = append_x(append_x(Element::basis(self, {l.j, rest}), i), top + 1);
    for (const auto& [ml, mc] : moved.coeffs()) out.add_term(ml, -(c * mc));
  }
  return out;
}

Element Algebra::basis_product_uncached(BasisLabel a, BasisLabel b) const {
  AlgebraPtr self = shared_from_this();
  if (orthogonal_) {
    // Fast path: sign bookkeeping by popcounts of crossing bits.
    Scalar c = Scalar::one(field_);
    if (b.j == 1 && (popcount(a.mask) & 1u)) c = -c;  // g across x_{P1}
    unsigned j = a.j + b.j;
    if (j == 2) { c *= alpha_; j = 0; }
    std::uint32_t m = a.mask;
    std::uint32_t incoming = b.mask;
    while (incoming) {
      const std::uint32_t bit = incoming & (~incoming + 1);
      incoming ^= bit;
      const unsigned idx = static_cast<unsigned>(__builtin_ctz(bit));
      const std::uint32_t crossed = m & ~((bit << 1) - 1);
      if (popcount(crossed) & 1u) c = -c;
      if (m & bit) {
        c *= beta_[idx];
        m &= ~bit;
      } else {
        m |= bit;
      }
      if (c.is_zero()) return Element(self);
    }
    Element out(self);
    out.add_term({j, m}, c);
    return out;
  }
  Element acc = Element::basis(self, a);
  if (b.j == 1) acc = append_g(acc);
  std::uint32_t incoming = b.mask;
  while (incoming) {
    const std::uint32_t bit = incoming & (~incoming + 1);
    incoming ^= bit;
    acc = append_x(acc, static_cast<unsigned>(__builtin_ctz(bit)) + 1);
  }
  return acc;
}

Element Algebra::basis_product(BasisLabel a, BasisLabel b) const {
  if (const TermList* t = cached_product(a, b)) {
    Element out(shared_from_this());
    for (const auto& [l, c] : *t) out.add_term(l, c);
    return out;
  }
  return basis_product_uncached(a, b);
}

// ---------------------------------------------------------------------------
// Element

Element Element::basis(const AlgebraPtr& a, BasisLabel l) {
  Element e(a);
  e.coeffs_.emplace(l, Scalar::one(a->field()));
  return e;
}

Element Element::scalar(const AlgebraPtr& a, const Scalar& s) {
  Element e(a);
  if (!s.is_zero()) e.coeffs_.emplace(BasisLabel{0, 0}, s);
  return e;
}

Element Element::one(const AlgebraPtr& a) { return scalar(a, Scalar::one(a->field())); }

Element Element::from_vector(const AlgebraPtr& a, const Vec& coords) {
  if (coords.size() != a->dim()) throw BadIndexError("coordinate length mismatch");
  Element e(a);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) e.coeffs_.emplace(a->label_at(i), coords[i]);
  return e;
}

Scalar Element::coeff(BasisLabel l) const {
  auto it = coeffs_.find(l);
  return it == coeffs_.end() ? Scalar::zero(algebra_->field()) : it->second;
}

void Element::add_term(BasisLabel l, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(l, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

Vec Element::to_vector() const {
  Vec v(algebra_->dim(), Scalar::zero(algebra_->field()));
  for (const auto& [l, c] : coeffs_) v[algebra_->index_of(l)] = c;
  return v;
}

Element Element::operator+(const Element& other) const {
  if (!same_algebra(algebra_, other.algebra_)) throw AlgebraMismatchError("sum across algebras");
  Element out = *this;
  for (const auto& [l, c] : other.coeffs_) out.add_term(l, c);
  return out;
}

Element Element::operator-() const {
  Element out(algebra_);
  for (const auto& [l, c] : coeffs_) out.coeffs_.emplace(l, -c);
  return out;
}

Element Element::operator-(const Element& other) const { return *this + (-other); }

Element Element::operator*(const Scalar& s) const {
  Element out(algebra_);
  if (s.is_zero()) return out;
  for (const auto& [l, c] : coeffs_) {
    Scalar p = c * s;
    if (!p.is_zero()) out.coeffs_.emplace(l, std::move(p));
  }
  return out;
}

Element Element::operator*(const Element& other) const { return mul(*this, other); }

bool Element::operator==(const Element& other) const {
  return same_algebra(algebra_, other.algebra_) && coeffs_ == other.coeffs_;
}

std::optional<Scalar> Element::as_scalar() const {
  if (coeffs_.empty()) return Scalar::zero(algebra_->field());
  if (coeffs_.size() == 1 && coeffs_.begin()->first == BasisLabel{0, 0})
    return coeffs_.begin()->second;
  return std::nullopt;
}

std::string label_string(BasisLabel l) {
  std::string s;
  if (l.j) s += "g";
  if (l.mask) {
    if (!s.empty()) s += " ";
    s += "x{";
    bool first = true;
    for (unsigned i = 0; i < 32; ++i)
      if (l.mask & (1u << i)) {
        if (!first) s += ",";
        first = false;
        s += std::to_string(i + 1);
      }
    s += "}";
  }
  return s.empty() ? "1" : s;
}

std::string Element::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    if (l.j == 0 && l.mask == 0) {
      os << c.str();
    } else {
      os << c.str() << "*" << label_string(l);
    }
  }
  return os.str();
}

Element mul(const Element& a, const Element& b) {
  if (!same_algebra(a.algebra(), b.algebra()))
    throw AlgebraMismatchError("product across algebras");
  const AlgebraPtr& alg = a.algebra();
  Element out(alg);
  for (const auto& [la, ca] : a.coeffs())
    for (const auto& [lb, cb] : b.coeffs()) {
      const Scalar f = ca * cb;
      if (f.is_zero()) continue;
      if (const auto* terms = alg->cached_product(la, lb)) {
        for (const auto& [lp, cp] : *terms) out.add_term(lp, f * cp);
      } else {
        Element p = alg->basis_product_uncached(la, lb);
        for (const auto& [lp, cp] : p.coeffs()) out.add_term(lp, f * cp);
      }
    }
  return out;
}

Element grade_involution(const Element& a) {
  Element out(a.algebra());
  for (const auto& [l, c] : a.coeffs())
    out.add_term(l, ((popcount(l.mask) + l.j) & 1u) ? -c : c);
  return out;
}

std::pair<Element, Element> even_odd_split(const Element& a) {
  Element even(a.algebra()), odd(a.algebra());
  for (const auto& [l, c] : a.coeffs()) {
    if ((popcount(l.mask) + l.j) & 1u) {
      odd.add_term(l, c);
    } else {
      even.add_term(l, c);
    }
  }
  return {even, odd};
}

Matrix left_mul_matrix(const Element& a) {
  const AlgebraPtr& alg = a.algebra();
  const std::size_t d = alg->dim();
  Matrix m(alg->field(), d, d);
  for (std::size_t c = 0; c < d; ++c) {
    Element img = mul(a, Element::basis(alg, alg->label_at(c)));
    for (const auto& [l, v] : img.coeffs()) m.at(alg->index_of(l), c) = v;
  }
  return m;
}

Matrix right_mul_matrix(const Element& a) {
  const AlgebraPtr& alg = a.algebra();
  const std::size_t d = alg->dim();
  Matrix m(alg->field(), d, d);
  for (std::size_t c = 0; c < d; ++c) {
    Element img = mul(Element::basis(alg, alg->label_at(c)), a);
    for (const auto& [l, v] : img.coeffs()) m.at(alg->index_of(l), c) = v;
  }
  return m;
}

Matrix operator_matrix(const AlgebraPtr& a, const std::function<Element(const Element&)>& f) {
  const std::size_t d = a->dim();
  Matrix m(a->field(), d, d);
  for (std::size_t c = 0; c < d; ++c) {
    Element img = f(Element::basis(a, a->label_at(c)));
    if (!same_algebra(img.algebra(), a)) throw AlgebraMismatchError("operator leaves the algebra");
    for (const auto& [l, v] : img.coeffs()) m.at(a->index_of(l), c) = v;
  }
  return m;
}

std::optional<Element> try_invert(const Element& a) {
  const AlgebraPtr& alg = a.algebra();
  Vec one(alg->dim(), Scalar::zero(alg->field()));
  one[0] = Scalar::one(alg->field());
  auto x = solve(left_mul_matrix(a), one);
  if (!x) return std::nullopt;
  Element inv = Element::from_vector(alg, *x);
  if (mul(inv, a) != Element::one(alg))
    throw InternalError("one-sided inverse in a finite-dimensional algebra");
  return inv;
}

std::vector<Element> center(const AlgebraPtr& a) {
  const std::size_t d = a->dim();
  // Stack the commutator operators [., b] over all basis monomials b.
  Matrix stacked(a->field(), d * d, d);
  for (std::size_t bi = 0; bi < d; ++bi) {
    Element b = Element::basis(a, a->label_at(bi));
    Matrix comm = left_mul_matrix(b) - right_mul_matrix(b);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) stacked.at(bi * d + r, c) = comm.at(r, c);
  }
  std::vector<Element> out;
  for (auto& v : nullspace(stacked)) out.push_back(Element::from_vector(a, v));
  return out;
}

Scalar regular_trace(const Element& a) {
  const AlgebraPtr& alg = a.algebra();
  Scalar tr = Scalar::zero(alg->field());
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    BasisLabel l = alg->label_at(i);
    tr += mul(a, Element::basis(alg, l)).coeff(l);
  }
  return tr;
}

}  // namespace cliffcoact
