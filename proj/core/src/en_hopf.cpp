#include "cliffcoact/en_hopf.hpp"

#include <sstream>
#include <tuple>

namespace cliffcoact {

// ---------------------------------------------------------------------------
// En

En::En(const FieldPtr& field, unsigned n) : n_(n) {
  std::vector<Scalar> beta(n, Scalar::zero(field));
  algebra_ = Algebra::make(field, n, Scalar::one(field), beta);
}

Element En::x(unsigned i) const {
  if (i < 1 || i > n_) throw BadIndexError("x index out of range");
  return Element::basis(algebra_, {0, std::uint32_t{1} << (i - 1)});
}

// ---------------------------------------------------------------------------
// TensorElement

TensorElement TensorElement::pure(const Element& a, const Element& h) {
  TensorElement t(a.algebra(), h.algebra());
  for (const auto& [la, ca] : a.coeffs())
    for (const auto& [lh, ch] : h.coeffs()) t.add_term(la, lh, ca * ch);
  return t;
}

void TensorElement::add_term(BasisLabel l, BasisLabel r, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.try_emplace({l, r}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

TensorElement TensorElement::operator+(const TensorElement& other) const {
  TensorElement out = *this;
  for (const auto& [lr, c] : other.coeffs) out.add_term(lr.first, lr.second, c);
  return out;
}

TensorElement TensorElement::operator*(const TensorElement& other) const {
  if (!same_algebra(left, other.left) || !same_algebra(right, other.right))
    throw AlgebraMismatchError("tensor product across different spaces");
  TensorElement out(left, right);
  for (const auto& [lr1, c1] : coeffs)
    for (const auto& [lr2, c2] : other.coeffs) {
      const Scalar f = c1 * c2;
      if (f.is_zero()) continue;
      Element pl = left->basis_product(lr1.first, lr2.first);
      Element pr = right->basis_product(lr1.second, lr2.second);
      for (const auto& [ll, cl] : pl.coeffs())
        for (const auto& [rl, cr] : pr.coeffs()) out.add_term(ll, rl, f * cl * cr);
    }
  return out;
}

TensorElement TensorElement::operator*(const Scalar& s) const {
  TensorElement out(left, right);
  if (s.is_zero()) return out;
  for (const auto& [lr, c] : coeffs) out.add_term(lr.first, lr.second, c * s);
  return out;
}

bool TensorElement::operator==(const TensorElement& other) const {
  return same_algebra(left, other.left) && same_algebra(right, other.right) &&
         coeffs == other.coeffs;
}

std::string TensorElement::str() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [lr, c] : coeffs) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*(" << label_string(lr.first) << " (x) " << label_string(lr.second) << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// DualElement

void DualElement::add_term(BasisLabel l, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.try_emplace(l, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

Scalar DualElement::eval(const Element& h) const {
  if (!same_algebra(en_algebra, h.algebra()))
    throw AlgebraMismatchError("dual evaluation across algebras");
  Scalar out = Scalar::zero(en_algebra->field());
  for (const auto& [l, c] : coeffs) out += c * h.coeff(l);
  return out;
}

DualElement DualElement::operator+(const DualElement& other) const {
  DualElement out = *this;
  for (const auto& [l, c] : other.coeffs) out.add_term(l, c);
  return out;
}

DualElement DualElement::operator*(const Scalar& s) const {
  DualElement out(en_algebra);
  if (s.is_zero()) return out;
  for (const auto& [l, c] : coeffs) out.add_term(l, c * s);
  return out;
}

bool DualElement::operator==(const DualElement& other) const {
  return same_algebra(en_algebra, other.en_algebra) && coeffs == other.coeffs;
}

std::string DualElement::str() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : coeffs) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*(" << label_string(l) << ")*";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Structure maps

long long sign_s(std::uint32_t f_mask, std::uint32_t p_mask) {
  if (f_mask & ~p_mask) throw NotSubsetError("F is not a subset of P");
  long long pos_sum = 0, pos = 0, r = 0;
  for (unsigned i = 0; i < 32; ++i) {
    const std::uint32_t bit = 1u << i;
    if (!(p_mask & bit)) continue;
    ++pos;
    if (f_mask & bit) {
      pos_sum += pos;
      ++r;
    }
  }
  return pos_sum - r * (r + 1) / 2;
}

TensorElement comul(const En& en, const Element& h) {
  if (!same_algebra(en.algebra(), h.algebra()))
    throw AlgebraMismatchError("element does not live in this E(n)");
  TensorElement out(en.algebra(), en.algebra());
  for (const auto& [l, c] : h.coeffs()) {
    std::uint32_t f = l.mask;
    while (true) {  // all submasks of P, including 0 and P
      const Scalar sgn = (sign_s(f, l.mask) % 2 != 0) ? -c : c;
      out.add_term({l.j, f}, {(popcount(f) + l.j) & 1u, l.mask & ~f}, sgn);
      if (f == 0) break;
      f = (f - 1) & l.mask;
    }
  }
  return out;
}

Scalar counit(const En& en, const Element& h) {
  Scalar out = Scalar::zero(en.field());
  for (const auto& [l, c] : h.coeffs())
    if (l.mask == 0) out += c;
  return out;
}

Element antipode(const En& en, const Element& h) {
  if (!same_algebra(en.algebra(), h.algebra()))
    throw AlgebraMismatchError("element does not live in this E(n)");
  Element out(en.algebra());
  for (const auto& [l, c] : h.coeffs()) {
    const unsigned p = popcount(l.mask);
    const bool negate = (l.j * p) & 1u;
    out.add_term({(l.j + p) & 1u, l.mask}, negate ? -c : c);
  }
  return out;
}

DualElement dual_basis(const En& en, BasisLabel l) {
  DualElement d(en.algebra());
  d.add_term(l, Scalar::one(en.field()));
  return d;
}

DualElement dual_unit(const En& en) {
  DualElement d(en.algebra());
  d.add_term({0, 0}, Scalar::one(en.field()));
  d.add_term({1, 0}, Scalar::one(en.field()));
  return d;
}

DualElement dual_convolve(const En& en, const DualElement& f, const DualElement& h) {
  if (!same_algebra(f.en_algebra, en.algebra()) || !same_algebra(h.en_algebra, en.algebra()))
    throw AlgebraMismatchError("dual elements from a different E(n)");
  DualElement out(en.algebra());
  for (std::size_t bi = 0; bi < en.dim(); ++bi) {
    const BasisLabel b = en.algebra()->label_at(bi);
    TensorElement d = comul(en, en.basis(b));
    Scalar val = Scalar::zero(en.field());
    for (const auto& [lr, c] : d.coeffs) {
      auto it1 = f.coeffs.find(lr.first);
      if (it1 == f.coeffs.end()) continue;
      auto it2 = h.coeffs.find(lr.second);
      if (it2 == h.coeffs.end()) continue;
      val += c * it1->second * it2->second;
    }
    out.add_term(b, val);
  }
  return out;
}

DualElement duality_phi(const En& en, const Element& h) {
  DualElement out(en.algebra());
  for (const auto& [l, c] : h.coeffs()) {
    const unsigned p = popcount(l.mask);
    const bool s0 = ((p + 1) / 2) % 2 != 0;       // floor((|P|+1)/2)
    const bool s1 = ((p / 2) + l.j) % 2 != 0;     // floor(|P|/2) + j
    out.add_term({0, l.mask}, s0 ? -c : c);
    out.add_term({1, l.mask}, s1 ? -c : c);
  }
  return out;
}

Element duality_phi_inv(const En& en, const DualElement& f) {
  Element out(en.algebra());
  const Scalar half = Scalar::of_fraction(en.field(), 1, 2);
  for (const auto& [l, c] : f.coeffs) {
    const unsigned p = popcount(l.mask);
    if (l.j == 0) {
      // (x_P)* pulls back to (-1)^floor((|P|+1)/2) (x_P + g x_P)/2
      const Scalar s = (((p + 1) / 2) % 2 != 0) ? -(c * half) : c * half;
      out.add_term({0, l.mask}, s);
      out.add_term({1, l.mask}, s);
    } else {
      // (g x_P)* pulls back to (-1)^floor(|P|/2) (x_P - g x_P)/2
      const Scalar s = ((p / 2) % 2 != 0) ? -(c * half) : c * half;
      out.add_term({0, l.mask}, s);
      out.add_term({1, l.mask}, -s);
    }
  }
  return out;
}

DualElement duality_psi(const En& en, const Element& h) {
  // Generator images, extended as an algebra map into the convolution algebra.
  DualElement psi_g(en.algebra());
  psi_g.add_term({0, 0}, Scalar::one(en.field()));
  psi_g.add_term({1, 0}, -Scalar::one(en.field()));
  DualElement out(en.algebra());
  for (const auto& [l, c] : h.coeffs()) {
    DualElement acc = dual_unit(en);
    if (l.j) acc = dual_convolve(en, acc, psi_g);
    for (unsigned i = 0; i < 32; ++i)
      if (l.mask & (1u << i)) {
        DualElement psi_x(en.algebra());
        psi_x.add_term({0, 1u << i}, Scalar::one(en.field()));
        psi_x.add_term({1, 1u << i}, Scalar::one(en.field()));
        acc = dual_convolve(en, acc, psi_x);
      }
    out = out + acc * c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verifiers

HopfOps canonical_hopf_ops(const En& en) {
  return HopfOps{
      [en](const Element& h) { return comul(en, h); },
      [en](const Element& h) { return counit(en, h); },
      [en](const Element& h) { return antipode(en, h); },
  };
}

VerifyReport verify_hopf(const En& en) { return verify_hopf(en, canonical_hopf_ops(en)); }

namespace {

using TripleKey = std::tuple<BasisLabel, BasisLabel, BasisLabel>;

void add_triple(std::map<TripleKey, Scalar>& m, const TripleKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

}  // namespace

VerifyReport verify_hopf(const En& en, const HopfOps& ops) {
  const AlgebraPtr& alg = en.algebra();
  const std::size_t d = en.dim();
  const Element unit = en.one();

  if (ops.comul(unit) != TensorElement::pure(unit, unit))
    return {false, "comultiplication unit", "1"};
  if (!ops.counit(unit).is_one()) return {false, "counit unit", "1"};

  for (std::size_t i = 0; i < d; ++i) {
    const BasisLabel bl = alg->label_at(i);
    const Element h = en.basis(bl);
    const TensorElement dh = ops.comul(h);

    // (Delta (x) Id) Delta = (Id (x) Delta) Delta
    std::map<TripleKey, Scalar> lhs, rhs;
    for (const auto& [lr, c] : dh.coeffs) {
      for (const auto& [lr2, c2] : ops.comul(en.basis(lr.first)).coeffs)
        add_triple(lhs, {lr2.first, lr2.second, lr.second}, c * c2);
      for (const auto& [lr2, c2] : ops.comul(en.basis(lr.second)).coeffs)
        add_triple(rhs, {lr.first, lr2.first, lr2.second}, c * c2);
    }
    if (lhs != rhs) return {false, "coassociativity", label_string(bl)};

    // Counit laws.
    Element left(alg), right(alg);
    for (const auto& [lr, c] : dh.coeffs) {
      left.add_term(lr.second, c * ops.counit(en.basis(lr.first)));
      right.add_term(lr.first, c * ops.counit(en.basis(lr.second)));
    }
    if (left != h) return {false, "left counit law", label_string(bl)};
    if (right != h) return {false, "right counit law", label_string(bl)};

    // Antipode law: m(S (x) Id)Delta = eps * 1 = m(Id (x) S)Delta.
    Element s_left(alg), s_right(alg);
    for (const auto& [lr, c] : dh.coeffs) {
      for (const auto& [pl, pc] :
           mul(ops.antipode(en.basis(lr.first)), en.basis(lr.second)).coeffs())
        s_left.add_term(pl, c * pc);
      for (const auto& [pl, pc] :
           mul(en.basis(lr.first), ops.antipode(en.basis(lr.second))).coeffs())
        s_right.add_term(pl, c * pc);
    }
    Element expected = Element::scalar(alg, ops.counit(h));
    if (s_left != expected) return {false, "antipode law (left)", label_string(bl)};
    if (s_right != expected) return {false, "antipode law (right)", label_string(bl)};
  }

  // Delta and eps are algebra maps.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const BasisLabel la = alg->label_at(i), lb = alg->label_at(k);
      const Element a = en.basis(la), b = en.basis(lb);
      const Element ab = mul(a, b);
      TensorElement dab(alg, alg);
      for (const auto& [l, c] : ab.coeffs()) {
        for (const auto& [lr, c2] : ops.comul(en.basis(l)).coeffs)
          dab.add_term(lr.first, lr.second, c * c2);
      }
      if (dab != ops.comul(a) * ops.comul(b))
        return {false, "comultiplication not multiplicative",
                label_string(la) + ", " + label_string(lb)};
      Scalar eab = Scalar::zero(en.field());
      for (const auto& [l, c] : ab.coeffs()) eab += c * ops.counit(en.basis(l));
      if (eab != ops.counit(a) * ops.counit(b))
        return {false, "counit not multiplicative", label_string(la) + ", " + label_string(lb)};
    }

  return {};
}

VerifyReport verify_duality_iso(const En& en) {
  return verify_duality_iso(en, [en](const Element& h) { return duality_phi(en, h); });
}

VerifyReport verify_duality_iso(const En& en,
                                const std::function<DualElement(const Element&)>& iso) {
  const AlgebraPtr& alg = en.algebra();
  const std::size_t d = en.dim();

  if (iso(en.one()) != dual_unit(en)) return {false, "unit not preserved", "1"};

  // Bijectivity: the matrix of images must be invertible.
  Matrix m(en.field(), d, d);
  std::vector<DualElement> images;
  for (std::size_t i = 0; i < d; ++i) {
    images.push_back(iso(en.basis(alg->label_at(i))));
    for (const auto& [l, c] : images.back().coeffs) m.at(alg->index_of(l), i) = c;
  }
  if (!inverse(m)) return {false, "not bijective", "-"};

  for (std::size_t i = 0; i < d; ++i) {
    const BasisLabel bl = alg->label_at(i);
    // Counit compatibility: iso(a)(1) = eps(a).
    if (images[i].eval(en.one()) != counit(en, en.basis(bl)))
      return {false, "counit not preserved", label_string(bl)};
  }

  // Multiplicativity into the convolution algebra.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Element a = en.basis(alg->label_at(i)), b = en.basis(alg->label_at(k));
      DualElement lhs(alg);
      for (const auto& [l, c] : mul(a, b).coeffs()) lhs = lhs + images[alg->index_of(l)] * c;
      if (lhs != dual_convolve(en, images[i], images[k]))
        return {false, "not multiplicative",
                label_string(alg->label_at(i)) + ", " + label_string(alg->label_at(k))};
    }

  // Coopposite coalgebra condition through pairings: for all basis a, b, b',
  //   sum over Delta(a) of iso(a_2)(b) iso(a_1)(b') = iso(a)(b b').
  for (std::size_t ai = 0; ai < d; ++ai) {
    const BasisLabel la = alg->label_at(ai);
    const TensorElement da = comul(en, en.basis(la));
    for (std::size_t bi = 0; bi < d; ++bi)
      for (std::size_t ci = 0; ci < d; ++ci) {
        const Element b = en.basis(alg->label_at(bi)), bp = en.basis(alg->label_at(ci));
        Scalar lhs = Scalar::zero(en.field());
        for (const auto& [lr, c] : da.coeffs)
          lhs += c * images[alg->index_of(lr.second)].eval(b) *
                 images[alg->index_of(lr.first)].eval(bp);
        if (lhs != images[ai].eval(mul(b, bp)))
          return {false, "coopposite coalgebra condition",
                  label_string(la) + "; " + label_string(alg->label_at(bi)) + ", " +
                      label_string(alg->label_at(ci))};
      }
  }

  return {};
}

}  // namespace cliffcoact
