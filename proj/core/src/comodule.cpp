#include "cliffcoact/comodule.hpp"

#include <tuple>

namespace cliffcoact {

// ---------------------------------------------------------------------------
// Carriers

LinearOperator LinearOperator::identity(const AlgebraPtr& a) {
  return {a, Matrix::identity(a->field(), a->dim())};
}

LinearOperator LinearOperator::from_function(const AlgebraPtr& a,
                                             const std::function<Element(const Element&)>& f) {
  return {a, operator_matrix(a, f)};
}

Element LinearOperator::apply(const Element& e) const {
  if (!same_algebra(algebra, e.algebra())) throw AlgebraMismatchError("operator applied across algebras");
  return Element::from_vector(algebra, m.apply(e.to_vector()));
}

Coaction Coaction::from_function(const AlgebraPtr& a, const En& en,
                                 const std::function<TensorElement(const Element&)>& f) {
  const std::size_t da = a->dim(), de = en.dim();
  Matrix m(a->field(), da * de, da);
  for (std::size_t c = 0; c < da; ++c) {
    TensorElement t = f(Element::basis(a, a->label_at(c)));
    if (!same_algebra(t.left, a) || !same_algebra(t.right, en.algebra()))
      throw AlgebraMismatchError("coaction image in the wrong tensor space");
    for (const auto& [lr, v] : t.coeffs)
      m.at(a->index_of(lr.first) * de + en.algebra()->index_of(lr.second), c) = v;
  }
  return Coaction{a, en, std::move(m)};
}

Coaction Coaction::trivial(const AlgebraPtr& a, const En& en) {
  return from_function(a, en, [&](const Element& e) { return TensorElement::pure(e, en.one()); });
}

TensorElement Coaction::apply(const Element& e) const {
  if (!same_algebra(algebra, e.algebra())) throw AlgebraMismatchError("coaction applied across algebras");
  const std::size_t de = en.dim();
  Vec img = rho.apply(e.to_vector());
  TensorElement t(algebra, en.algebra());
  for (std::size_t r = 0; r < img.size(); ++r)
    if (!img[r].is_zero())
      t.add_term(algebra->label_at(r / de), en.algebra()->label_at(r % de), img[r]);
  return t;
}

Action Action::from_function(const AlgebraPtr& a, const En& en,
                             const std::function<Element(const Element&, const Element&)>& f) {
  const std::size_t da = a->dim(), de = en.dim();
  Matrix m(a->field(), da, de * da);
  for (std::size_t h = 0; h < de; ++h)
    for (std::size_t c = 0; c < da; ++c) {
      Element img = f(Element::basis(en.algebra(), en.algebra()->label_at(h)),
                      Element::basis(a, a->label_at(c)));
      for (const auto& [l, v] : img.coeffs()) m.at(a->index_of(l), h * da + c) = v;
    }
  return Action{a, en, std::move(m)};
}

Action Action::counit_action(const AlgebraPtr& a, const En& en) {
  return from_function(a, en,
                       [&](const Element& h, const Element& x) { return x * counit(en, h); });
}

Element Action::apply(const Element& h, const Element& a) const {
  if (!same_algebra(algebra, a.algebra()) || !same_algebra(en.algebra(), h.algebra()))
    throw AlgebraMismatchError("action applied across algebras");
  const std::size_t da = algebra->dim();
  Element out(algebra);
  for (const auto& [lh, ch] : h.coeffs()) {
    const std::size_t base = en.algebra()->index_of(lh) * da;
    for (const auto& [la, ca] : a.coeffs()) {
      const Scalar f = ch * ca;
      const std::size_t col = base + algebra->index_of(la);
      for (std::size_t r = 0; r < da; ++r) {
        const Scalar& v = mu.at(r, col);
        if (!v.is_zero()) out.add_term(algebra->label_at(r), f * v);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verifiers

VerifyReport verify_comodule_algebra(const Coaction& rho) {
  const AlgebraPtr& a = rho.algebra;
  const En& en = rho.en;
  const std::size_t da = a->dim();

  if (rho.apply(Element::one(a)) != TensorElement::pure(Element::one(a), en.one()))
    return {false, "rho(1) = 1 (x) 1", "1"};

  for (std::size_t i = 0; i < da; ++i) {
    const BasisLabel bl = a->label_at(i);
    const Element b = Element::basis(a, bl);
    const TensorElement rb = rho.apply(b);

    // Counit: (Id (x) eps) rho = Id.
    Element back(a);
    for (const auto& [lr, c] : rb.coeffs)
      if (lr.second.mask == 0) back.add_term(lr.first, c);
    if (back != b) return {false, "counit law", label_string(bl)};

    // Coassociativity: (rho (x) Id) rho = (Id (x) Delta) rho.
    std::map<std::tuple<BasisLabel, BasisLabel, BasisLabel>, Scalar> lhs, rhs;
    auto add3 = [](auto& m, const std::tuple<BasisLabel, BasisLabel, BasisLabel>& k,
                   const Scalar& c) {
      if (c.is_zero()) return;
      auto [it, inserted] = m.try_emplace(k, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (const auto& [lr, c] : rb.coeffs) {
      for (const auto& [lr2, c2] : rho.apply(Element::basis(a, lr.first)).coeffs)
        add3(lhs, {lr2.first, lr2.second, lr.second}, c * c2);
      for (const auto& [lr2, c2] : comul(en, en.basis(lr.second)).coeffs)
        add3(rhs, {lr.first, lr2.first, lr2.second}, c * c2);
    }
    if (lhs != rhs) return {false, "coassociativity", label_string(bl)};
  }

  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < da; ++k) {
      const Element x = Element::basis(a, a->label_at(i));
      const Element y = Element::basis(a, a->label_at(k));
      if (rho.apply(mul(x, y)) != rho.apply(x) * rho.apply(y))
        return {false, "multiplicativity",
                label_string(a->label_at(i)) + ", " + label_string(a->label_at(k))};
    }
  return {};
}

VerifyReport verify_module_algebra(const Action& mu) {
  const AlgebraPtr& a = mu.algebra;
  const En& en = mu.en;
  const std::size_t da = a->dim(), de = en.dim();

  for (std::size_t i = 0; i < da; ++i) {
    const Element b = Element::basis(a, a->label_at(i));
    if (mu.apply(en.one(), b) != b) return {false, "unit acts as identity", label_string(a->label_at(i))};
  }

  // Associativity over basis triples (h', h, a).
  for (std::size_t hp = 0; hp < de; ++hp)
    for (std::size_t h = 0; h < de; ++h) {
      const Element ehp = en.basis(en.algebra()->label_at(hp));
      const Element eh = en.basis(en.algebra()->label_at(h));
      const Element prod = mul(ehp, eh);
      for (std::size_t i = 0; i < da; ++i) {
        const Element b = Element::basis(a, a->label_at(i));
        if (mu.apply(ehp, mu.apply(eh, b)) != mu.apply(prod, b))
          return {false, "action associativity",
                  label_string(en.algebra()->label_at(hp)) + ", " +
                      label_string(en.algebra()->label_at(h)) + ", " +
                      label_string(a->label_at(i))};
      }
    }

  // Measuring with the coopposite comultiplication, and the unit rule.
  for (std::size_t h = 0; h < de; ++h) {
    const BasisLabel lh = en.algebra()->label_at(h);
    const Element eh = en.basis(lh);
    const TensorElement dh = comul(en, eh);
    if (mu.apply(eh, Element::one(a)) != Element::scalar(a, counit(en, eh)))
      return {false, "unit measured", label_string(lh)};
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t k = 0; k < da; ++k) {
        const Element x = Element::basis(a, a->label_at(i));
        const Element y = Element::basis(a, a->label_at(k));
        Element rhs(a);
        for (const auto& [lr, c] : dh.coeffs) {
          Element piece = mul(mu.apply(en.basis(lr.second), x), mu.apply(en.basis(lr.first), y));
          for (const auto& [pl, pc] : piece.coeffs()) rhs.add_term(pl, c * pc);
        }
        if (mu.apply(eh, mul(x, y)) != rhs)
          return {false, "measuring rule",
                  label_string(lh) + "; " + label_string(a->label_at(i)) + ", " +
                      label_string(a->label_at(k))};
      }
  }
  return {};
}

// ---------------------------------------------------------------------------
// The correspondence chain

Coaction coaction_from_action(const Action& mu) {
  if (VerifyReport r = verify_module_algebra(mu); !r.ok)
    throw InvalidActionError("not a module algebra: " + r.axiom + " at " + r.witness);
  const En& en = mu.en;
  const std::size_t de = en.dim();
  std::vector<Element> pulled;  // phi^{-1}(h_i*)
  pulled.reserve(de);
  for (std::size_t i = 0; i < de; ++i)
    pulled.push_back(duality_phi_inv(en, dual_basis(en, en.algebra()->label_at(i))));
  return Coaction::from_function(mu.algebra, en, [&](const Element& m) {
    TensorElement t(mu.algebra, en.algebra());
    for (std::size_t i = 0; i < de; ++i) {
      Element part = mu.apply(pulled[i], m);
      for (const auto& [l, c] : part.coeffs()) t.add_term(l, en.algebra()->label_at(i), c);
    }
    return t;
  });
}

Action action_from_coaction(const Coaction& rho) {
  if (VerifyReport r = verify_comodule_algebra(rho); !r.ok)
    throw InvalidCoactionError("not a comodule algebra: " + r.axiom + " at " + r.witness);
  const En& en = rho.en;
  return Action::from_function(rho.algebra, en, [&](const Element& h, const Element& m) {
    DualElement f = duality_phi(en, h);
    Element out(rho.algebra);
    for (const auto& [lr, c] : rho.apply(m).coeffs)
      out.add_term(lr.first, c * f.eval(en.basis(lr.second)));
    return out;
  });
}

CoactionTuple tuple_from_action(const Action& mu) {
  if (VerifyReport r = verify_module_algebra(mu); !r.ok)
    throw InvalidActionError("not a module algebra: " + r.axiom + " at " + r.witness);
  const AlgebraPtr& a = mu.algebra;
  CoactionTuple t{LinearOperator::from_function(
                      a, [&](const Element& e) { return mu.apply(mu.en.g(), e); }),
                  {}};
  for (unsigned i = 1; i <= mu.en.n(); ++i)
    t.ds.push_back(LinearOperator::from_function(
        a, [&](const Element& e) { return mu.apply(mu.en.x(i), e); }));
  if (VerifyReport r = verify_tuple(t); !r.ok)
    throw InternalError("valid action produced an invalid tuple: " + r.axiom);
  return t;
}

namespace {

// Matrices of d_P = d_{i_1} d_{i_2} ... (composition, rightmost applied
// first) for every subset P, indexed by mask.
std::vector<Matrix> subset_operators(const CoactionTuple& t) {
  const AlgebraPtr& a = t.phi.algebra;
  const std::size_t count = std::size_t{1} << t.ds.size();
  std::vector<Matrix> ops;
  ops.reserve(count);
  ops.push_back(Matrix::identity(a->field(), a->dim()));
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
    // d_P = d_{low+1} o d_{P minus low}
    ops.push_back(t.ds[low].m * ops[mask & (mask - 1)]);
  }
  return ops;
}

}  // namespace

Action action_from_tuple(const CoactionTuple& t) {
  if (VerifyReport r = verify_tuple(t); !r.ok)
    throw InvalidTupleError("invalid tuple: " + r.axiom + " at " + r.witness);
  const AlgebraPtr& a = t.phi.algebra;
  En en(a->field(), static_cast<unsigned>(t.ds.size()));
  std::vector<Matrix> dp = subset_operators(t);
  const std::size_t da = a->dim();
  Matrix m(a->field(), da, en.dim() * da);
  for (std::size_t h = 0; h < en.dim(); ++h) {
    const BasisLabel lh = en.algebra()->label_at(h);
    Matrix op = lh.j ? t.phi.m * dp[lh.mask] : dp[lh.mask];
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) m.at(r, h * da + c) = op.at(r, c);
  }
  return Action{a, en, std::move(m)};
}

VerifyReport verify_tuple(const CoactionTuple& t) {
  const AlgebraPtr& a = t.phi.algebra;
  const std::size_t da = a->dim();
  const Matrix id = Matrix::identity(a->field(), da);

  if (t.phi.apply(Element::one(a)) != Element::one(a)) return {false, "phi unital", "1"};
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < da; ++k) {
      const Element x = Element::basis(a, a->label_at(i));
      const Element y = Element::basis(a, a->label_at(k));
      if (t.phi.apply(mul(x, y)) != mul(t.phi.apply(x), t.phi.apply(y)))
        return {false, "phi multiplicative",
                label_string(a->label_at(i)) + ", " + label_string(a->label_at(k))};
    }
  if (t.phi.m * t.phi.m != id) return {false, "phi involutive", "-"};

  for (std::size_t di = 0; di < t.ds.size(); ++di) {
    const LinearOperator& d = t.ds[di];
    if (!same_algebra(d.algebra, a)) return {false, "derivation algebra mismatch", "-"};
    const std::string name = "d" + std::to_string(di + 1);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t k = 0; k < da; ++k) {
        const Element x = Element::basis(a, a->label_at(i));
        const Element y = Element::basis(a, a->label_at(k));
        if (d.apply(mul(x, y)) != mul(d.apply(x), y) + mul(t.phi.apply(x), d.apply(y)))
          return {false, name + " skew-derivation rule",
                  label_string(a->label_at(i)) + ", " + label_string(a->label_at(k))};
      }
    if (!(d.m * d.m).is_zero()) return {false, name + " squares to zero", "-"};
    if (t.phi.m * d.m != (d.m * t.phi.m) * Scalar::of_int(a->field(), -1))
      return {false, name + " anticommutes with phi", "-"};
    for (std::size_t dj = di + 1; dj < t.ds.size(); ++dj)
      if (d.m * t.ds[dj].m != (t.ds[dj].m * d.m) * Scalar::of_int(a->field(), -1))
        return {false, name + " anticommutes with d" + std::to_string(dj + 1), "-"};
  }
  return {};
}

Coaction coaction_from_tuple(const CoactionTuple& t) {
  if (VerifyReport r = verify_tuple(t); !r.ok)
    throw InvalidTupleError("invalid tuple: " + r.axiom + " at " + r.witness);
  const AlgebraPtr& a = t.phi.algebra;
  const unsigned n = static_cast<unsigned>(t.ds.size());
  En en(a->field(), n);
  std::vector<Matrix> dp = subset_operators(t);
  const Scalar half = Scalar::of_fraction(a->field(), 1, 2);

  Coaction direct = Coaction::from_function(a, en, [&](const Element& e) {
    TensorElement out(a, en.algebra());
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      const unsigned p = popcount(mask);
      const bool neg = (((p + 1) / 2) % 2) != 0;  // (-1)^floor((|P|+1)/2)
      Element dpa = Element::from_vector(a, dp[mask].apply(e.to_vector()));
      Element fdpa = t.phi.apply(dpa);
      const Scalar s = neg ? -half : half;
      const Scalar odd_sign = (p % 2) ? -s : s;  // (-1)^|P| s
      for (const auto& [l, c] : dpa.coeffs()) {
        out.add_term(l, {0, mask}, c * s);
        out.add_term(l, {1, mask}, c * odd_sign);
      }
      for (const auto& [l, c] : fdpa.coeffs()) {
        out.add_term(l, {0, mask}, c * s);
        out.add_term(l, {1, mask}, c * (-odd_sign));
      }
    }
    return out;
  });

  Coaction composite = coaction_from_action(action_from_tuple(t));
  if (!(direct == composite))
    throw InternalError("closed-form coaction disagrees with the composite route");
  return direct;
}

std::vector<Element> coinvariants(const Coaction& rho) {
  const AlgebraPtr& a = rho.algebra;
  const En& en = rho.en;
  const std::size_t da = a->dim(), de = en.dim();

  // Nullspace of rho - (. (x) 1).
  Matrix dif = rho.rho;
  for (std::size_t c = 0; c < da; ++c) dif.at(c * de + 0, c) -= Scalar::one(a->field());
  std::vector<Vec> ker = nullspace(dif);
  SpanBuilder direct(a->field(), da);
  for (Vec& v : ker) direct.add(std::move(v));

  // Independent route: ker(phi - Id) intersected with the kernels of the d_i,
  // with phi and d_i extracted through the action.
  Action mu = action_from_coaction(rho);
  Matrix stacked(a->field(), da * (1 + en.n()), da);
  Matrix phi_m = LinearOperator::from_function(a, [&](const Element& e) {
                   return mu.apply(en.g(), e);
                 }).m - Matrix::identity(a->field(), da);
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t c = 0; c < da; ++c) stacked.at(r, c) = phi_m.at(r, c);
  for (unsigned i = 1; i <= en.n(); ++i) {
    Matrix di = LinearOperator::from_function(
                    a, [&](const Element& e) { return mu.apply(en.x(i), e); }).m;
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) stacked.at(i * da + r, c) = di.at(r, c);
  }
  SpanBuilder via_kernels(a->field(), da);
  for (Vec& v : nullspace(stacked)) via_kernels.add(std::move(v));

  if (!same_span(direct, via_kernels))
    throw InternalError("coinvariant routes disagree");

  std::vector<Element> out;
  for (const Vec& v : direct.basis()) out.push_back(Element::from_vector(a, v));
  return out;
}

Coaction canonical_coaction(const AlgebraPtr& a) {
  En en(a->field(), a->n());
  Coaction rho = Coaction::from_function(a, en, [&](const Element& e) {
    TensorElement out(a, en.algebra());
    for (const auto& [l, c] : e.coeffs()) {
      TensorElement acc = TensorElement::pure(Element::one(a), en.one());
      if (l.j) acc = acc * TensorElement::pure(Element::basis(a, {1, 0}), en.g());
      for (unsigned i = 1; i <= a->n(); ++i)
        if (l.mask & (std::uint32_t{1} << (i - 1))) {
          TensorElement gen = TensorElement::pure(Element::basis(a, {0, std::uint32_t{1} << (i - 1)}), en.g()) +
                              TensorElement::pure(Element::one(a), en.x(i));
          acc = acc * gen;
        }
      out = out + acc * c;
    }
    return out;
  });
  if (VerifyReport r = verify_comodule_algebra(rho); !r.ok)
    throw InternalError("canonical coaction failed verification: " + r.axiom);
  return rho;
}

}  // namespace cliffcoact
