#include "cliffcoact/quadratic.hpp"

#include <algorithm>

namespace cliffcoact {

SymmetricForm::SymmetricForm(Matrix m) : q(std::move(m)) {
  if (q.rows() != q.cols()) throw BadIndexError("symmetric form must be square");
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = i + 1; j < q.cols(); ++j)
      if (q.at(i, j) != q.at(j, i)) throw BadIndexError("form matrix not symmetric");
}

SymmetricForm build_q(const AlgebraPtr& a) {
  const unsigned n = a->n();
  Matrix q(a->field(), n + 1, n + 1);
  const Scalar half = Scalar::of_fraction(a->field(), 1, 2);
  q.at(0, 0) = a->alpha();
  for (unsigned i = 1; i <= n; ++i) {
    q.at(i, i) = a->beta(i);
    q.at(0, i) = q.at(i, 0) = a->gamma(i) * half;
    for (unsigned j = i + 1; j <= n; ++j) q.at(i, j) = q.at(j, i) = a->lambda(i, j) * half;
  }
  return SymmetricForm(std::move(q));
}

namespace {

// Congruence helpers acting simultaneously on Q and on the basis matrix P.
void swap_basis(Matrix& q, Matrix& p, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t k = 0; k < q.rows(); ++k) std::swap(q.at(a, k), q.at(b, k));
  for (std::size_t k = 0; k < q.rows(); ++k) std::swap(q.at(k, a), q.at(k, b));
  for (std::size_t k = 0; k < p.rows(); ++k) std::swap(p.at(k, a), p.at(k, b));
}

// e_a <- e_a + f * e_b
void add_basis(Matrix& q, Matrix& p, std::size_t a, std::size_t b, const Scalar& f) {
  for (std::size_t k = 0; k < q.rows(); ++k) q.at(a, k) += f * q.at(b, k);
  for (std::size_t k = 0; k < q.rows(); ++k) q.at(k, a) += f * q.at(k, b);
  for (std::size_t k = 0; k < p.rows(); ++k) p.at(k, a) += f * p.at(k, b);
}

}  // namespace

Congruence diagonalize(const SymmetricForm& form) {
  Matrix q = form.q;
  const std::size_t n = q.rows();
  Matrix p = Matrix::identity(q.field(), n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && q.at(pivot, pivot).is_zero()) ++pivot;
    if (pivot == n) {
      // Zero diagonal in the working block: make one with e_i <- e_i + e_j.
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j)
          if (!q.at(i, j).is_zero()) {
            add_basis(q, p, i, j, Scalar::one(q.field()));
            pivot = i;
            found = true;
          }
      if (!found) break;  // remaining block is identically zero
    }
    swap_basis(q, p, k, pivot);
    const Scalar inv = q.at(k, k).inverse();
    for (std::size_t r = k + 1; r < n; ++r) {
      if (q.at(r, k).is_zero()) continue;
      add_basis(q, p, r, k, -(q.at(r, k) * inv));
    }
  }
  return Congruence{std::move(p), std::move(q)};
}

namespace {

Element generator(const AlgebraPtr& a, unsigned idx) {  // idx 0 = G, idx i = X_i
  if (idx == 0) return Element::basis(a, {1, 0});
  return Element::basis(a, {0, std::uint32_t{1} << (idx - 1)});
}

}  // namespace

Orthogonalized orthogonalize_algebra(const AlgebraPtr& a) {
  Congruence cg = diagonalize(build_q(a));
  const unsigned n = a->n();
  Scalar alpha = cg.d.at(0, 0);
  std::vector<Scalar> beta;
  for (unsigned i = 1; i <= n; ++i) beta.push_back(cg.d.at(i, i));
  AlgebraPtr fresh = Algebra::make(a->field(), n, alpha, beta);

  std::vector<Element> images;
  for (unsigned k = 0; k <= n; ++k) {
    Element img(a);
    for (unsigned i = 0; i <= n; ++i) {
      const Scalar& c = cg.p.at(i, k);
      if (!c.is_zero()) img = img + generator(a, i) * c;
    }
    images.push_back(std::move(img));
  }
  // The images must satisfy the orthogonal relations exactly.
  for (unsigned k = 0; k <= n; ++k)
    for (unsigned l = k; l <= n; ++l) {
      Element anti = images[k] * images[l] + images[l] * images[k];
      Scalar expect = k == l ? cg.d.at(k, k) + cg.d.at(k, k) : Scalar::zero(a->field());
      if (anti != Element::scalar(a, expect))
        throw InternalError("orthogonalized generator images violate the relations");
    }
  return Orthogonalized{fresh, std::move(images)};
}

bool is_semisimple(const AlgebraPtr& a) { return !det(build_q(a).q).is_zero(); }

std::vector<Element> radical(const AlgebraPtr& a) {
  SymmetricForm q = build_q(a);
  std::vector<Vec> kernel = nullspace(q.q);
  SpanBuilder span(a->field(), a->dim());
  std::vector<Element> frontier;
  for (const Vec& v : kernel) {
    Element e(a);
    for (unsigned i = 0; i <= a->n(); ++i)
      if (!v[i].is_zero()) e = e + generator(a, i) * v[i];
    if (span.add(e.to_vector())) frontier.push_back(std::move(e));
  }
  // Two-sided closure under multiplication by basis monomials; the span
  // dimension is monotone and bounded by dim(A).
  std::size_t rounds = 0;
  while (!frontier.empty()) {
    if (++rounds > a->dim() + 1) throw InternalError("radical closure failed to stabilize");
    std::vector<Element> next;
    for (const Element& e : frontier)
      for (std::size_t bi = 0; bi < a->dim(); ++bi) {
        Element b = Element::basis(a, a->label_at(bi));
        for (Element prod : {mul(b, e), mul(e, b)})
          if (!prod.is_zero() && span.add(prod.to_vector())) next.push_back(std::move(prod));
      }
    frontier = std::move(next);
  }
  std::vector<Element> out;
  for (const Vec& v : span.basis()) out.push_back(Element::from_vector(a, v));
  return out;
}

Quotient quotient_semisimple(const AlgebraPtr& a) {
  SymmetricForm form = build_q(a);
  std::vector<Vec> kernel = nullspace(form.q);
  const unsigned n = a->n();

  if (kernel.empty()) {
    return Quotient{a, Matrix::identity(a->field(), a->dim()), [&] {
                      std::vector<std::size_t> all(n + 1);
                      for (std::size_t i = 0; i <= n; ++i) all[i] = i;
                      return all;
                    }()};
  }

  // Echelonize the kernel; its pivot coordinates are replaced by the
  // complement spanned by the remaining standard generators.
  SpanBuilder ker_span(a->field(), n + 1);
  for (Vec& v : kernel) ker_span.add(std::move(v));
  std::vector<Vec> rows = ker_span.basis();
  std::vector<bool> is_pivot(n + 1, false);
  for (const Vec& r : rows) {
    std::size_t piv = 0;
    while (r[piv].is_zero()) ++piv;
    is_pivot[piv] = true;
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i <= n; ++i)
    if (!is_pivot[i]) kept.push_back(i);

  if (kept.empty()) {
    // Quotient is the ground field; the projection is the augmentation.
    Matrix proj(a->field(), 1, a->dim());
    proj.at(0, 0) = Scalar::one(a->field());
    return Quotient{nullptr, std::move(proj), {}};
  }

  const unsigned m = static_cast<unsigned>(kept.size()) - 1;
  Scalar alpha = form.q.at(kept[0], kept[0]);
  std::vector<Scalar> beta, gamma;
  std::map<std::pair<unsigned, unsigned>, Scalar> lambda;
  const Scalar two = Scalar::of_int(a->field(), 2);
  for (unsigned i = 1; i <= m; ++i) {
    beta.push_back(form.q.at(kept[i], kept[i]));
    gamma.push_back(form.q.at(kept[0], kept[i]) * two);
    for (unsigned j = i + 1; j <= m; ++j)
      lambda.emplace(std::pair{i, j}, form.q.at(kept[i], kept[j]) * two);
  }
  AlgebraPtr quotient_alg = Algebra::make(a->field(), m, alpha, beta, gamma, lambda);

  // Generator images in the quotient: kept generators map to the fresh ones,
  // a kernel pivot e_c maps to e_c minus its echelon row (supported on kept
  // coordinates only).
  std::vector<Element> gen_img;
  std::vector<std::size_t> kept_pos(n + 1, 0);
  for (std::size_t t = 0; t < kept.size(); ++t) kept_pos[kept[t]] = t;
  for (unsigned c = 0; c <= n; ++c) {
    if (!is_pivot[c]) {
      gen_img.push_back(generator(quotient_alg, static_cast<unsigned>(kept_pos[c])));
      continue;
    }
    const Vec* row = nullptr;
    for (const Vec& r : rows) {
      std::size_t piv = 0;
      while (r[piv].is_zero()) ++piv;
      if (piv == c) { row = &r; break; }
    }
    Element img(quotient_alg);
    for (std::size_t t = 0; t < kept.size(); ++t) {
      const Scalar& coeff = (*row)[kept[t]];
      if (!coeff.is_zero())
        img = img + generator(quotient_alg, static_cast<unsigned>(t)) * (-coeff);
    }
    gen_img.push_back(std::move(img));
  }

  const std::size_t qdim = quotient_alg->dim();
  Matrix proj(a->field(), qdim, a->dim());
  for (std::size_t col = 0; col < a->dim(); ++col) {
    BasisLabel l = a->label_at(col);
    Element img = Element::one(quotient_alg);
    if (l.j) img = img * gen_img[0];
    for (unsigned i = 1; i <= n; ++i)
      if (l.mask & (std::uint32_t{1} << (i - 1))) img = img * gen_img[i];
    for (const auto& [ql, qc] : img.coeffs()) proj.at(quotient_alg->index_of(ql), col) = qc;
  }
  return Quotient{quotient_alg, std::move(proj), std::move(kept)};
}

BialgebraVerdict bialgebra_admissible(const AlgebraPtr& a) {
  Congruence cg = diagonalize(build_q(a));
  std::vector<Scalar> nonzero;
  for (std::size_t i = 0; i < cg.d.rows(); ++i)
    if (!cg.d.at(i, i).is_zero()) nonzero.push_back(cg.d.at(i, i));
  if (nonzero.size() != 1)
    return {false, "rank Q = " + std::to_string(nonzero.size()) + ", need rank 1"};
  if (!square_root(nonzero[0]))
    return {false, "rank Q = 1 but the diagonal entry " + nonzero[0].str() +
                       " is not a square in " + a->field()->describe()};
  return {true, "isomorphic to the algebra Cl(1,0,...,0)"};
}

const char* to_string(StructureVerdict v) {
  switch (v) {
    case StructureVerdict::CentralSimpleOverK: return "central-simple-over-k";
    case StructureVerdict::CentralSimpleOverQuadraticExtension:
      return "central-simple-over-quadratic-extension";
    case StructureVerdict::ProductOfTwoCSA: return "product-of-two-central-simple-algebras";
    case StructureVerdict::NotSemisimple: return "not-semisimple";
  }
  return "?";
}

StructureReport classify_structure(const AlgebraPtr& a) {
  const unsigned n = a->n();
  Scalar det_q = det(build_q(a).q);
  const bool delta_negated = ((std::size_t{n} * (n + 1)) / 2) % 2 == 1;
  Scalar delta = delta_negated ? -det_q : det_q;

  StructureReport rep{(n % 2) == 1, det_q, delta, false, StructureVerdict::NotSemisimple,
                      center(a).size()};
  if (det_q.is_zero()) return rep;
  rep.delta_square = square_root(delta).has_value();
  if (rep.n_odd) {
    rep.verdict = StructureVerdict::CentralSimpleOverK;
    if (rep.center_dim != 1) throw InternalError("odd semisimple center is not k");
  } else {
    rep.verdict = rep.delta_square ? StructureVerdict::ProductOfTwoCSA
                                   : StructureVerdict::CentralSimpleOverQuadraticExtension;
    if (rep.center_dim != 2) throw InternalError("even semisimple center is not 2-dimensional");
  }
  return rep;
}

// Defined here so the Clifford header stays independent of the form machinery.
Element pseudoscalar(const AlgebraPtr& a) {
  Congruence cg = diagonalize(build_q(a));
  Element z = Element::one(a);
  for (unsigned k = 0; k <= a->n(); ++k) {
    Element img(a);
    for (unsigned i = 0; i <= a->n(); ++i) {
      const Scalar& c = cg.p.at(i, k);
      if (!c.is_zero()) img = img + generator(a, i) * c;
    }
    z = z * img;
  }
  return z;
}

}  // namespace cliffcoact
