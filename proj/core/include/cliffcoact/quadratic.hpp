#pragma once

#include <string>
#include <vector>

#include "cliffcoact/clifford.hpp"

namespace cliffcoact {

/// The symmetric (n+1)x(n+1) matrix of the quadratic form attached to a
/// Clifford-type algebra: diagonal (alpha, beta_i), entry (0,i) = gamma_i/2,
/// entry (i,j) = lambda_ij/2.
struct SymmetricForm {
  Matrix q;
  explicit SymmetricForm(Matrix m);
  std::size_t size() const { return q.rows(); }
  const FieldPtr& field() const { return q.field(); }
};

/// Exact congruence P^T Q P = D with D diagonal; columns of P are the new
/// basis vectors in old coordinates.
struct Congruence {
  Matrix p;
  Matrix d;
};

SymmetricForm build_q(const AlgebraPtr& a);

/// Deterministic congruence diagonalization: pivot the lowest-index nonzero
/// diagonal entry; when the working block has an all-zero diagonal but a
/// nonzero entry Q[i][j], apply e_i <- e_i + e_j first (2 Q[i][j] != 0 since
/// char != 2).
Congruence diagonalize(const SymmetricForm& q);

/// Orthogonal presentation of the same algebra: gamma' = lambda' = 0 and
/// (alpha', beta'_i) read off the diagonal. generator_images[k] is the image
/// of the k-th new generator inside the original algebra; the images are
/// checked against the new relations.
struct Orthogonalized {
  AlgebraPtr algebra;
  std::vector<Element> generator_images;
};
Orthogonalized orthogonalize_algebra(const AlgebraPtr& a);

/// det Q != 0.
bool is_semisimple(const AlgebraPtr& a);

/// Canonical linear basis of the Jacobson radical, the two-sided ideal
/// generated by ker Q inside span(G, X_1..X_n). Computed by closure under
/// multiplication by basis monomials on both sides.
std::vector<Element> radical(const AlgebraPtr& a);

/// Quotient by the radical, realized as a fresh Clifford-type algebra on a
/// deterministic complement of ker Q. algebra is null when the quotient is
/// the ground field. projection maps old coordinates to quotient coordinates.
struct Quotient {
  AlgebraPtr algebra;               // null => ground field k
  Matrix projection;                // dim(quotient) x dim(A)
  std::vector<std::size_t> kept;    // indices of kept generators (0 = G)
};
Quotient quotient_semisimple(const AlgebraPtr& a);

struct BialgebraVerdict {
  bool admissible = false;
  std::string reason;
};
/// True iff rank Q = 1 and the nonzero diagonal entry of D is a square.
BialgebraVerdict bialgebra_admissible(const AlgebraPtr& a);

enum class StructureVerdict {
  CentralSimpleOverK,
  CentralSimpleOverQuadraticExtension,
  ProductOfTwoCSA,
  NotSemisimple,
};
const char* to_string(StructureVerdict v);

/// Structure trichotomy for 2^(n+1)-dimensional Clifford-type algebras:
/// delta = (-1)^(n(n+1)/2) det Q; n odd semisimple => central simple over k;
/// n even semisimple => central simple over k(sqrt delta) or a product of
/// two central simple algebras, by the square-class of delta.
struct StructureReport {
  bool n_odd = false;
  Scalar det_q;
  Scalar delta;
  bool delta_square = false;
  StructureVerdict verdict = StructureVerdict::NotSemisimple;
  std::size_t center_dim = 0;
};
StructureReport classify_structure(const AlgebraPtr& a);

}  // namespace cliffcoact
