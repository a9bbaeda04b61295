#pragma once

#include <vector>

#include "cliffcoact/en_hopf.hpp"

namespace cliffcoact {

/// k-linear endomorphism of a Clifford-type algebra; column c of the matrix
/// holds the coordinates of the image of the c-th basis monomial.
struct LinearOperator {
  AlgebraPtr algebra;
  Matrix m;

  static LinearOperator identity(const AlgebraPtr& a);
  static LinearOperator from_function(const AlgebraPtr& a,
                                      const std::function<Element(const Element&)>& f);
  Element apply(const Element& e) const;
  bool operator==(const LinearOperator& other) const {
    return same_algebra(algebra, other.algebra) && m == other.m;
  }
};

/// Right coaction rho: A -> A (x) E(n), stored as a (dimA*dimE) x dimA
/// matrix; the row of the pair (a, e) is index(a)*dimE + index(e).
struct Coaction {
  AlgebraPtr algebra;
  En en;
  Matrix rho;

  static Coaction from_function(const AlgebraPtr& a, const En& en,
                                const std::function<TensorElement(const Element&)>& f);
  static Coaction trivial(const AlgebraPtr& a, const En& en);  // a -> a (x) 1
  TensorElement apply(const Element& e) const;
  bool operator==(const Coaction& other) const {
    return same_algebra(algebra, other.algebra) && en == other.en && rho == other.rho;
  }
};

/// Left action mu: E(n) (x) A -> A, stored as a dimA x (dimE*dimA) matrix;
/// the column of the pair (h, a) is index(h)*dimA + index(a).
struct Action {
  AlgebraPtr algebra;
  En en;
  Matrix mu;

  static Action from_function(const AlgebraPtr& a, const En& en,
                              const std::function<Element(const Element&, const Element&)>& f);
  static Action counit_action(const AlgebraPtr& a, const En& en);  // h (x) a -> eps(h) a
  Element apply(const Element& h, const Element& a) const;
  bool operator==(const Action& other) const {
    return same_algebra(algebra, other.algebra) && en == other.en && mu == other.mu;
  }
};

/// The data classifying a coaction: an algebra involution phi together with
/// phi-derivations d_1..d_n satisfying d_i^2 = 0, phi d_i = -d_i phi and
/// d_i d_j = -d_j d_i.
struct CoactionTuple {
  LinearOperator phi;
  std::vector<LinearOperator> ds;

  bool operator==(const CoactionTuple& other) const {
    return phi == other.phi && ds == other.ds;
  }
};

/// Comodule-algebra axioms checked on every basis element / pair:
/// coassociativity, counit, multiplicativity, rho(1) = 1 (x) 1.
VerifyReport verify_comodule_algebra(const Coaction& rho);

/// Module-algebra axioms over the coopposite: associativity and unit of the
/// action, the measuring rule mu(h (x) ab) = mu(h_2 (x) a) mu(h_1 (x) b),
/// and mu(h (x) 1) = eps(h) 1.
VerifyReport verify_module_algebra(const Action& mu);

/// rho_mu(a) = sum_i mu(phi^{-1}(h_i*) (x) a) (x) h_i over the basis of E(n).
/// Throws InvalidActionError unless mu passes verify_module_algebra.
Coaction coaction_from_action(const Action& mu);

/// mu_rho(h (x) a) = phi(h)(a_1) a_0. Throws InvalidCoactionError unless rho
/// passes verify_comodule_algebra.
Action action_from_coaction(const Coaction& rho);

/// phi = mu(g (x) -), d_i = mu(x_i (x) -); the result passes verify_tuple.
CoactionTuple tuple_from_action(const Action& mu);

/// mu(g^j x_P (x) a) = phi^j(d_P(a)) with d_P the composition of the d_i over
/// P in increasing index order and d_{} = Id.
Action action_from_tuple(const CoactionTuple& t);

/// Checks phi is a unital algebra involution and each d_i a phi-derivation,
/// plus the four operator identities; first failure is reported.
VerifyReport verify_tuple(const CoactionTuple& t);

/// The closed-form coaction of a tuple:
/// rho(a) = sum_P (-1)^floor((|P|+1)/2) [ d_P(a) (x) (x_P + (-1)^|P| g x_P)/2
///          + phi(d_P(a)) (x) (x_P + (-1)^(|P|+1) g x_P)/2 ].
/// Cross-checked against coaction_from_action(action_from_tuple(t)).
Coaction coaction_from_tuple(const CoactionTuple& t);

/// Basis of {a : rho(a) = a (x) 1}, computed as a nullspace and cross-checked
/// against ker(phi - Id) intersected with the kernels of the d_i.
std::vector<Element> coinvariants(const Coaction& rho);

/// The canonical comodule-algebra structure: rho(G) = G (x) g,
/// rho(X_i) = X_i (x) g + 1 (x) x_i, extended multiplicatively.
Coaction canonical_coaction(const AlgebraPtr& a);

}  // namespace cliffcoact
