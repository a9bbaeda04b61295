#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cliffcoact/comodule.hpp"
#include "cliffcoact/quadratic.hpp"

namespace cliffcoact {

/// Element data inducing a coaction on a Clifford-type algebra:
/// untwisted (twisted = false): phi = phi_c with phi_c(a) = c^-1 a c and
///   d_i(a) = u_i a - phi_c(a) u_i, subject to c^2 in Z(A),
///   u_i c + c u_i = 0, u_i^2 in Z(A), u_i u_j + u_j u_i in Z(A);
/// twisted (even n only): phi = sigma phi_c, d_i(a) = u_i a - sigma(c^-1 a c) u_i,
///   subject to c sigma(c) in Z(A), u_i c + c sigma(u_i) = 0 and the same
///   square/anticommutator memberships.
struct InnerTuple {
  Element c;
  std::vector<Element> us;
  bool twisted = false;
};

/// Conjugation a -> c^-1 a c. Throws NotInvertibleError.
LinearOperator phi_inner(const Element& c);

/// The i-th derivation of the tuple (1-based), per the twisted flag.
LinearOperator d_inner(const InnerTuple& t, unsigned i);

/// The induced operator tuple (phi or sigma phi_c, d_1..d_n).
CoactionTuple operator_tuple(const InnerTuple& t);

struct CheckReport {
  bool ok = true;
  std::string condition;
  std::string witness;
};

/// Tests the membership and anticommutation conditions against the computed
/// center; on success the induced operator tuple is cross-checked with
/// verify_tuple. Throws NotInvertibleError when c has no inverse.
CheckReport check_inner_tuple(const InnerTuple& t);

/// The coaction of a valid tuple; equals coaction_from_tuple on the induced
/// operator tuple. Throws InvalidTupleError when the check fails.
Coaction tuple_to_coaction(const InnerTuple& t);

/// Solves c phi(b) = b c over all basis b and scans the solution space for an
/// invertible member (echelon basis vectors first, then deterministic
/// combinations). Throws NotAutomorphismError unless phi is a unital algebra
/// automorphism; returns nothing when no invertible solution exists.
std::optional<Element> solve_inner(const LinearOperator& phi);

/// Equivalence of tuples inducing the same operator data:
/// untwisted: c' Z(A) = c'' Z(A) and u_i - v_i in c Z(A);
/// twisted:   c' Z(A) = c'' Z(A) and u_i = v_i.
/// Throws FlagMismatchError when the branches differ.
bool tuples_equivalent(const InnerTuple& t1, const InnerTuple& t2);

/// delta = (-1)^(n(n+1)/2) det Q.
Scalar delta(const AlgebraPtr& a);

/// Splitting of an even-n semisimple algebra with square delta:
/// t1 = 1/2 + z/(2 sqrt(delta)), t2 = 1/2 - z/(2 sqrt(delta)); A maps onto
/// A0 x A0 by a0 + b0 z -> (a0 + sqrt(delta) b0, a0 - sqrt(delta) b0).
/// forward/backward are mutually inverse and forward is an algebra map,
/// both checked at construction. Coordinates on each side: the even basis
/// monomials in label order; row index side*dim(A0) + even index.
struct Splitting {
  Element t1, t2;
  std::vector<BasisLabel> even_basis;
  Matrix forward;   // 2*dim(A0) x dim(A)
  Matrix backward;  // dim(A) x 2*dim(A0)
};
/// Throws NotEvenError, NotSemisimpleError or DeltaNotSquareError.
Splitting split_even(const AlgebraPtr& a);

struct EnumerateOptions {
  BigInt max_modulus = 7;
  std::size_t max_dim = 16;
  unsigned threads = 0;            // 0 = hardware default (capped)
  std::uint64_t max_candidates = 200'000'000;
};

/// Exhaustive classification of one branch over GF(p): scans every invertible
/// c with the branch's c-condition, then all admissible (u_1..u_n), quotients
/// by tuple equivalence and end-to-end verifies every surviving class.
/// Candidates are scanned in lexicographic coefficient order, so each class
/// is represented by its least member; the c-range is partitioned across
/// worker threads and merged deterministically. Throws UnsupportedError /
/// TooLargeError when the guards reject the input.
std::vector<InnerTuple> enumerate_coactions(const AlgebraPtr& a, bool twisted,
                                            const EnumerateOptions& opts = {});

}  // namespace cliffcoact
