#include "cliffcoact/inner.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace cliffcoact {

LinearOperator phi_inner(const Element& c) {
  auto cinv = try_invert(c);
  if (!cinv) throw NotInvertibleError("conjugating element is not invertible");
  return {c.algebra(), left_mul_matrix(*cinv) * right_mul_matrix(c)};
}

namespace {

LinearOperator sigma_operator(const AlgebraPtr& a) {
  return LinearOperator::from_function(a, [](const Element& e) { return grade_involution(e); });
}

LinearOperator branch_involution(const InnerTuple& t) {
  LinearOperator conj = phi_inner(t.c);
  if (!t.twisted) return conj;
  return {conj.algebra, sigma_operator(conj.algebra).m * conj.m};
}

}  // namespace

LinearOperator d_inner(const InnerTuple& t, unsigned i) {
  if (i < 1 || i > t.us.size()) throw BadIndexError("derivation index out of range");
  const AlgebraPtr& a = t.c.algebra();
  LinearOperator phi = branch_involution(t);
  // d(x) = u x - phi(x) u
  return {a, left_mul_matrix(t.us[i - 1]) - right_mul_matrix(t.us[i - 1]) * phi.m};
}

CoactionTuple operator_tuple(const InnerTuple& t) {
  const AlgebraPtr& a = t.c.algebra();
  LinearOperator phi = branch_involution(t);
  CoactionTuple out{phi, {}};
  for (std::size_t i = 0; i < t.us.size(); ++i)
    out.ds.push_back(
        LinearOperator{a, left_mul_matrix(t.us[i]) - right_mul_matrix(t.us[i]) * phi.m});
  return out;
}

namespace {

bool in_center_span(const std::vector<Element>& center_basis, const Element& x) {
  if (x.is_zero()) return true;
  SpanBuilder span(x.algebra()->field(), x.algebra()->dim());
  for (const Element& z : center_basis) span.add(z.to_vector());
  return span.contains(x.to_vector());
}

}  // namespace

CheckReport check_inner_tuple(const InnerTuple& t) {
  const AlgebraPtr& a = t.c.algebra();
  for (const Element& u : t.us)
    if (!same_algebra(u.algebra(), a)) throw AlgebraMismatchError("tuple elements across algebras");
  if (t.twisted && a->n() % 2 != 0)
    return {false, "twisted branch requires even n", "n = " + std::to_string(a->n())};
  if (!try_invert(t.c)) throw NotInvertibleError("c is not invertible");

  const std::vector<Element> z = center(a);
  const Element sc = t.twisted ? mul(t.c, grade_involution(t.c)) : mul(t.c, t.c);
  if (!in_center_span(z, sc))
    return {false, t.twisted ? "c sigma(c) central" : "c^2 central", sc.str()};

  for (std::size_t i = 0; i < t.us.size(); ++i) {
    const Element& u = t.us[i];
    Element anti = t.twisted ? mul(u, t.c) + mul(t.c, grade_involution(u))
                             : mul(u, t.c) + mul(t.c, u);
    if (!anti.is_zero())
      return {false,
              t.twisted ? "u_i c + c sigma(u_i) = 0" : "u_i c + c u_i = 0",
              "i = " + std::to_string(i + 1) + ": " + anti.str()};
    if (!in_center_span(z, mul(u, u)))
      return {false, "u_i^2 central", "i = " + std::to_string(i + 1)};
    for (std::size_t j = i + 1; j < t.us.size(); ++j) {
      if (!in_center_span(z, mul(u, t.us[j]) + mul(t.us[j], u)))
        return {false, "u_i u_j + u_j u_i central",
                "(i,j) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"};
    }
  }

  if (VerifyReport r = verify_tuple(operator_tuple(t)); !r.ok)
    throw InternalError("checked tuple failed the operator axioms: " + r.axiom);
  return {};
}

Coaction tuple_to_coaction(const InnerTuple& t) {
  if (CheckReport r = check_inner_tuple(t); !r.ok)
    throw InvalidTupleError("tuple conditions fail: " + r.condition + " at " + r.witness);
  return coaction_from_tuple(operator_tuple(t));
}

std::optional<Element> solve_inner(const LinearOperator& phi) {
  const AlgebraPtr& a = phi.algebra;
  const std::size_t d = a->dim();
  if (phi.apply(Element::one(a)) != Element::one(a))
    throw NotAutomorphismError("phi does not fix 1");
  if (!inverse(phi.m)) throw NotAutomorphismError("phi is not bijective");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Element x = Element::basis(a, a->label_at(i));
      const Element y = Element::basis(a, a->label_at(k));
      if (phi.apply(mul(x, y)) != mul(phi.apply(x), phi.apply(y)))
        throw NotAutomorphismError("phi is not multiplicative");
    }

  // c phi(b) = b c for all basis b, linear in c.
  Matrix stacked(a->field(), d * d, d);
  for (std::size_t bi = 0; bi < d; ++bi) {
    const Element b = Element::basis(a, a->label_at(bi));
    Matrix eq = right_mul_matrix(phi.apply(b)) - left_mul_matrix(b);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) stacked.at(bi * d + r, c) = eq.at(r, c);
  }
  std::vector<Vec> sols = nullspace(stacked);
  for (const Vec& v : sols) {
    Element cand = Element::from_vector(a, v);
    if (try_invert(cand)) return cand;
  }
  // The invertible locus of the solution space avoids at most dim-many
  // hyperplanes; Vandermonde weights hit it if anything does.
  for (std::size_t trial = 2; trial <= 2 * sols.size() + 1; ++trial) {
    Element cand(a);
    Scalar w = Scalar::one(a->field());
    const Scalar step = Scalar::of_int(a->field(), static_cast<long long>(trial));
    for (const Vec& v : sols) {
      cand = cand + Element::from_vector(a, v) * w;
      w *= step;
    }
    if (!cand.is_zero() && try_invert(cand)) return cand;
  }
  return std::nullopt;
}

bool tuples_equivalent(const InnerTuple& t1, const InnerTuple& t2) {
  if (t1.twisted != t2.twisted) throw FlagMismatchError("tuples from different branches");
  const AlgebraPtr& a = t1.c.algebra();
  if (!same_algebra(a, t2.c.algebra()) || t1.us.size() != t2.us.size())
    throw AlgebraMismatchError("tuples over different algebras");

  const std::vector<Element> z = center(a);
  auto c2inv = try_invert(t2.c);
  if (!c2inv) throw NotInvertibleError("c is not invertible");
  if (!in_center_span(z, mul(*c2inv, t1.c))) return false;

  if (t1.twisted) {
    for (std::size_t i = 0; i < t1.us.size(); ++i)
      if (!(t1.us[i] == t2.us[i])) return false;
    return true;
  }
  SpanBuilder cz(a->field(), a->dim());
  for (const Element& zb : z) cz.add(mul(t1.c, zb).to_vector());
  for (std::size_t i = 0; i < t1.us.size(); ++i)
    if (!cz.contains((t1.us[i] - t2.us[i]).to_vector())) return false;
  return true;
}

Scalar delta(const AlgebraPtr& a) {
  Scalar d = det(build_q(a).q);
  return ((std::size_t{a->n()} * (a->n() + 1) / 2) % 2 == 1) ? -d : d;
}

Splitting split_even(const AlgebraPtr& a) {
  if (a->n() % 2 != 0) throw NotEvenError("splitting requires even n");
  if (!is_semisimple(a)) throw NotSemisimpleError("splitting requires a semisimple algebra");
  const Element z = pseudoscalar(a);
  auto zsq = mul(z, z).as_scalar();
  if (!zsq) throw InternalError("pseudoscalar square is not scalar");
  auto root = square_root(*zsq);
  if (!root)
    throw DeltaNotSquareError("delta is not a square in " + a->field()->describe());
  const Scalar half = Scalar::of_fraction(a->field(), 1, 2);
  const Element zn = z * root->inverse();  // zn^2 = 1
  const Element one = Element::one(a);
  Splitting s{(one + zn) * half, (one - zn) * half, {}, Matrix(a->field(), 0, 0),
              Matrix(a->field(), 0, 0)};

  for (std::size_t i = 0; i < a->dim(); ++i) {
    BasisLabel l = a->label_at(i);
    if (((popcount(l.mask) + l.j) & 1u) == 0) s.even_basis.push_back(l);
  }
  const std::size_t de = s.even_basis.size();
  std::vector<std::size_t> even_pos(a->dim(), 0);
  for (std::size_t t = 0; t < de; ++t) even_pos[a->index_of(s.even_basis[t])] = t;

  const Element zinv = z * zsq->inverse();
  Matrix fwd(a->field(), 2 * de, a->dim());
  for (std::size_t col = 0; col < a->dim(); ++col) {
    auto [ev, od] = even_odd_split(Element::basis(a, a->label_at(col)));
    Element b0 = mul(od, zinv);  // odd part = b0 z with b0 even
    Element plus = ev + b0 * *root;
    Element minus = ev - b0 * *root;
    for (const auto& [l, c] : plus.coeffs()) fwd.at(even_pos[a->index_of(l)], col) = c;
    for (const auto& [l, c] : minus.coeffs()) fwd.at(de + even_pos[a->index_of(l)], col) = c;
  }
  Matrix bwd(a->field(), a->dim(), 2 * de);
  for (std::size_t t = 0; t < de; ++t) {
    const Element e = Element::basis(a, s.even_basis[t]);
    // (u, 0) -> u t1 and (0, v) -> v t2
    for (const auto& [l, c] : mul(e, s.t1).coeffs()) bwd.at(a->index_of(l), t) = c;
    for (const auto& [l, c] : mul(e, s.t2).coeffs()) bwd.at(a->index_of(l), de + t) = c;
  }
  s.forward = std::move(fwd);
  s.backward = std::move(bwd);

  // Construction-time sanity: mutually inverse algebra maps, idempotents.
  if (mul(s.t1, s.t1) != s.t1 || mul(s.t2, s.t2) != s.t2 || !mul(s.t1, s.t2).is_zero() ||
      s.t1 + s.t2 != one)
    throw InternalError("splitting idempotents are broken");
  if (s.backward * s.forward != Matrix::identity(a->field(), a->dim()) ||
      s.forward * s.backward != Matrix::identity(a->field(), 2 * de))
    throw InternalError("splitting maps are not mutually inverse");
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t k = 0; k < a->dim(); ++k) {
      const Element x = Element::basis(a, a->label_at(i));
      const Element y = Element::basis(a, a->label_at(k));
      Vec fx = s.forward.apply(x.to_vector());
      Vec fy = s.forward.apply(y.to_vector());
      // Componentwise product inside A0 x A0, evaluated back in A.
      Element lhs_left(a), lhs_right(a), rhs_left(a), rhs_right(a);
      for (std::size_t t = 0; t < de; ++t) {
        lhs_left.add_term(s.even_basis[t], fx[t]);
        lhs_right.add_term(s.even_basis[t], fx[de + t]);
        rhs_left.add_term(s.even_basis[t], fy[t]);
        rhs_right.add_term(s.even_basis[t], fy[de + t]);
      }
      Vec fxy = s.forward.apply(mul(x, y).to_vector());
      Element prod_left = mul(lhs_left, rhs_left), prod_right = mul(lhs_right, rhs_right);
      for (std::size_t t = 0; t < de; ++t) {
        if (fxy[t] != prod_left.coeff(s.even_basis[t]) ||
            fxy[de + t] != prod_right.coeff(s.even_basis[t]))
          throw InternalError("splitting forward map is not multiplicative");
      }
    }
  return s;
}

// ---------------------------------------------------------------------------
// Enumeration over GF(p)

namespace {

struct ScanContext {
  AlgebraPtr a;
  bool twisted = false;
  long long p = 0;
  std::size_t dim = 0;
  std::vector<Element> center_basis;
  Matrix sigma = Matrix(Field::rationals(), 0, 0);
};

Element decode(const AlgebraPtr& a, std::uint64_t index, long long p) {
  // Base-p digits, most significant digit = coefficient of basis 0, so
  // ascending index enumerates coefficient vectors lexicographically.
  const std::size_t d = a->dim();
  Element e(a);
  for (std::size_t k = d; k-- > 0;) {
    const long long digit = static_cast<long long>(index % static_cast<std::uint64_t>(p));
    index /= static_cast<std::uint64_t>(p);
    if (digit) e.add_term(a->label_at(k), Scalar::of_int(a->field(), digit));
  }
  return e;
}

// All vectors of the span of `basis` in lexicographic coefficient order.
std::vector<Element> span_vectors_lex(const ScanContext& ctx, const std::vector<Vec>& basis) {
  std::vector<Element> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) total *= static_cast<std::uint64_t>(ctx.p);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    Vec v(ctx.dim, Scalar::zero(ctx.a->field()));
    for (std::size_t k = basis.size(); k-- > 0;) {
      const long long digit = static_cast<long long>(rest % static_cast<std::uint64_t>(ctx.p));
      rest /= static_cast<std::uint64_t>(ctx.p);
      if (digit) {
        const Scalar w = Scalar::of_int(ctx.a->field(), digit);
        for (std::size_t t = 0; t < ctx.dim; ++t) v[t] += basis[k][t] * w;
      }
    }
    out.push_back(Element::from_vector(ctx.a, v));
  }
  std::sort(out.begin(), out.end(), [&](const Element& x, const Element& y) {
    Vec vx = x.to_vector(), vy = y.to_vector();
    for (std::size_t t = 0; t < vx.size(); ++t) {
      BigInt rx = vx[t].residue(), ry = vy[t].residue();
      if (rx != ry) return rx < ry;
    }
    return false;
  });
  return out;
}

bool center_member(const ScanContext& ctx, const Element& x) {
  if (x.is_zero()) return true;
  SpanBuilder span(ctx.a->field(), ctx.dim);
  for (const Element& z : ctx.center_basis) span.add(z.to_vector());
  return span.contains(x.to_vector());
}

// Admissible u-tuples for a fixed c, appended to `out` as full InnerTuples.
void collect_for_c(const ScanContext& ctx, const Element& c, std::vector<InnerTuple>& out) {
  auto cinv = try_invert(c);
  if (!cinv) return;
  const Element csq = ctx.twisted ? mul(c, grade_involution(c)) : mul(c, c);
  if (!center_member(ctx, csq)) return;

  const unsigned n = ctx.a->n();
  if (n == 0) {
    out.push_back(InnerTuple{c, {}, ctx.twisted});
    return;
  }

  // u c + c u = 0 (or u c + c sigma(u) = 0) is linear in u.
  Matrix cond = ctx.twisted ? right_mul_matrix(c) + left_mul_matrix(c) * ctx.sigma
                            : right_mul_matrix(c) + left_mul_matrix(c);
  std::vector<Vec> sol = nullspace(cond);
  std::vector<Element> candidates;
  for (const Element& u : span_vectors_lex(ctx, sol))
    if (center_member(ctx, mul(u, u))) candidates.push_back(u);

  std::vector<std::size_t> pick(n, 0);
  while (true) {
    bool pair_ok = true;
    for (std::size_t i = 0; i < n && pair_ok; ++i)
      for (std::size_t j = i + 1; j < n && pair_ok; ++j) {
        const Element& ui = candidates[pick[i]];
        const Element& uj = candidates[pick[j]];
        if (!center_member(ctx, mul(ui, uj) + mul(uj, ui))) pair_ok = false;
      }
    if (pair_ok) {
      std::vector<Element> us;
      for (std::size_t i = 0; i < n; ++i) us.push_back(candidates[pick[i]]);
      out.push_back(InnerTuple{c, std::move(us), ctx.twisted});
    }
    std::size_t k = n;
    while (k > 0) {
      if (++pick[k - 1] < candidates.size()) break;
      pick[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
}

std::string operator_key(const CoactionTuple& t) {
  std::string key;
  auto dump = [&key](const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        key += m.at(r, c).str();
        key += ',';
      }
    key += '|';
  };
  dump(t.phi.m);
  for (const auto& d : t.ds) dump(d.m);
  return key;
}

}  // namespace

std::vector<InnerTuple> enumerate_coactions(const AlgebraPtr& a, bool twisted,
                                            const EnumerateOptions& opts) {
  if (a->field()->kind() != Field::Kind::Prime)
    throw UnsupportedError("enumeration requires a prime field GF(p)");
  if (a->field()->modulus() > opts.max_modulus)
    throw TooLargeError("modulus exceeds the configured bound");
  if (a->dim() > opts.max_dim) throw TooLargeError("dimension exceeds the configured bound");
  if (!is_semisimple(a))
    throw UnsupportedError("enumeration requires a semisimple algebra");
  if (twisted && a->n() % 2 != 0)
    throw UnsupportedError("the twisted branch exists for even n only");

  ScanContext ctx;
  ctx.a = a;
  ctx.twisted = twisted;
  ctx.p = a->field()->modulus().convert_to<long long>();
  ctx.dim = a->dim();
  ctx.center_basis = center(a);
  ctx.sigma = sigma_operator(a).m;

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < ctx.dim; ++i) {
    total *= static_cast<std::uint64_t>(ctx.p);
    if (total > opts.max_candidates) throw TooLargeError("candidate space exceeds the budget");
  }

  // Partition the c-range across workers; chunks are merged back in range
  // order, so the result is identical to a sequential lexicographic scan.
  unsigned workers = opts.threads ? opts.threads
                                  : std::min(4u, std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
  std::vector<std::vector<InnerTuple>> chunk_results(workers);
  {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          Element c = decode(a, idx, ctx.p);
          if (c.is_zero()) continue;
          collect_for_c(ctx, c, chunk_results[w]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Quotient by equivalence: tuples are equivalent exactly when they induce
  // the same operator tuple, so dedupe on the operator matrices. The scan
  // order is lexicographic, hence the kept representative is the least one.
  std::vector<InnerTuple> classes;
  std::unordered_map<std::string, std::size_t> seen;
  for (auto& chunk : chunk_results)
    for (auto& cand : chunk) {
      std::string key = operator_key(operator_tuple(cand));
      if (seen.emplace(std::move(key), classes.size()).second) classes.push_back(std::move(cand));
    }

  for (const InnerTuple& t : classes) {
    if (CheckReport r = check_inner_tuple(t); !r.ok)
      throw InternalError("enumerated class fails its own conditions: " + r.condition);
    if (VerifyReport r = verify_comodule_algebra(tuple_to_coaction(t)); !r.ok)
      throw InternalError("enumerated class fails comodule verification: " + r.axiom);
  }
  return classes;
}

}  // namespace cliffcoact
