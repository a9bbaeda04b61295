#include "cliffcoact/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cliffcoact {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& context) {
  if (!j.is_object()) throw ParseError(context + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (key == k) { ok = true; break; }
    if (!ok) throw ParseError(context + ": unknown key '" + key + "'");
  }
}

const Json& need(const Json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(context + ": missing key '" + std::string(key) + "'");
  return *it;
}

std::string need_string(const Json& j, const std::string& context) {
  if (!j.is_string()) throw ParseError(context + ": expected a string");
  return j.get<std::string>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Fields

Json field_to_json(const FieldPtr& f) {
  switch (f->kind()) {
    case Field::Kind::Rational:
      return Json{{"kind", "rational"}};
    case Field::Kind::Prime:
      return Json{{"kind", "prime"}, {"p", f->modulus().convert_to<std::uint64_t>()}};
    case Field::Kind::Quadratic:
      return Json{{"kind", "quadratic"},
                  {"base", field_to_json(f->base())},
                  {"d", f->radicand().str()}};
  }
  throw InternalError("unreachable");
}

FieldPtr field_from_json(const Json& j) {
  const std::string kind = need_string(need(j, "kind", "field"), "field.kind");
  if (kind == "rational") {
    require_keys(j, {"kind"}, "field");
    return Field::rationals();
  }
  if (kind == "prime") {
    require_keys(j, {"kind", "p"}, "field");
    const Json& p = need(j, "p", "field");
    if (!p.is_number_unsigned()) throw ParseError("field.p: expected a positive integer");
    return Field::prime(BigInt(p.get<std::uint64_t>()));
  }
  if (kind == "quadratic") {
    require_keys(j, {"kind", "base", "d"}, "field");
    FieldPtr base = field_from_json(need(j, "base", "field"));
    Scalar d = Scalar::parse(base, need_string(need(j, "d", "field"), "field.d"));
    return Field::quadratic(base, d);
  }
  throw ParseError("field.kind: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Labels and elements

BasisLabel label_from_string(std::string_view s) {
  BasisLabel l;
  if (s == "1") return l;
  if (s.substr(0, 1) == "g") {
    l.j = 1;
    s.remove_prefix(1);
    if (s.empty()) return l;
    if (s[0] != ' ') throw ParseError("malformed basis label");
    s.remove_prefix(1);
  }
  if (s.size() < 3 || s.substr(0, 2) != "x{" || s.back() != '}')
    throw ParseError("malformed basis label");
  s = s.substr(2, s.size() - 3);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string_view::npos) end = s.size();
    unsigned idx = 0;
    if (end == pos) throw ParseError("malformed basis label index");
    for (std::size_t k = pos; k < end; ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw ParseError("malformed basis label index");
      idx = idx * 10 + static_cast<unsigned>(s[k] - '0');
    }
    if (idx < 1 || idx > 32) throw ParseError("basis label index out of range");
    const std::uint32_t bit = std::uint32_t{1} << (idx - 1);
    if (l.mask & bit) throw ParseError("duplicate basis label index");
    l.mask |= bit;
    pos = end + 1;
  }
  if (l.mask == 0) throw ParseError("malformed basis label");
  return l;
}

Json element_to_json(const Element& e) {
  Json j = Json::object();
  for (const auto& [l, c] : e.coeffs()) j[label_string(l)] = c.str();
  return j;
}

Element element_from_json(const AlgebraPtr& a, const Json& j) {
  if (!j.is_object()) throw ParseError("element: expected a JSON object");
  Element e(a);
  for (const auto& [key, value] : j.items()) {
    BasisLabel l = label_from_string(key);
    if (a->index_of(l) >= a->dim()) throw ParseError("element: label '" + key + "' out of range");
    e.add_term(l, Scalar::parse(a->field(), need_string(value, "element coefficient")));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Algebra configs

Json algebra_to_config_json(const AlgebraPtr& a) {
  Json j;
  j["field"] = field_to_json(a->field());
  j["n"] = a->n();
  j["alpha"] = a->alpha().str();
  Json beta = Json::array(), gamma = Json::array(), lambda = Json::array();
  for (unsigned i = 1; i <= a->n(); ++i) beta.push_back(a->beta(i).str());
  for (unsigned i = 1; i <= a->n(); ++i) gamma.push_back(a->gamma(i).str());
  for (unsigned i = 1; i <= a->n(); ++i)
    for (unsigned k = i + 1; k <= a->n(); ++k) {
      Scalar v = a->lambda(i, k);
      if (!v.is_zero()) lambda.push_back(Json{{"i", i}, {"j", k}, {"value", v.str()}});
    }
  j["beta"] = std::move(beta);
  j["gamma"] = std::move(gamma);
  j["lambda"] = std::move(lambda);
  return j;
}

AlgebraPtr algebra_from_config_json(const Json& j) {
  require_keys(j, {"field", "n", "alpha", "beta", "gamma", "lambda"}, "config");
  FieldPtr field = field_from_json(need(j, "field", "config"));
  const Json& nj = need(j, "n", "config");
  if (!nj.is_number_unsigned()) throw ParseError("config.n: expected a nonnegative integer");
  const unsigned n = nj.get<unsigned>();
  if (n > 12) throw ParseError("config.n: out of the supported range (0..12)");
  Scalar alpha = Scalar::parse(field, need_string(need(j, "alpha", "config"), "config.alpha"));

  const Json& bj = need(j, "beta", "config");
  if (!bj.is_array() || bj.size() != n) throw ParseError("config.beta: expected an array of n scalars");
  std::vector<Scalar> beta;
  for (const Json& v : bj) beta.push_back(Scalar::parse(field, need_string(v, "config.beta")));

  std::vector<Scalar> gamma;
  if (auto it = j.find("gamma"); it != j.end()) {
    if (!it->is_array() || it->size() != n)
      throw ParseError("config.gamma: expected an array of n scalars");
    for (const Json& v : *it) gamma.push_back(Scalar::parse(field, need_string(v, "config.gamma")));
  }

  std::map<std::pair<unsigned, unsigned>, Scalar> lambda;
  if (auto it = j.find("lambda"); it != j.end()) {
    if (!it->is_array()) throw ParseError("config.lambda: expected an array");
    for (const Json& entry : *it) {
      require_keys(entry, {"i", "j", "value"}, "config.lambda entry");
      const Json& ij = need(entry, "i", "config.lambda");
      const Json& jj = need(entry, "j", "config.lambda");
      if (!ij.is_number_unsigned() || !jj.is_number_unsigned())
        throw ParseError("config.lambda: indices must be positive integers");
      const unsigned i = ij.get<unsigned>(), k = jj.get<unsigned>();
      if (i < 1 || k <= i || k > n)
        throw ParseError("config.lambda: indices must satisfy 1 <= i < j <= n");
      if (!lambda.emplace(std::pair{i, k},
                          Scalar::parse(field, need_string(need(entry, "value", "config.lambda"),
                                                           "config.lambda value")))
               .second)
        throw ParseError("config.lambda: duplicate index pair");
    }
  }
  return Algebra::make(field, n, std::move(alpha), std::move(beta), std::move(gamma),
                       std::move(lambda));
}

AlgebraPtr load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Convert the byte offset into a line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
  }
  try {
    return algebra_from_config_json(j);
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Tensors, matrices, coactions, tuples

Json tensor_to_json(const TensorElement& t) {
  Json j = Json::object();
  for (const auto& [lr, c] : t.coeffs)
    j[label_string(lr.first) + " (x) " + label_string(lr.second)] = c.str();
  return j;
}

TensorElement tensor_from_json(const AlgebraPtr& left, const AlgebraPtr& right, const Json& j) {
  if (!j.is_object()) throw ParseError("tensor element: expected a JSON object");
  TensorElement t(left, right);
  for (const auto& [key, value] : j.items()) {
    const std::size_t sep = key.find(" (x) ");
    if (sep == std::string::npos)
      throw ParseError("tensor element: malformed key '" + key + "'");
    BasisLabel l = label_from_string(std::string_view(key).substr(0, sep));
    BasisLabel r = label_from_string(std::string_view(key).substr(sep + 5));
    t.add_term(l, r, Scalar::parse(left->field(), need_string(value, "tensor coefficient")));
  }
  return t;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const FieldPtr& f, const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix: rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(r, c) = Scalar::parse(f, need_string(j[r][c], "matrix entry"));
  }
  return m;
}

Json coaction_to_json(const Coaction& rho) {
  Json j;
  j["algebra"] = algebra_to_config_json(rho.algebra);
  j["n"] = rho.en.n();
  Json body = Json::object();
  for (std::size_t c = 0; c < rho.algebra->dim(); ++c) {
    BasisLabel l = rho.algebra->label_at(c);
    body[label_string(l)] = tensor_to_json(rho.apply(Element::basis(rho.algebra, l)));
  }
  j["rho"] = std::move(body);
  return j;
}

Coaction coaction_from_json(const Json& j) {
  require_keys(j, {"algebra", "n", "rho"}, "coaction");
  AlgebraPtr a = algebra_from_config_json(need(j, "algebra", "coaction"));
  const Json& nj = need(j, "n", "coaction");
  if (!nj.is_number_unsigned()) throw ParseError("coaction.n: expected a nonnegative integer");
  En en(a->field(), nj.get<unsigned>());
  const Json& body = need(j, "rho", "coaction");
  if (!body.is_object()) throw ParseError("coaction.rho: expected a JSON object");
  const std::size_t de = en.dim();
  Matrix m(a->field(), a->dim() * de, a->dim());
  std::vector<bool> filled(a->dim(), false);
  for (const auto& [key, value] : body.items()) {
    BasisLabel l = label_from_string(key);
    const std::size_t col = a->index_of(l);
    if (col >= a->dim()) throw ParseError("coaction.rho: label '" + key + "' out of range");
    if (filled[col]) throw ParseError("coaction.rho: duplicate column '" + key + "'");
    filled[col] = true;
    TensorElement t = tensor_from_json(a, en.algebra(), value);
    for (const auto& [lr, c] : t.coeffs)
      m.at(a->index_of(lr.first) * de + en.algebra()->index_of(lr.second), col) = c;
  }
  for (std::size_t c = 0; c < a->dim(); ++c)
    if (!filled[c])
      throw ParseError("coaction.rho: missing column '" + label_string(a->label_at(c)) + "'");
  return Coaction{a, en, std::move(m)};
}

Json tuple_to_json(const CoactionTuple& t) {
  Json j;
  j["algebra"] = algebra_to_config_json(t.phi.algebra);
  j["phi"] = matrix_to_json(t.phi.m);
  Json ds = Json::array();
  for (const auto& d : t.ds) ds.push_back(matrix_to_json(d.m));
  j["d"] = std::move(ds);
  return j;
}

CoactionTuple tuple_from_json(const Json& j) {
  require_keys(j, {"algebra", "phi", "d"}, "tuple");
  AlgebraPtr a = algebra_from_config_json(need(j, "algebra", "tuple"));
  Matrix phi = matrix_from_json(a->field(), need(j, "phi", "tuple"));
  if (phi.rows() != a->dim() || phi.cols() != a->dim())
    throw ParseError("tuple.phi: expected a dim x dim matrix");
  CoactionTuple t{LinearOperator{a, std::move(phi)}, {}};
  const Json& ds = need(j, "d", "tuple");
  if (!ds.is_array()) throw ParseError("tuple.d: expected an array of matrices");
  for (const Json& dj : ds) {
    Matrix d = matrix_from_json(a->field(), dj);
    if (d.rows() != a->dim() || d.cols() != a->dim())
      throw ParseError("tuple.d: expected dim x dim matrices");
    t.ds.push_back(LinearOperator{a, std::move(d)});
  }
  return t;
}

Json inner_tuple_to_json(const InnerTuple& t) {
  Json j;
  j["algebra"] = algebra_to_config_json(t.c.algebra());
  j["twisted"] = t.twisted;
  j["c"] = element_to_json(t.c);
  Json us = Json::array();
  for (const auto& u : t.us) us.push_back(element_to_json(u));
  j["u"] = std::move(us);
  return j;
}

InnerTuple inner_tuple_from_json(const Json& j) {
  require_keys(j, {"algebra", "twisted", "c", "u"}, "inner tuple");
  AlgebraPtr a = algebra_from_config_json(need(j, "algebra", "inner tuple"));
  const Json& tw = need(j, "twisted", "inner tuple");
  if (!tw.is_boolean()) throw ParseError("inner tuple.twisted: expected a boolean");
  InnerTuple t{element_from_json(a, need(j, "c", "inner tuple")), {}, tw.get<bool>()};
  const Json& us = need(j, "u", "inner tuple");
  if (!us.is_array()) throw ParseError("inner tuple.u: expected an array of elements");
  for (const Json& uj : us) t.us.push_back(element_from_json(a, uj));
  return t;
}

Json dual_to_json(const DualElement& d) {
  Json j = Json::object();
  for (const auto& [l, c] : d.coeffs) j["(" + label_string(l) + ")*"] = c.str();
  return j;
}

// ---------------------------------------------------------------------------
// Reports and digests

Json verify_report_to_json(const VerifyReport& r) {
  Json j;
  j["pass"] = r.ok;
  if (!r.ok) {
    j["axiom"] = r.axiom;
    j["witness"] = r.witness;
  }
  return j;
}

Json check_report_to_json(const CheckReport& r) {
  Json j;
  j["pass"] = r.ok;
  if (!r.ok) {
    j["condition"] = r.condition;
    j["witness"] = r.witness;
  }
  return j;
}

Json structure_report_to_json(const StructureReport& r) {
  Json j;
  j["n_parity"] = r.n_odd ? "odd" : "even";
  j["det_q"] = r.det_q.str();
  j["delta"] = r.delta.str();
  j["delta_square"] = r.delta_square;
  j["verdict"] = to_string(r.verdict);
  j["center_dim"] = r.center_dim;
  return j;
}

std::string coaction_digest(const Coaction& rho) {
  std::uint64_t h = 1469598103934665603ull;  // FNV offset basis
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;  // FNV prime
    }
  };
  feed("coaction-v1;" + std::to_string(rho.rho.rows()) + "x" + std::to_string(rho.rho.cols()) + ";");
  for (std::size_t r = 0; r < rho.rho.rows(); ++r)
    for (std::size_t c = 0; c < rho.rho.cols(); ++c) {
      feed(rho.rho.at(r, c).str());
      feed(";");
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace cliffcoact
