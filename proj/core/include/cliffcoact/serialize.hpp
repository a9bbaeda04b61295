#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "cliffcoact/inner.hpp"

namespace cliffcoact {

using Json = nlohmann::ordered_json;

// Field descriptors: {"kind":"rational"} | {"kind":"prime","p":7}
//                  | {"kind":"quadratic","base":...,"d":"<scalar>"}.
Json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const Json& j);

// Basis labels render as "1", "g", "x{1,3}", "g x{1,3}".
BasisLabel label_from_string(std::string_view s);

// Elements: {"<label>": "<scalar>"} with zero entries omitted.
Json element_to_json(const Element& e);
Element element_from_json(const AlgebraPtr& a, const Json& j);

// Algebra configs: {"field":..., "n":..., "alpha":"...", "beta":[...],
// "gamma":[...], "lambda":[{"i":1,"j":2,"value":"..."}]}; gamma and lambda
// are optional, unknown keys are rejected.
Json algebra_to_config_json(const AlgebraPtr& a);
AlgebraPtr algebra_from_config_json(const Json& j);
/// Reads and validates a config file; diagnostics carry file and line info.
AlgebraPtr load_config(const std::string& path);

// Tensor elements: {"<left> (x) <right>": "<scalar>"}.
Json tensor_to_json(const TensorElement& t);
TensorElement tensor_from_json(const AlgebraPtr& left, const AlgebraPtr& right, const Json& j);

// Matrices: row-major arrays of canonical strings; entry [r][c] is the
// coefficient of basis r in the image of basis c.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& f, const Json& j);

// Self-contained coaction files: {"algebra": <config>, "n": <en-n>,
// "rho": {"<A label>": <tensor element>}}.
Json coaction_to_json(const Coaction& rho);
Coaction coaction_from_json(const Json& j);

// Operator tuples: {"algebra": <config>, "phi": <matrix>, "d": [<matrix>...]}.
Json tuple_to_json(const CoactionTuple& t);
CoactionTuple tuple_from_json(const Json& j);

// Inner tuples: {"algebra": <config>, "twisted": bool, "c": <element>,
// "u": [<element>...]}.
Json inner_tuple_to_json(const InnerTuple& t);
InnerTuple inner_tuple_from_json(const Json& j);

// Dual elements: {"(<label>)*": "<scalar>"}.
Json dual_to_json(const DualElement& d);

Json verify_report_to_json(const VerifyReport& r);
Json check_report_to_json(const CheckReport& r);
Json structure_report_to_json(const StructureReport& r);

/// FNV-1a 64-bit digest of the canonical coaction matrix, as fixed-width hex.
std::string coaction_digest(const Coaction& rho);

}  // namespace cliffcoact
