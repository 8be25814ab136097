#pragma once

// JSON forms of the exact types. Numbers are strings ("p/q" for rationals,
// decimal for integers) so that a round trip reproduces every value exactly.

#include <json.hpp>

#include "hecke/crossed_product.hpp"
#include "hecke/k_theory.hpp"
#include "hecke/laurent.hpp"
#include "hecke/smith.hpp"

namespace hecke {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const Integer& z);
/// {"field": m, "coefficients": [...]}; untagged constants have "field": null.
Json to_json(const FieldElement& a);
Json to_json(const FieldVector& v);
/// Row lists.
Json to_json(const FieldMatrix& m);
Json to_json(const IntegerMatrix& m);
Json to_json(const IntegerVector& v);

Rational rational_from_json(const Json& j);
Integer integer_from_json(const Json& j);
FieldElement field_element_from_json(const Json& j);
FieldVector field_vector_from_json(const Json& j);
FieldMatrix field_matrix_from_json(const Json& j);
IntegerMatrix integer_matrix_from_json(const Json& j);
IntegerVector integer_vector_from_json(const Json& j);

/// {instance, level, transversal, values}: one value per coset of NK.
Json to_json(const HeckeElement& s);
/// Rebuilds the full table from the coset values and re-validates it.
/// Throws InstanceMismatch when the instance id differs.
HeckeElement hecke_element_from_json(const Json& j, const InstancePtr& instance);

Json to_json(const CPElement& x);
/// Throws ParentMismatch when the parent label differs.
CPElement cp_element_from_json(const Json& j, const CPPtr& parent);
/// w and c tables, section and label.
Json structure_to_json(const CrossedProduct& a);

Json to_json(const CovirtZElement& x);
CovirtZElement covirt_element_from_json(const Json& j, const TowerPtr& tower);

Json to_json(const SmithForm& s);
Json to_json(const Cokernel& c);

Json to_json(const SemisimpleDecomposition& dec);
/// No validation beyond shapes; run decomposition_violation on the result.
SemisimpleDecomposition decomposition_from_json(const Json& j, const CPPtr& algebra);

}  // namespace hecke
