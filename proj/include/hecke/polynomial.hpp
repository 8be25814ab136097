#pragma once

// Dense univariate polynomials over Q(zeta_m), constant term first. The zero
// polynomial is the empty vector.

#include <string>
#include <vector>

#include "hecke/cyclotomic.hpp"

namespace hecke {

using FieldPoly = std::vector<FieldElement>;

void trim(FieldPoly& p);
long degree(const FieldPoly& p);  // -1 for the zero polynomial

FieldPoly poly_add(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_sub(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_mul(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_scale(const FieldPoly& a, const FieldElement& c);

/// a = q * b + r with deg r < deg b; b must be nonzero.
void poly_divmod(const FieldPoly& a, const FieldPoly& b, FieldPoly& q, FieldPoly& r);

FieldPoly make_monic(FieldPoly p);
/// Monic gcd (zero if both inputs are zero).
FieldPoly poly_gcd(FieldPoly a, FieldPoly b);
FieldPoly derivative(const FieldPoly& p);
FieldPoly squarefree_part(const FieldPoly& p);
FieldElement evaluate(const FieldPoly& p, const FieldElement& x);

/// prod (x - r) over the given roots.
FieldPoly from_roots(const std::vector<FieldElement>& roots);

FieldPoly from_rationals(const std::vector<Rational>& coefficients);

std::string poly_to_string(const FieldPoly& p);

}  // namespace hecke
