#pragma once

// Roots in Q(zeta_m) of polynomials over Q(zeta_m): roots modulo a split
// prime p = 1 mod m, Hensel lifting, and lattice reconstruction in Z[zeta_m],
// each candidate checked exactly.

#include <vector>

#include "hecke/polynomial.hpp"

namespace hecke {

/// The distinct roots of `f` lying in `field`, in a deterministic order
/// (sorted by their power-basis coefficient vectors).
std::vector<FieldElement> roots_in_field(const CyclotomicField& field, const FieldPoly& f);

/// True iff the two elements compare lexicographically by coefficients.
bool coefficient_less(const FieldElement& a, const FieldElement& b);

}  // namespace hecke
