#pragma once

// Integral lattice reduction, used to recognise p-adically approximated
// algebraic integers as elements of Z[zeta_m].

#include "hecke/eigen_support.hpp"

namespace hecke {

/// LLL-reduces (delta = 3/4) the lattice spanned by the rows of `basis`, in
/// place, using only integer arithmetic. Rows must be linearly independent.
void lll_reduce(IntegerMatrix& basis);

/// Nearest-plane rounding: returns t - v for a lattice vector v close to t.
/// `basis` should be LLL-reduced for the usual guarantees.
IntegerVector babai_residual(const IntegerMatrix& basis, const IntegerVector& target);

}  // namespace hecke
