#pragma once

#include <optional>
#include <vector>

#include "hecke/eigen_support.hpp"

namespace hecke {

/// M = U * S * V with U, V unimodular and S diagonal, s_1 | s_2 | ...,
/// nonnegative. `left` and `right` are the inverses of U and V, so
/// left * M * right = S.
struct SmithForm {
  IntegerMatrix U, S, V;
  IntegerMatrix left, right;

  std::vector<Integer> diagonal() const;
  Eigen::Index rank() const;
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Cokernel of M : Z^cols -> Z^rows as free rank plus torsion invariants (> 1).
struct Cokernel {
  Eigen::Index free_rank = 0;
  std::vector<Integer> torsion;
};
Cokernel cokernel(const SmithForm& snf);

/// X with X * M = identity, when M is a split injection; nullopt otherwise.
std::optional<IntegerMatrix> integer_left_inverse(const IntegerMatrix& m);

IntegerMatrix integer_identity(Eigen::Index n);

}  // namespace hecke
