#pragma once

// K_0 of semisimple crossed products over a splitting cyclotomic field:
// trace-form certificates, Wedderburn blocks, classes of idempotent
// matrices, induced maps, tower colimits and the Wang cokernel.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hecke/crossed_product.hpp"
#include "hecke/laurent.hpp"
#include "hecke/smith.hpp"
#include "hecke/tower.hpp"

namespace hecke {

struct SemisimplicityCertificate {
  bool nondegenerate = false;
  /// "F" when the trace is taken over F (c trivial), "Q" for the trace over Q
  /// on the basis zeta^i b_d.
  std::string trace_field;
  int gram_size = 0;
  FieldElement determinant;
  /// A nonzero vector in the radical of the trace form, if degenerate.
  std::optional<FieldVector> witness;
};

/// Gram matrix of (x, y) -> tr(L_x L_y) on a basis, and its determinant.
SemisimplicityCertificate certify_semisimple(const CrossedProduct& a);
FieldMatrix trace_gram(const CrossedProduct& a);

struct Block {
  CPElement idempotent;  // primitive central idempotent z_i
  int dimension = 0;     // dim_F A z_i
  int matrix_size = 0;   // n_i, with n_i^2 = dimension
  CPElement primitive;   // an idempotent of rank one inside A z_i
  /// Eigenvalues of the center basis on the block (sort key).
  std::vector<FieldElement> fingerprint;
  /// For n_i = 1, the algebra map A -> F, x z_i = chi(x) z_i, on each b_d.
  std::vector<FieldElement> character;
  /// Left coordinates of an F-basis of A z_i (columns).
  FieldMatrix basis;
};

struct SemisimpleDecomposition {
  CPPtr algebra;
  FieldMatrix center_basis;  // columns, reduced echelon order
  std::vector<Block> blocks;
  int rank() const { return static_cast<int>(blocks.size()); }
};
using DecompositionPtr = std::shared_ptr<const SemisimpleDecomposition>;

/// Throws CoefficientsNotCentral when some c_d is nontrivial, NotSemisimple if
/// the trace form degenerates, NonSplitBlockError when some block is not a
/// full matrix algebra over F.
SemisimpleDecomposition block_decompose(const CrossedProduct& a);

/// Long check of the decomposition: idempotent, central, pairwise orthogonal,
/// summing to one, block dimensions and primitive idempotents consistent.
std::optional<std::string> decomposition_violation(const SemisimpleDecomposition& dec);

/// Square matrices over a crossed product.
using CPMatrix = std::vector<std::vector<CPElement>>;
CPMatrix cp_matrix_mul(const CPMatrix& x, const CPMatrix& y);

/// The class of e A^k in K_0(A) = Z^r. Throws NotIdempotent.
IntegerVector k0_class(const SemisimpleDecomposition& dec, const CPMatrix& e);
IntegerVector k0_class(const SemisimpleDecomposition& dec, const CPElement& e);

/// Column i is the class of the image of the primitive idempotent of block i
/// under a (possibly non-unital) ring map given on left coefficients.
IntegerMatrix induced_k0(const SemisimpleDecomposition& source, const SemisimpleDecomposition& target,
                         const FieldMatrix& map);
IntegerMatrix induced_k0(const SemisimpleDecomposition& coarse, const SemisimpleDecomposition& fine,
                         const LevelEmbedding& f);

/// Permutation matrix P with P[pi(i)][i] = 1 where alpha(z_i) = z_pi(i).
/// Throws NotPermutation.
IntegerMatrix aut_k0(const SemisimpleDecomposition& dec, const LevelAutomorphism& alpha);

/// Decompositions of the levels of a tower, computed once each.
class TowerK0 {
 public:
  explicit TowerK0(TowerPtr tower) : tower_(std::move(tower)) {}
  const TowerPtr& tower() const noexcept { return tower_; }
  DecompositionPtr decomposition(int level) const;
  /// Seed a level from a cache; the caller has validated it.
  void adopt(int level, DecompositionPtr dec) const;

 private:
  TowerPtr tower_;
  mutable std::mutex mutex_;
  mutable std::map<int, DecompositionPtr> cache_;
};

struct ColimitStep {
  int from = 0;  // level i -> i + 1
  IntegerMatrix map;
  SmithForm snf;
  std::optional<IntegerMatrix> left_inverse;  // present iff split injective
  Cokernel cokernel;
};

struct ColimitK0 {
  int depth = 0;
  std::vector<int> level_ranks;
  std::vector<ColimitStep> steps;
  /// Ranks of K_0(level 0) and of each cokernel; they sum to the rank at depth.
  std::vector<Eigen::Index> summand_ranks;
  bool all_split = true;
  bool torsion_free = true;
  int total_rank() const;
};
ColimitK0 colim_k0(const TowerK0& tk, int depth);

struct WangDepth {
  int depth = 0;
  int level_rank = 0;
  IntegerMatrix k0_phi_inverse;  // K_0(phi^{-1}) on K_0 of the level
  SmithForm snf;                 // of id - K_0(phi^{-1})
  Cokernel k0;                   // K_0(H(G)) truncated at this depth
  Eigen::Index boundary_rank = 0;
  std::vector<std::vector<int>> orbits;  // block indices per orbit
  /// Whether the level map from depth - 1 intertwines the two permutations.
  bool compatible_with_previous = true;
};

struct NegativeKRecord {
  std::string range = "n <= -1";
  int value = 0;
  std::string reason;
};

struct WangResult {
  std::vector<WangDepth> depths;  // depth 0 .. n
  NegativeKRecord negative;
  /// New orbits per depth; a heuristic read-out of how the truncations grow.
  std::vector<Eigen::Index> new_orbits;
  bool torsion_free = true;
  /// rank(coker) + rank(id - P) = level rank at every depth.
  bool bookkeeping_ok = true;
};
/// Throws NoTwistConfigured.
WangResult wang_assemble(const TowerK0& tk, int depth);

/// Cycles of a permutation matrix, each listed from its smallest index.
std::vector<std::vector<int>> permutation_orbits(const IntegerMatrix& p);

}  // namespace hecke
