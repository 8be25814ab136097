#pragma once

// Crossed products F * D with basis {b_d}, cocycle w and action c:
//   (r1 b_x)(r2 b_y) = r1 c_x(r2) w(x, y) b_{xy}.
// The level algebras of a Hecke instance are of this form.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/eigen_support.hpp"
#include "hecke/linalg.hpp"
#include "hecke/sandbox.hpp"

namespace hecke {

class CrossedProduct;
using CPPtr = std::shared_ptr<const CrossedProduct>;
class CPElement;

class CrossedProduct : public std::enable_shared_from_this<CrossedProduct> {
 public:
  /// Validates: w(x, y) units, c_e = id, c a homomorphism, and associativity
  /// of the multiplication on all basis triples (with a scalar in the middle
  /// slot as well). Throws InconsistentValues with the failing triple.
  static CPPtr create(GroupPtr d, const CyclotomicField& field, FieldMatrix w, std::vector<long> c_exponents,
                      std::vector<Elem> section = {}, std::string label = "");

  const FiniteGroup& group() const { return *d_; }
  const GroupPtr& group_ptr() const noexcept { return d_; }
  int order() const { return d_->order(); }
  const CyclotomicField& field() const noexcept { return *field_; }
  const FieldElement& w(Elem x, Elem y) const { return w_(x, y); }
  const FieldMatrix& w_table() const noexcept { return w_; }
  long c_exponent(Elem d) const { return c_[d]; }
  FieldAut c(Elem d) const { return FieldAut(*field_, c_[d]); }
  FieldElement act(Elem d, const FieldElement& r) const { return apply_galois(c_[d], r); }
  bool coefficients_central() const;
  /// Representative sigma(d) in the group the algebra was built from (empty
  /// for abstract crossed products).
  const std::vector<Elem>& section() const noexcept { return section_; }
  const std::string& label() const noexcept { return label_; }

  CPElement basis(Elem d) const;
  CPElement one() const;
  CPElement zero() const;
  CPElement scalar(const FieldElement& r) const;
  CPElement element(FieldVector coefficients) const;

 private:
  CrossedProduct() = default;

  GroupPtr d_;
  const CyclotomicField* field_ = nullptr;
  FieldMatrix w_;
  std::vector<long> c_;
  std::vector<Elem> section_;
  std::string label_;
};

/// sum_d r_d b_d, stored by its left coefficients r_d.
class CPElement {
 public:
  CPElement() = default;
  CPElement(CPPtr parent, FieldVector coefficients);

  const CPPtr& parent() const noexcept { return parent_; }
  const FieldVector& coefficients() const noexcept { return coeffs_; }
  const FieldElement& operator[](Elem d) const { return coeffs_(d); }
  bool is_zero() const { return is_zero_matrix(coeffs_); }

  CPElement& operator+=(const CPElement& other);
  CPElement& operator-=(const CPElement& other);
  friend CPElement operator+(CPElement a, const CPElement& b) { return a += b; }
  friend CPElement operator-(CPElement a, const CPElement& b) { return a -= b; }
  CPElement operator-() const;
  /// Left scalar multiplication r * x.
  friend CPElement operator*(const FieldElement& r, const CPElement& x);
  friend CPElement operator*(const CPElement& x, const CPElement& y);
  friend bool operator==(const CPElement& a, const CPElement& b);
  friend bool operator!=(const CPElement& a, const CPElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  CPPtr parent_;
  FieldVector coeffs_;
};

CPElement cp_mul(const CPElement& x, const CPElement& y);

/// c_d^{-1}(w(d, d^{-1})^{-1}) b_{d^{-1}}, the two-sided inverse of b_d.
CPElement basis_inverse(const CrossedProduct& a, Elem d);

/// Matrix of z -> x z in right coordinates (z = sum_d b_d z_d), which is
/// F-linear even when c is not trivial.
FieldMatrix left_multiplication_right_coords(const CPElement& x);
/// Left coefficients of z from its right coordinates, and back.
FieldVector left_from_right_coords(const CrossedProduct& a, const FieldVector& right);
FieldVector right_from_left_coords(const CrossedProduct& a, const FieldVector& left);

/// Two-sided inverse by solving x y = 1, checked on both sides.
std::optional<CPElement> cp_inverse(const CPElement& x);

/// First failing associativity or unit identity on basis triples, if any.
std::optional<std::string> structure_violation(const CrossedProduct& a);

// ---------------------------------------------------------------------------
// Level algebras H(G//K) of a Hecke instance.

class LevelAlgebra {
 public:
  const InstancePtr& instance() const noexcept { return instance_; }
  const Subgroup& level() const noexcept { return level_; }
  const CPPtr& algebra() const noexcept { return algebra_; }
  const Quotient& d_quotient() const noexcept { return quotient_; }
  /// b_d as a Hecke function.
  const HeckeElement& basis_function(Elem d) const { return basis_[d]; }
  const Rational& measure() const noexcept { return measure_; }

  /// sum_d mu(pr K) s(sigma(d)) b_d; throws InconsistentValues unless the
  /// expansion reproduces s exactly (i.e. s lies in H(G//K)).
  CPElement expand(const HeckeElement& s) const;
  HeckeElement to_hecke(const CPElement& x) const;

 private:
  friend std::shared_ptr<const LevelAlgebra> build_level(const InstancePtr&, const Subgroup&, std::vector<Elem>);

  InstancePtr instance_;
  Subgroup level_;
  Quotient quotient_;
  CPPtr algebra_;
  std::vector<HeckeElement> basis_;
  Rational measure_;
};
using LevelPtr = std::shared_ptr<const LevelAlgebra>;

/// H(G//K) as F * D with D = G/NK. `section` optionally replaces the
/// smallest-label representatives (it must start with the identity).
/// Throws NotNormal, LevelNotAdmissibleClass or WellDefinednessFailure.
LevelPtr build_level(const InstancePtr& instance, const Subgroup& k, std::vector<Elem> section = {});

struct IsoMismatch {
  Elem d1 = 0, d2 = 0;
  std::string scalar;
  std::string expected, actual;
};
struct IsoReport {
  bool ok = true;
  int products_checked = 0;
  bool basis_independent = true;
  std::vector<IsoMismatch> mismatches;
};
/// Compares convolution of (b_x)(r b_y) with the crossed-product law for all
/// x, y and r in {1, zeta}, and checks that the b_d are an F-basis.
IsoReport iso_check(const LevelAlgebra& level);

/// The inclusion H(G//K) -> H(G//K') for K' inside K, as a coefficient matrix
/// (column d = expansion of b_d^K in the finer basis).
class LevelEmbedding {
 public:
  const LevelPtr& coarse() const noexcept { return coarse_; }
  const LevelPtr& fine() const noexcept { return fine_; }
  const FieldMatrix& matrix() const noexcept { return matrix_; }
  CPElement operator()(const CPElement& x) const;
  /// The corner projection x -> f^{-1}(e x e) with e the image of 1.
  CPElement retract(const CPElement& x) const;

 private:
  friend LevelEmbedding embed_level(const LevelPtr&, const LevelPtr&);
  friend LevelEmbedding compose(const LevelEmbedding&, const LevelEmbedding&);
  LevelPtr coarse_, fine_;
  FieldMatrix matrix_;
  FieldMatrix retraction_;  // coarse coefficients of e b'_j e
};
LevelEmbedding embed_level(const LevelPtr& coarse, const LevelPtr& fine);
LevelEmbedding compose(const LevelEmbedding& outer, const LevelEmbedding& inner);

struct EmbeddingReport {
  bool multiplicative = true;
  bool unit_central_idempotent = true;
  bool complement_central_idempotent = true;
  bool orthogonal = true;
  bool corner_is_image = true;
  bool retraction_is_left_inverse = true;
  std::string first_failure;
  bool ok() const {
    return multiplicative && unit_central_idempotent && complement_central_idempotent && orthogonal &&
           corner_is_image && retraction_is_left_inverse;
  }
};
EmbeddingReport verify_embedding(const LevelEmbedding& f);

struct MaschkeReport {
  bool ok = true;
  int vectors_checked = 0;
  int equivariance_checks = 0;
  std::string first_failure;
};
/// Splitting of p: A (x)_F M -> M, p(u (x) y) = uy, by
/// i(x) = sum_d (1/|D|) b_d (x) b_d^{-1} x, for M = `copies` copies of the
/// regular module.
MaschkeReport maschke_section(const CrossedProduct& a, int copies = 1);

}  // namespace hecke
