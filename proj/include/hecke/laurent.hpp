#pragma once

// Covirtually-Z groups G = L x|_phi Z over a tower: the automorphism of the
// level algebras induced by conjugation with t, twisted Laurent rings over
// them, the direct Hecke model on G and the isomorphism Xi between the two.

#include <map>
#include <memory>
#include <string>

#include "hecke/crossed_product.hpp"
#include "hecke/tower.hpp"

namespace hecke {

/// l -> rho(t)(s(phi^{-1}(l))) on an element of H(L) at a phi-invariant level.
/// Throws NoTwistConfigured.
HeckeElement phi_hecke(const TowerSpec& tower, const HeckeElement& s);

/// The ring automorphism of H(L//K_n) induced by phi_hecke, in the b_d basis:
/// alpha(sum r_d b_d) = sum rho(t)(r_d) alpha(b_d).
class LevelAutomorphism {
 public:
  LevelAutomorphism(TowerPtr tower, int level);

  const TowerPtr& tower() const noexcept { return tower_; }
  int level_index() const noexcept { return level_; }
  const LevelPtr& level() const noexcept { return algebra_; }
  const CPPtr& algebra() const { return algebra_->algebra(); }
  /// Column d holds the coefficients of alpha(b_d).
  const FieldMatrix& images() const noexcept { return images_; }
  long galois_exponent() const noexcept { return galois_; }

  CPElement operator()(const CPElement& x) const;
  /// alpha^k for any integer k (negative powers use the inverse twist).
  CPElement power(const CPElement& x, long k) const;
  const LevelAutomorphism& inverse() const;

  /// First failure of alpha(xy) = alpha(x) alpha(y) on basis pairs (with
  /// the scalar zeta in the right factor), or of bijectivity.
  std::optional<std::string> automorphism_violation() const;

 private:
  LevelAutomorphism() = default;

  TowerPtr tower_;
  int level_ = 0;
  LevelPtr algebra_;
  FieldMatrix images_;
  long galois_ = 1;
  mutable std::shared_ptr<const LevelAutomorphism> inverse_;
};
using LevelAutPtr = std::shared_ptr<const LevelAutomorphism>;

/// Finitely supported sums sum_n a_n t^n with t a = alpha(a) t.
class TwistedLaurentElement {
 public:
  TwistedLaurentElement() = default;
  explicit TwistedLaurentElement(LevelAutPtr alpha);
  static TwistedLaurentElement monomial(LevelAutPtr alpha, const CPElement& a, long n);

  const LevelAutPtr& alpha() const noexcept { return alpha_; }
  const CPPtr& base() const { return alpha_->algebra(); }
  /// Nonzero coefficients only.
  const std::map<long, CPElement>& coefficients() const noexcept { return coeffs_; }
  CPElement coefficient(long n) const;
  void set(long n, const CPElement& a);
  bool is_zero() const { return coeffs_.empty(); }

  TwistedLaurentElement& operator+=(const TwistedLaurentElement& other);
  friend TwistedLaurentElement operator+(TwistedLaurentElement a, const TwistedLaurentElement& b) { return a += b; }
  friend TwistedLaurentElement operator-(const TwistedLaurentElement& a, const TwistedLaurentElement& b);
  friend bool operator==(const TwistedLaurentElement& a, const TwistedLaurentElement& b);
  friend bool operator!=(const TwistedLaurentElement& a, const TwistedLaurentElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  LevelAutPtr alpha_;
  std::map<long, CPElement> coeffs_;
};

/// (a t^m)(b t^n) = a alpha^m(b) t^{m+n}. Throws BaseMismatch.
TwistedLaurentElement laurent_mul(const TwistedLaurentElement& f, const TwistedLaurentElement& g);

/// A function on G = L x|_phi Z, stored as slices x_m(l) = x(l t^m) for the
/// finitely many m where it is nonzero. Each slice is a table on L at level K_n.
class CovirtZElement {
 public:
  CovirtZElement() = default;
  /// Validates every slice against the Hecke invariants at level K_n.
  CovirtZElement(TowerPtr tower, int level, std::map<long, FieldVector> slices);

  const TowerPtr& tower() const noexcept { return tower_; }
  int level_index() const noexcept { return level_; }
  const std::map<long, FieldVector>& slices() const noexcept { return slices_; }
  /// x(l t^m).
  FieldElement operator()(Elem l, long m) const;

  friend bool operator==(const CovirtZElement& a, const CovirtZElement& b);
  friend bool operator!=(const CovirtZElement& a, const CovirtZElement& b) { return !(a == b); }
  friend CovirtZElement operator+(const CovirtZElement& a, const CovirtZElement& b);

 private:
  struct Unchecked {};
  CovirtZElement(TowerPtr tower, int level, std::map<long, FieldVector> slices, Unchecked);
  friend CovirtZElement direct_convolve(const CovirtZElement&, const CovirtZElement&);
  friend CovirtZElement xi(const TwistedLaurentElement&);

  TowerPtr tower_;
  int level_ = 0;
  std::map<long, FieldVector> slices_;
};

/// The Hecke convolution on G with transversal {t^m' l' : l' in T'}, T' a
/// transversal of L/NK. Throws InstanceMismatch.
CovirtZElement direct_convolve(const CovirtZElement& x, const CovirtZElement& y);

/// Xi(s t^n)(l t^m) = s(l) if m = n, else 0.
CovirtZElement xi(const TwistedLaurentElement& f);
/// Throws IncompatibleInstance if x lives on another tower or level.
TwistedLaurentElement xi_inv(const CovirtZElement& x, const LevelAutPtr& alpha);

}  // namespace hecke
