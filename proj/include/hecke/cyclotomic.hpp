#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m), dense over the power basis
// 1, zeta, ..., zeta^(phi(m)-1).

#include <iosfwd>
#include <string>
#include <vector>

#include "hecke/rational.hpp"

namespace hecke {

class CyclotomicField {
 public:
  /// Interned descriptor for Q(zeta_m); the returned reference lives for the
  /// whole program.
  static const CyclotomicField& get(long conductor);

  long conductor() const noexcept { return conductor_; }
  int degree() const noexcept { return degree_; }

  /// Coefficients of the m-th cyclotomic polynomial, constant term first.
  const std::vector<Integer>& modulus() const noexcept { return modulus_; }

  /// zeta^k expressed in the power basis (length degree()).
  const std::vector<Integer>& zeta_power(long k) const;

  /// Orders n for which a primitive n-th root of unity exists: n | lcm(2, m).
  long root_order() const noexcept { return conductor_ % 2 == 0 ? conductor_ : 2 * conductor_; }

  /// Exponents k in [0, m) with gcd(k, m) = 1, ascending (k = 1 % m first for m <= 2).
  const std::vector<long>& galois_exponents() const noexcept { return galois_exponents_; }

 private:
  explicit CyclotomicField(long conductor);

  long conductor_;
  int degree_;
  std::vector<Integer> modulus_;
  std::vector<std::vector<Integer>> powers_;
  std::vector<long> galois_exponents_;
};

/// Integer coefficients of Phi_n, constant term first.
std::vector<Integer> cyclotomic_polynomial(long n);
long euler_phi(long n);

/// An element of Q(zeta_m), or an untagged rational constant (field() ==
/// nullptr) that adopts the field of whatever it is combined with. Values are
/// kept as integer numerators over a common positive denominator, fully
/// reduced, so equal elements have equal representations.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long value);  // NOLINT: implicit, so generic code can write Scalar(0)
  FieldElement(const Rational& value);  // NOLINT
  FieldElement(const CyclotomicField& field, const Rational& value);

  static FieldElement zeta(const CyclotomicField& field, long power = 1);
  static FieldElement from_coefficients(const CyclotomicField& field,
                                        const std::vector<Rational>& coefficients);

  const CyclotomicField* field() const noexcept { return field_; }

  bool is_zero() const noexcept { return num_.empty(); }
  bool is_one() const;
  bool is_rational() const;

  /// Coefficient of zeta^i; untagged constants only have i = 0.
  Rational coefficient(int i) const;
  /// Power-basis coordinates in `field` (untagged constants are promoted).
  std::vector<Rational> coefficients(const CyclotomicField& field) const;
  std::vector<Rational> coefficients() const;
  /// The value as a rational; throws unless is_rational().
  Rational to_rational() const;

  /// Same value, tagged with `field`.
  FieldElement in(const CyclotomicField& field) const;

  FieldElement inverse() const;
  FieldElement pow(long exponent) const;

  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  std::string to_string() const;

  // Raw access used by the Galois action and reduction code.
  const std::vector<Integer>& numerators() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }
  static FieldElement from_raw(const CyclotomicField* field, std::vector<Integer> num, Integer den);

 private:
  void normalize();

  const CyclotomicField* field_ = nullptr;
  std::vector<Integer> num_;  // empty means zero
  Integer den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

/// Throws FieldMismatch if both are tagged with different fields.
const CyclotomicField* common_field(const FieldElement& a, const FieldElement& b);

/// The Galois automorphism zeta -> zeta^k of Q(zeta_m).
class FieldAut {
 public:
  FieldAut(const CyclotomicField& field, long exponent);
  static FieldAut identity(const CyclotomicField& field) { return FieldAut(field, 1); }

  const CyclotomicField& field() const noexcept { return *field_; }
  long exponent() const noexcept { return exponent_; }
  bool is_identity() const noexcept { return exponent_ == 1 % field_->conductor(); }

  FieldAut compose(const FieldAut& other) const;  // (this o other)
  FieldAut inverse() const;

  friend bool operator==(const FieldAut& a, const FieldAut& b) {
    return a.field_ == b.field_ && a.exponent_ == b.exponent_;
  }

 private:
  const CyclotomicField* field_;
  long exponent_;  // reduced mod m
};

FieldElement apply_aut(const FieldAut& sigma, const FieldElement& a);
/// Shorthand for apply_aut with exponent k in the field of `a` (identity on untagged).
FieldElement apply_galois(long exponent, const FieldElement& a);

/// A primitive `order`-th root of unity; requires order | lcm(2, m).
FieldElement root_of_unity(const CyclotomicField& field, long order);

/// Multiplicative order of a root of unity, or 0 if `a` is not one.
long root_of_unity_order(const FieldElement& a);

/// Monic minimal polynomial over Q, constant term first.
std::vector<Rational> minimal_polynomial(const FieldElement& a);

}  // namespace hecke
