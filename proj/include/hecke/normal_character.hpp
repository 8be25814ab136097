#pragma once

// The coefficient action rho: G -> Gal(Q(zeta_m)/Q) and the normal character
// omega: N -> roots of unity, with the compatibility checks between them.

#include <optional>
#include <string>
#include <vector>

#include "hecke/cyclotomic.hpp"
#include "hecke/finite_group.hpp"

namespace hecke {

class RhoAction {
 public:
  RhoAction() = default;
  /// `exponents[g]` is k with rho(g): zeta -> zeta^k. Validates units and the
  /// homomorphism property; throws NotAHomomorphism / NotAUnit.
  RhoAction(GroupPtr group, const CyclotomicField& field, std::vector<long> exponents);
  static RhoAction trivial(GroupPtr group, const CyclotomicField& field);

  const GroupPtr& group() const noexcept { return group_; }
  const CyclotomicField& field() const noexcept { return *field_; }
  FieldAut operator()(Elem g) const { return FieldAut(*field_, exponents_[g]); }
  long exponent(Elem g) const { return exponents_[g]; }
  const std::vector<long>& exponents() const noexcept { return exponents_; }
  bool is_trivial() const;
  FieldElement act(Elem g, const FieldElement& r) const { return apply_galois(exponents_[g], r.in(*field_)); }
  /// rho o phi for an endomorphism phi of the group.
  RhoAction pullback(const GroupHom& phi) const;

 private:
  GroupPtr group_;
  const CyclotomicField* field_ = nullptr;
  std::vector<long> exponents_;
};

class NormalCharacter {
 public:
  NormalCharacter() = default;
  /// `values[i]` is omega(n.members()[i]). Values must lie in `field`.
  NormalCharacter(Subgroup n, const CyclotomicField& field, std::vector<FieldElement> values);
  static NormalCharacter trivial(Subgroup n, const CyclotomicField& field);

  const Subgroup& domain() const noexcept { return n_; }
  const CyclotomicField& field() const noexcept { return *field_; }
  /// omega(g) for g in N; throws NotASubgroup otherwise.
  const FieldElement& operator()(Elem g) const;
  bool is_trivial() const;
  /// True iff omega is 1 on every element of N that lies in k.
  bool trivial_on(const Subgroup& k) const;

 private:
  Subgroup n_;
  const CyclotomicField* field_ = nullptr;
  std::vector<FieldElement> by_element_;  // indexed by group label; zero off N
};

struct CharacterViolation {
  std::string condition;  // "root-of-unity", "multiplicative", "conjugation-invariant", "rho-fixes-omega", "rho-trivial-on-N"
  std::string identity;   // the identity that fails, written out
  std::vector<Elem> witness;
  std::string detail;
};

struct CharacterReport {
  bool ok = true;
  std::vector<CharacterViolation> violations;  // first failure per condition, scan order
};

/// Checks, exhaustively: values are roots of unity; omega(ab) = omega(a)omega(b);
/// omega(g n g^-1) = omega(n); rho(g)(omega(n)) = omega(n); rho(n) = id on N.
CharacterReport validate_normal_character(const NormalCharacter& omega, const RhoAction& rho);

/// The level condition: rho trivial on k and omega trivial on N cap k.
bool in_admissible_class(const Subgroup& k, const NormalCharacter& omega, const RhoAction& rho);

}  // namespace hecke
