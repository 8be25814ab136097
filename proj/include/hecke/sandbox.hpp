#pragma once

// The Hecke algebra H(G; F, rho, omega) of a finite group G: omega-equivariant
// F-valued functions on G with the twisted convolution product.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/eigen_support.hpp"
#include "hecke/linalg.hpp"
#include "hecke/finite_group.hpp"
#include "hecke/normal_character.hpp"

namespace hecke {

class HeckeInstance;
using InstancePtr = std::shared_ptr<const HeckeInstance>;

class HeckeInstance {
 public:
  /// Validates N normal and the normal-character conditions; throws
  /// CompatibilityViolation with the first violated identity otherwise.
  /// `quotient_measure` is mu(Q) for Q = G/N.
  static InstancePtr create(Subgroup n, NormalCharacter omega, RhoAction rho, Rational quotient_measure = 1,
                            std::string id = "");

  const std::string& id() const noexcept { return id_; }
  const GroupPtr& group_ptr() const noexcept { return n_.parent(); }
  const FiniteGroup& group() const { return n_.group(); }
  const Subgroup& normal_subgroup() const noexcept { return n_; }
  const NormalCharacter& omega() const noexcept { return omega_; }
  const RhoAction& rho() const noexcept { return rho_; }
  const CyclotomicField& field() const noexcept { return omega_.field(); }
  const Rational& quotient_measure() const noexcept { return quotient_measure_; }

  /// mu(pr K) = mu(Q) * |NK| / |G|.
  Rational measure(const Subgroup& k) const;
  bool admissible_class(const Subgroup& k) const { return in_admissible_class(k, omega_, rho_); }
  /// Throws LevelNotAdmissibleClass unless K is in the admissible class.
  void require_admissible_class(const Subgroup& k) const;
  /// NK as a subgroup, with a chosen factorisation x = n k for each x in NK.
  struct Factorisation {
    Subgroup nk;
    std::vector<Elem> n_part;  // indexed by group label, -1 off NK
    std::vector<Elem> k_part;
  };
  Factorisation factorise(const Subgroup& k) const;

 private:
  HeckeInstance() = default;

  std::string id_;
  Subgroup n_;
  NormalCharacter omega_;
  RhoAction rho_;
  Rational quotient_measure_;
};

class HeckeElement {
 public:
  HeckeElement() = default;
  /// Full value table (indexed by group label) with a declared level K.
  /// Validates every element invariant; throws InconsistentValues.
  HeckeElement(InstancePtr instance, FieldVector values, Subgroup level);

  const InstancePtr& instance() const noexcept { return instance_; }
  const FieldVector& values() const noexcept { return values_; }
  const FieldElement& operator()(Elem g) const { return values_(g); }
  const Subgroup& level() const noexcept { return level_; }
  bool is_zero() const { return is_zero_matrix(values_); }
  /// Same function, declared at a smaller level K' contained in level().
  HeckeElement at_level(const Subgroup& k) const;

  friend bool operator==(const HeckeElement& a, const HeckeElement& b) { return a.values_ == b.values_; }
  friend bool operator!=(const HeckeElement& a, const HeckeElement& b) { return !(a == b); }

  friend HeckeElement operator+(const HeckeElement& a, const HeckeElement& b);
  friend HeckeElement operator-(const HeckeElement& a, const HeckeElement& b);

 private:
  struct Unchecked {};
  HeckeElement(InstancePtr instance, FieldVector values, Subgroup level, Unchecked);
  friend HeckeElement unchecked_element(InstancePtr, FieldVector, Subgroup);

  InstancePtr instance_;
  FieldVector values_;
  Subgroup level_;
};

/// Wraps a value table without re-running the invariant checks; for values
/// that are correct by construction.
HeckeElement unchecked_element(InstancePtr instance, FieldVector values, Subgroup level);

/// First violated invariant of a value table at level K, if any.
std::optional<std::string> element_violation(const HeckeInstance& instance, const FieldVector& values,
                                              const Subgroup& level);

/// Completes one value per left coset of NK (in left_cosets(NK) order) to a
/// full table. Throws LevelNotAdmissibleClass or InconsistentValues.
HeckeElement make_element(const InstancePtr& instance, const std::vector<FieldElement>& coset_values,
                          const Subgroup& level);

HeckeElement zero_element(const InstancePtr& instance, const Subgroup& level);

/// 1_K: omega(n) / mu(pr K) at nk in NK, zero elsewhere.
HeckeElement unit_1k(const InstancePtr& instance, const Subgroup& k);

/// Product using K = level(s) cap level(s') and the smallest-label transversal.
HeckeElement convolve(const HeckeElement& s, const HeckeElement& t);

/// Product with an explicit K (admissible for both factors) and an explicit
/// left transversal of G/NK. The result is declared at level K.
HeckeElement convolve_with(const HeckeElement& s, const HeckeElement& t, const Subgroup& k,
                           const std::vector<Elem>& transversal);

HeckeElement scalar_act(const FieldElement& r, const HeckeElement& s);

/// phi_*: H(G'; rho o phi, omega o phi) -> H(G; rho, omega) along phi: G' -> G.
/// Throws CompatibilityViolation unless phi(N') = N, rho' = rho o phi and
/// omega' = omega o phi.
HeckeElement pushforward(const GroupHom& phi, const InstancePtr& target, const HeckeElement& s);

/// The precondition check of pushforward on its own.
std::optional<std::string> pushforward_violation(const GroupHom& phi, const HeckeInstance& source,
                                                 const HeckeInstance& target);

}  // namespace hecke
