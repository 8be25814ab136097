#pragma once

// Descending towers of normal levels K_0 >= K_1 >= ... >= K_depth inside a
// finite ambient group L, with the finite quotients E_n = L/(N K_n) and an
// optional automorphism phi of L preserving every level.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hecke/crossed_product.hpp"
#include "hecke/sandbox.hpp"

namespace hecke {

/// Conjugation by the generator t of Z in L x|_phi Z, together with the
/// Galois exponent of rho(t).
struct Twist {
  GroupHom phi;
  long rho_t = 1;
};

class TowerSpec;
using TowerPtr = std::shared_ptr<const TowerSpec>;

class TowerSpec {
 public:
  /// Validates: chain descending, every level normal and admissible, the
  /// twist (if any) an automorphism with phi(K_n) = K_n, phi(N) = N,
  /// omega o phi = omega, rho o phi = rho, and rho(t) fixing omega.
  static TowerPtr create(InstancePtr ambient, std::vector<Subgroup> chain, std::optional<Twist> twist = {},
                         std::string name = "");

  const std::string& name() const noexcept { return name_; }
  const InstancePtr& ambient() const noexcept { return ambient_; }
  int depth() const noexcept { return static_cast<int>(chain_.size()) - 1; }
  const Subgroup& level(int n) const { return chain_.at(n); }
  const std::vector<Subgroup>& chain() const noexcept { return chain_; }
  bool has_twist() const noexcept { return twist_.has_value(); }
  /// Throws NoTwistConfigured.
  const Twist& twist() const;

  /// E_n = L/(N K_n) with its projection and transversal.
  const Quotient& quotient_at(int n) const { return quotients_.at(n); }
  /// E_{n+1} -> E_n.
  GroupHom surjection(int n) const;
  /// phi_n on E_n; throws NoTwistConfigured.
  GroupHom phi_at(int n) const;
  /// phi_n o s_n = s_n o phi_{n+1} for every n, checked on all elements.
  std::optional<std::string> square_violation() const;

  /// The level algebra H(L//K_n), built on first use.
  LevelPtr level_algebra(int n) const;
  /// H(L//K_n) -> H(L//K_{n+1}).
  const LevelEmbedding& embedding(int n) const;

  /// The same tower with phi and rho(t) inverted.
  TowerPtr inverse_twist() const;
  /// The same tower cut at a smaller depth.
  TowerPtr truncated(int depth) const;

 private:
  TowerSpec() = default;

  std::string name_;
  InstancePtr ambient_;
  std::vector<Subgroup> chain_;
  std::optional<Twist> twist_;
  std::vector<Quotient> quotients_;

  mutable std::mutex mutex_;
  mutable std::vector<LevelPtr> levels_;
  mutable std::vector<std::unique_ptr<LevelEmbedding>> embeddings_;
};

/// L = Z/p^depth with K_n = p^n Z/p^depth, N, omega, rho trivial, so that
/// E_n = Z/p^n. Coefficients in Q(zeta_conductor).
TowerPtr cyclic_tower(int p, int depth, long conductor = 1);

/// phi = multiplication by u on every level; throws NotAUnit unless gcd(u, p) = 1.
TowerPtr attach_unit_twist(const TowerPtr& tower, long u);

}  // namespace hecke
