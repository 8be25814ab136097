#pragma once

#include <random>
#include <vector>

#include "hecke/crossed_product.hpp"
#include "hecke/k_theory.hpp"
#include "hecke/sandbox.hpp"

namespace fixture {

using namespace hecke;

inline const CyclotomicField& Q() { return CyclotomicField::get(1); }
inline const CyclotomicField& Qz(long m) { return CyclotomicField::get(m); }

inline InstancePtr plain(GroupPtr g, const CyclotomicField& f, Rational mu = 1) {
  Subgroup n = Subgroup::trivial(g);
  return HeckeInstance::create(n, NormalCharacter::trivial(n, f), RhoAction::trivial(g, f), mu);
}

/// G = Z/4, N = {0, 2}, omega(2) = -1.
inline InstancePtr example_c(const CyclotomicField& f, Rational mu = 1) {
  GroupPtr g = FiniteGroup::cyclic(4);
  Subgroup n(g, {0, 2});
  NormalCharacter omega(n, f, {FieldElement(f, 1), FieldElement(f, -1)});
  return HeckeInstance::create(n, omega, RhoAction::trivial(g, f), mu, "example-c");
}

/// G = Z/4 acting on Q(zeta_4) through Z/2 by complex conjugation, N trivial.
inline InstancePtr galois_z4() {
  GroupPtr g = FiniteGroup::cyclic(4);
  const auto& f = Qz(4);
  Subgroup n = Subgroup::trivial(g);
  return HeckeInstance::create(n, NormalCharacter::trivial(n, f), RhoAction(g, f, {1, 3, 1, 3}), 1, "galois-z4");
}

/// G = N = S_3 with omega the sign character.
inline InstancePtr s3_sign(const CyclotomicField& f) {
  GroupPtr g = FiniteGroup::symmetric(3);
  Subgroup n = Subgroup::whole(g);
  std::vector<FieldElement> values;
  for (Elem x : n.members()) values.push_back(FieldElement(f, (x == 0 || x == 3 || x == 4) ? 1 : -1));
  return HeckeInstance::create(n, NormalCharacter(n, f, values), RhoAction::trivial(g, f), 1, "s3-sign");
}

inline FieldElement random_scalar(std::mt19937& rng, const CyclotomicField& f, int bound = 3) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, 3);
  std::vector<Rational> c;
  for (int i = 0; i < f.degree(); ++i) c.push_back(make_rational(num(rng), den(rng)));
  return FieldElement::from_coefficients(f, c);
}

/// Random element of H(G//K). For a non-normal K the instance must have N
/// trivial; the coset values are then averaged over the left K-action.
inline HeckeElement random_element(std::mt19937& rng, const InstancePtr& inst, const Subgroup& k) {
  LeftCosets cosets = left_cosets(join(inst->normal_subgroup(), k));
  std::vector<FieldElement> values;
  for (std::size_t i = 0; i < cosets.transversal.size(); ++i) values.push_back(random_scalar(rng, inst->field()));
  if (!k.is_normal()) {
    const FiniteGroup& g = inst->group();
    std::vector<FieldElement> averaged;
    for (Elem t : cosets.transversal) {
      FieldElement acc(inst->field(), 0);
      for (Elem x : k.members()) acc += values[cosets.coset_of[g.mul(x, t)]];
      averaged.push_back(acc * FieldElement(inst->field(), Rational(1, k.order())));
    }
    values = std::move(averaged);
  }
  return make_element(inst, values, k);
}

/// Indicator-type basis of H(G//K) for a normal K: one element per coset of NK.
inline std::vector<HeckeElement> coset_basis(const InstancePtr& inst, const Subgroup& k) {
  LeftCosets cosets = left_cosets(join(inst->normal_subgroup(), k));
  std::vector<HeckeElement> out;
  for (std::size_t i = 0; i < cosets.transversal.size(); ++i) {
    std::vector<FieldElement> v(cosets.transversal.size(), FieldElement(inst->field(), 0));
    v[i] = FieldElement(inst->field(), 1);
    out.push_back(make_element(inst, v, k));
  }
  return out;
}

inline CPElement random_cp(std::mt19937& rng, const CPPtr& a) {
  FieldVector v(a->order());
  for (int d = 0; d < a->order(); ++d) v(d) = random_scalar(rng, a->field());
  return a->element(v);
}

inline FieldVector table(const CyclotomicField& f, const std::vector<long>& values) {
  FieldVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = FieldElement(f, values[i]);
  return v;
}

}  // namespace fixture
