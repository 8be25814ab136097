#include "hecke/normal_character.hpp"

#include <algorithm>

#include "hecke/error.hpp"

namespace hecke {

RhoAction::RhoAction(GroupPtr group, const CyclotomicField& field, std::vector<long> exponents)
    : group_(std::move(group)), field_(&field), exponents_(std::move(exponents)) {
  const int n = group_->order();
  const long m = field.conductor();
  if (static_cast<int>(exponents_.size()) != n) {
    throw Error(ErrorKind::NotAHomomorphism, "rho needs one exponent per group element");
  }
  for (auto& k : exponents_) {
    FieldAut sigma(field, k);  // validates the unit
    k = sigma.exponent();
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (exponents_[group_->mul(a, b)] != (exponents_[a] * exponents_[b]) % m) {
        throw Error(ErrorKind::NotAHomomorphism, "rho(" + std::to_string(a) + "*" + std::to_string(b) +
                                                     ") != rho(" + std::to_string(a) + ") o rho(" + std::to_string(b) + ")");
      }
    }
  }
}

RhoAction RhoAction::trivial(GroupPtr group, const CyclotomicField& field) {
  int n = group->order();
  return RhoAction(std::move(group), field, std::vector<long>(n, 1));
}

bool RhoAction::is_trivial() const {
  const long one = 1 % field_->conductor();
  return std::all_of(exponents_.begin(), exponents_.end(), [&](long k) { return k == one; });
}

RhoAction RhoAction::pullback(const GroupHom& phi) const {
  std::vector<long> exps(phi.source()->order());
  for (int g = 0; g < phi.source()->order(); ++g) exps[g] = exponents_[phi(g)];
  return RhoAction(phi.source(), *field_, std::move(exps));
}

NormalCharacter::NormalCharacter(Subgroup n, const CyclotomicField& field, std::vector<FieldElement> values)
    : n_(std::move(n)), field_(&field) {
  if (static_cast<int>(values.size()) != n_.order()) {
    throw Error(ErrorKind::InconsistentValues, "omega needs one value per element of N");
  }
  by_element_.assign(n_.group().order(), FieldElement());
  for (int i = 0; i < n_.order(); ++i) by_element_[n_.members()[i]] = values[i].in(field);
}

NormalCharacter NormalCharacter::trivial(Subgroup n, const CyclotomicField& field) {
  int order = n.order();
  return NormalCharacter(std::move(n), field, std::vector<FieldElement>(order, FieldElement(field, 1)));
}

const FieldElement& NormalCharacter::operator()(Elem g) const {
  if (!n_.contains(g)) throw Error(ErrorKind::NotASubgroup, "omega evaluated outside N at " + std::to_string(g));
  return by_element_[g];
}

bool NormalCharacter::is_trivial() const {
  return std::all_of(n_.members().begin(), n_.members().end(), [&](Elem g) { return by_element_[g].is_one(); });
}

bool NormalCharacter::trivial_on(const Subgroup& k) const {
  return std::all_of(n_.members().begin(), n_.members().end(),
                     [&](Elem g) { return !k.contains(g) || by_element_[g].is_one(); });
}

CharacterReport validate_normal_character(const NormalCharacter& omega, const RhoAction& rho) {
  CharacterReport report;
  const Subgroup& n = omega.domain();
  const FiniteGroup& g = n.group();
  auto fail = [&](CharacterViolation v) {
    report.ok = false;
    report.violations.push_back(std::move(v));
  };
  auto s = [](Elem x) { return std::to_string(x); };

  for (Elem a : n.members()) {
    if (root_of_unity_order(omega(a)) == 0) {
      fail({"root-of-unity", "omega(n)^k = 1 for some k >= 1", {a}, "omega(" + s(a) + ") = " + omega(a).to_string()});
      break;
    }
  }
  [&] {
    for (Elem a : n.members())
      for (Elem b : n.members()) {
        if (omega(g.mul(a, b)) != omega(a) * omega(b)) {
          fail({"multiplicative", "omega(n n') = omega(n) omega(n')", {a, b},
                "omega(" + s(g.mul(a, b)) + ") = " + omega(g.mul(a, b)).to_string() + " but omega(" + s(a) +
                    ") omega(" + s(b) + ") = " + (omega(a) * omega(b)).to_string()});
          return;
        }
      }
  }();
  [&] {
    for (int x = 0; x < g.order(); ++x)
      for (Elem a : n.members()) {
        Elem c = g.conj(x, a);
        if (!n.contains(c)) {
          fail({"conjugation-invariant", "omega(g n g^-1) = omega(n)", {x, a}, "N is not normal"});
          return;
        }
        if (omega(c) != omega(a)) {
          fail({"conjugation-invariant", "omega(g n g^-1) = omega(n)", {x, a},
                "g n g^-1 = " + s(c) + ", omega(" + s(c) + ") = " + omega(c).to_string() + " but omega(" + s(a) +
                    ") = " + omega(a).to_string()});
          return;
        }
      }
  }();
  if (rho.group()->table() != g.table()) {
    throw Error(ErrorKind::InstanceMismatch, "rho and omega are defined on different groups");
  }
  [&] {
    for (int x = 0; x < g.order(); ++x)
      for (Elem a : n.members()) {
        if (rho.act(x, omega(a)) != omega(a)) {
          fail({"rho-fixes-omega", "g . omega(n) = omega(n)", {x, a},
                "rho(" + s(x) + ") moves omega(" + s(a) + ") = " + omega(a).to_string()});
          return;
        }
      }
  }();
  for (Elem a : n.members()) {
    if (!rho(a).is_identity()) {
      fail({"rho-trivial-on-N", "n . r = r for n in N", {a},
            "rho(" + s(a) + ") = zeta -> zeta^" + std::to_string(rho.exponent(a))});
      break;
    }
  }
  return report;
}

bool in_admissible_class(const Subgroup& k, const NormalCharacter& omega, const RhoAction& rho) {
  for (Elem x : k.members())
    if (!rho(x).is_identity()) return false;
  return omega.trivial_on(k);
}

}  // namespace hecke
