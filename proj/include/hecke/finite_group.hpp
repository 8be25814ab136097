#pragma once

// Finite groups as multiplication tables. Elements are labels 0..n-1 with 0
// the identity. Subgroups, homomorphisms and quotients refer to their groups
// through shared pointers so they can outlive the factory that built them.

#include <memory>
#include <string>
#include <vector>

namespace hecke {

using Elem = int;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr int kMaxGroupOrder = 256;

class FiniteGroup {
 public:
  /// Validates identity, inverses and associativity (exhaustive up to order
  /// 64, a fixed pseudo-random sample of triples above).
  static GroupPtr from_table(std::vector<std::vector<Elem>> table, std::string name = "");
  static GroupPtr cyclic(int n);
  static GroupPtr symmetric(int n);
  /// Pairs (a, b) labelled a * |B| + b.
  static GroupPtr product(const FiniteGroup& a, const FiniteGroup& b);
  /// base x| Z/n where the generator acts by `automorphism` (images of the
  /// base elements). Pairs (b, j) are labelled j * |base| + b.
  static GroupPtr semidirect(const FiniteGroup& base, const std::vector<Elem>& automorphism, int n);

  int order() const noexcept { return static_cast<int>(inverse_.size()); }
  const std::string& name() const noexcept { return name_; }

  Elem mul(Elem a, Elem b) const { return table_[a][b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  Elem power(Elem a, long k) const;
  int element_order(Elem a) const;
  bool is_abelian() const;

  const std::vector<std::vector<Elem>>& table() const noexcept { return table_; }

 private:
  FiniteGroup(std::vector<std::vector<Elem>> table, std::string name);

  std::vector<std::vector<Elem>> table_;
  std::vector<Elem> inverse_;
  std::string name_;
};

class Subgroup {
 public:
  Subgroup() = default;
  /// Validates closure; throws NotASubgroup.
  Subgroup(GroupPtr parent, std::vector<Elem> members);

  static Subgroup trivial(GroupPtr parent);
  static Subgroup whole(GroupPtr parent);
  static Subgroup generated(GroupPtr parent, const std::vector<Elem>& generators);

  const GroupPtr& parent() const noexcept { return parent_; }
  const FiniteGroup& group() const { return *parent_; }
  const std::vector<Elem>& members() const noexcept { return members_; }
  int order() const noexcept { return static_cast<int>(members_.size()); }
  bool contains(Elem g) const { return mask_[g] != 0; }
  bool is_trivial() const noexcept { return members_.size() == 1; }

  bool is_normal() const;
  bool is_subset_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

  std::string to_string() const;

 private:
  GroupPtr parent_;
  std::vector<Elem> members_;
  std::vector<char> mask_;
};

Subgroup intersect(const Subgroup& a, const Subgroup& b);
/// The subgroup generated by a and b (equal to the set product when one of
/// them is normal).
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup centralizer(const Subgroup& s);
/// Largest normal subgroup of the parent contained in s.
Subgroup normal_core(const Subgroup& s);
/// A normal subgroup K' of G with K' contained in K and in the centralizer of
/// N. When N is central this is the normal core of K.
Subgroup arrange_normal_level(const Subgroup& k, const Subgroup& n);

/// Left cosets gH, each represented by its smallest label; representatives
/// ascend, so the identity comes first.
struct LeftCosets {
  std::vector<Elem> transversal;
  std::vector<int> coset_of;  // element -> index into transversal
};
LeftCosets left_cosets(const Subgroup& h);

class GroupHom {
 public:
  GroupHom() = default;
  /// Validates multiplicativity; throws NotAHomomorphism.
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> images);
  static GroupHom identity(GroupPtr g);
  static GroupHom inclusion(const Subgroup& s, GroupPtr as_group);

  const GroupPtr& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  Elem operator()(Elem g) const { return images_[g]; }
  const std::vector<Elem>& images() const noexcept { return images_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_automorphism() const;
  GroupHom compose(const GroupHom& inner) const;  // this o inner
  GroupHom inverse() const;                       // requires bijectivity
  Subgroup kernel() const;
  /// Image of a subgroup of the source.
  Subgroup image(const Subgroup& s) const;
  /// Preimage of a subgroup of the target.
  Subgroup preimage(const Subgroup& s) const;

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
  }

 private:
  GroupPtr source_, target_;
  std::vector<Elem> images_;
};

GroupHom conjugation_aut(const GroupPtr& g, Elem x);

/// G/N with cosets labelled by ascending smallest member, the projection, and
/// the transversal of smallest coset members (identity first).
struct Quotient {
  GroupPtr group;
  GroupHom projection;
  std::vector<Elem> transversal;
};
Quotient quotient(const Subgroup& n);

/// Permutation of an explicit list of elements, for the multiplication by a
/// unit on Z/n.
std::vector<Elem> multiplication_map(int n, long u);

}  // namespace hecke
