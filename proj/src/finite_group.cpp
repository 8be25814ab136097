#include "hecke/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

std::string label_list(const std::vector<Elem>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << "}";
  return os.str();
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<Elem>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) throw Error(ErrorKind::InvalidGroup, "empty multiplication table");
  if (n > kMaxGroupOrder) {
    throw Error(ErrorKind::BoundsExceeded, "group order " + std::to_string(n) + " exceeds " +
                                               std::to_string(kMaxGroupOrder));
  }
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table_[a].size()) != n) {
      throw Error(ErrorKind::InvalidGroup, "row " + std::to_string(a) + " has the wrong length");
    }
    std::vector<char> seen(n, 0);
    for (int b = 0; b < n; ++b) {
      Elem c = table_[a][b];
      if (c < 0 || c >= n) throw Error(ErrorKind::InvalidGroup, "entry out of range in row " + std::to_string(a));
      if (seen[c]) throw Error(ErrorKind::InvalidGroup, "row " + std::to_string(a) + " repeats " + std::to_string(c));
      seen[c] = 1;
    }
    if (table_[0][a] != a || table_[a][0] != a) {
      throw Error(ErrorKind::InvalidGroup, "element 0 is not the identity (fails at " + std::to_string(a) + ")");
    }
  }
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table_[a][b] == 0) inverse_[a] = b;
    }
    if (inverse_[a] < 0 || table_[inverse_[a]][a] != 0) {
      throw Error(ErrorKind::InvalidGroup, "element " + std::to_string(a) + " has no two-sided inverse");
    }
  }
  auto check = [&](int a, int b, int c) {
    if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
      throw Error(ErrorKind::InvalidGroup, "associativity fails on (" + std::to_string(a) + "," + std::to_string(b) +
                                               "," + std::to_string(c) + ")");
    }
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(20240611u);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < 262144; ++i) check(pick(rng), pick(rng), pick(rng));
  }
}

GroupPtr FiniteGroup::from_table(std::vector<std::vector<Elem>> table, std::string name) {
  return GroupPtr(new FiniteGroup(std::move(table), std::move(name)));
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidGroup, "cyclic group of order " + std::to_string(n));
  if (n > kMaxGroupOrder) throw Error(ErrorKind::BoundsExceeded, "cyclic group of order " + std::to_string(n));
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t), "Z/" + std::to_string(n));
}

GroupPtr FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw Error(ErrorKind::BoundsExceeded, "symmetric group S_" + std::to_string(n));
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  auto index = [&](const std::vector<int>& q) {
    return static_cast<Elem>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<Elem>> t(order, std::vector<Elem>(order));
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index(c);
    }
  }
  return from_table(std::move(t), "S_" + std::to_string(n));
}

GroupPtr FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  if (na * nb > kMaxGroupOrder) throw Error(ErrorKind::BoundsExceeded, "product group too large");
  std::vector<std::vector<Elem>> t(na * nb, std::vector<Elem>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return from_table(std::move(t), a.name() + " x " + b.name());
}

GroupPtr FiniteGroup::semidirect(const FiniteGroup& base, const std::vector<Elem>& automorphism, int n) {
  const int nb = base.order();
  if (n < 1) throw Error(ErrorKind::InvalidGroup, "semidirect factor Z/" + std::to_string(n));
  if (nb * n > kMaxGroupOrder) throw Error(ErrorKind::BoundsExceeded, "semidirect product too large");
  GroupPtr basep(new FiniteGroup(base));
  GroupHom theta(basep, basep, automorphism);
  if (!theta.is_automorphism()) throw Error(ErrorKind::NotAHomomorphism, "semidirect action is not bijective");
  // powers[j] = theta^j
  std::vector<std::vector<Elem>> powers(n + 1, std::vector<Elem>(nb));
  std::iota(powers[0].begin(), powers[0].end(), 0);
  for (int j = 1; j <= n; ++j)
    for (int x = 0; x < nb; ++x) powers[j][x] = automorphism[powers[j - 1][x]];
  for (int x = 0; x < nb; ++x) {
    if (powers[n][x] != x) {
      throw Error(ErrorKind::NotAHomomorphism, "action does not have order dividing " + std::to_string(n));
    }
  }
  std::vector<std::vector<Elem>> t(nb * n, std::vector<Elem>(nb * n));
  for (int x = 0; x < nb * n; ++x) {
    for (int y = 0; y < nb * n; ++y) {
      int b1 = x % nb, j1 = x / nb, b2 = y % nb, j2 = y / nb;
      t[x][y] = ((j1 + j2) % n) * nb + base.mul(b1, powers[j1][b2]);
    }
  }
  return from_table(std::move(t), base.name() + " x| Z/" + std::to_string(n));
}

Elem FiniteGroup::power(Elem a, long k) const {
  if (k < 0) return power(inv(a), -k);
  Elem r = 0;
  for (long i = 0; i < k % element_order(a); ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(Elem a) const {
  int k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent, std::vector<Elem> members) : parent_(std::move(parent)) {
  const int n = parent_->order();
  mask_.assign(n, 0);
  for (Elem g : members) {
    if (g < 0 || g >= n) throw Error(ErrorKind::NotASubgroup, "element " + std::to_string(g) + " out of range");
    mask_[g] = 1;
  }
  for (int g = 0; g < n; ++g)
    if (mask_[g]) members_.push_back(g);
  if (members_.empty() || members_[0] != 0) throw Error(ErrorKind::NotASubgroup, label_list(members_) + " lacks the identity");
  for (Elem a : members_) {
    if (!mask_[parent_->inv(a)]) {
      throw Error(ErrorKind::NotASubgroup, label_list(members_) + " is not closed under inverses at " + std::to_string(a));
    }
    for (Elem b : members_) {
      if (!mask_[parent_->mul(a, b)]) {
        throw Error(ErrorKind::NotASubgroup, label_list(members_) + " is not closed: " + std::to_string(a) + "*" +
                                                 std::to_string(b));
      }
    }
  }
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {0}); }

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<Elem> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::generated(GroupPtr parent, const std::vector<Elem>& generators) {
  const int n = parent->order();
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (Elem g : generators) {
      if (g < 0 || g >= n) throw Error(ErrorKind::NotASubgroup, "generator " + std::to_string(g) + " out of range");
      Elem y = parent->mul(x, g);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<Elem> members;
  for (int g = 0; g < n; ++g)
    if (in[g]) members.push_back(g);
  return Subgroup(std::move(parent), std::move(members));
}

bool Subgroup::is_normal() const {
  for (int g = 0; g < parent_->order(); ++g)
    for (Elem x : members_)
      if (!mask_[parent_->conj(g, x)]) return false;
  return true;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  if (parent_ != other.parent_) return false;
  return std::all_of(members_.begin(), members_.end(), [&](Elem g) { return other.contains(g); });
}

std::string Subgroup::to_string() const { return label_list(members_); }

namespace {

void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (a.parent() != b.parent()) throw Error(ErrorKind::NotASubgroup, "subgroups of different groups");
}

}  // namespace

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<Elem> out;
  for (Elem g : a.members())
    if (b.contains(g)) out.push_back(g);
  return Subgroup(a.parent(), std::move(out));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<Elem> gens = a.members();
  gens.insert(gens.end(), b.members().begin(), b.members().end());
  return Subgroup::generated(a.parent(), gens);
}

Subgroup centralizer(const Subgroup& s) {
  const FiniteGroup& g = s.group();
  std::vector<Elem> out;
  for (int x = 0; x < g.order(); ++x) {
    bool commutes = std::all_of(s.members().begin(), s.members().end(),
                                [&](Elem y) { return g.mul(x, y) == g.mul(y, x); });
    if (commutes) out.push_back(x);
  }
  return Subgroup(s.parent(), std::move(out));
}

Subgroup normal_core(const Subgroup& s) {
  const FiniteGroup& g = s.group();
  std::vector<Elem> out;
  for (Elem x : s.members()) {
    bool all = true;
    for (int t = 0; t < g.order() && all; ++t) all = s.contains(g.conj(g.inv(t), x));
    if (all) out.push_back(x);
  }
  return Subgroup(s.parent(), std::move(out));
}

Subgroup arrange_normal_level(const Subgroup& k, const Subgroup& n) {
  require_same_parent(k, n);
  return normal_core(intersect(k, centralizer(n)));
}

LeftCosets left_cosets(const Subgroup& h) {
  const FiniteGroup& g = h.group();
  LeftCosets out;
  out.coset_of.assign(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (out.coset_of[x] >= 0) continue;
    int index = static_cast<int>(out.transversal.size());
    out.transversal.push_back(x);
    for (Elem y : h.members()) out.coset_of[g.mul(x, y)] = index;
  }
  return out;
}

// ---------------------------------------------------------------------------

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  const int n = source_->order();
  if (static_cast<int>(images_.size()) != n) {
    throw Error(ErrorKind::NotAHomomorphism, "image table has " + std::to_string(images_.size()) + " entries, expected " +
                                                 std::to_string(n));
  }
  for (Elem y : images_) {
    if (y < 0 || y >= target_->order()) throw Error(ErrorKind::NotAHomomorphism, "image out of range");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (images_[source_->mul(a, b)] != target_->mul(images_[a], images_[b])) {
        throw Error(ErrorKind::NotAHomomorphism, "f(" + std::to_string(a) + "*" + std::to_string(b) +
                                                     ") != f(" + std::to_string(a) + ")*f(" + std::to_string(b) + ")");
      }
    }
  }
}

GroupHom GroupHom::identity(GroupPtr g) {
  std::vector<Elem> images(g->order());
  std::iota(images.begin(), images.end(), 0);
  return GroupHom(g, g, std::move(images));
}

GroupHom GroupHom::inclusion(const Subgroup& s, GroupPtr as_group) {
  if (as_group->order() != s.order()) throw Error(ErrorKind::NotAHomomorphism, "inclusion: order mismatch");
  return GroupHom(std::move(as_group), s.parent(), s.members());
}

bool GroupHom::is_injective() const { return kernel().is_trivial(); }

bool GroupHom::is_surjective() const {
  std::vector<char> hit(target_->order(), 0);
  for (Elem y : images_) hit[y] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool GroupHom::is_automorphism() const {
  return source_->table() == target_->table() && is_injective() && is_surjective();
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  if (inner.target_->table() != source_->table()) throw Error(ErrorKind::NotAHomomorphism, "composition of mismatched maps");
  std::vector<Elem> images(inner.source_->order());
  for (int g = 0; g < inner.source_->order(); ++g) images[g] = images_[inner.images_[g]];
  return GroupHom(inner.source_, target_, std::move(images));
}

GroupHom GroupHom::inverse() const {
  if (!is_injective() || !is_surjective()) throw Error(ErrorKind::NotAHomomorphism, "inverse of a non-bijective map");
  std::vector<Elem> images(target_->order());
  for (int g = 0; g < source_->order(); ++g) images[images_[g]] = g;
  return GroupHom(target_, source_, std::move(images));
}

Subgroup GroupHom::kernel() const {
  std::vector<Elem> out;
  for (int g = 0; g < source_->order(); ++g)
    if (images_[g] == 0) out.push_back(g);
  return Subgroup(source_, std::move(out));
}

Subgroup GroupHom::image(const Subgroup& s) const {
  if (s.group().table() != source_->table()) throw Error(ErrorKind::NotASubgroup, "image of a foreign subgroup");
  std::vector<Elem> out;
  for (Elem g : s.members()) out.push_back(images_[g]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Subgroup(target_, std::move(out));
}

Subgroup GroupHom::preimage(const Subgroup& s) const {
  if (s.group().table() != target_->table()) throw Error(ErrorKind::NotASubgroup, "preimage of a foreign subgroup");
  std::vector<Elem> out;
  for (int g = 0; g < source_->order(); ++g)
    if (s.contains(images_[g])) out.push_back(g);
  return Subgroup(source_, std::move(out));
}

GroupHom conjugation_aut(const GroupPtr& g, Elem x) {
  std::vector<Elem> images(g->order());
  for (int y = 0; y < g->order(); ++y) images[y] = g->conj(x, y);
  return GroupHom(g, g, std::move(images));
}

Quotient quotient(const Subgroup& n) {
  if (!n.is_normal()) throw Error(ErrorKind::NotNormal, n.to_string() + " is not normal");
  const FiniteGroup& g = n.group();
  LeftCosets cosets = left_cosets(n);
  const int q = static_cast<int>(cosets.transversal.size());
  std::vector<std::vector<Elem>> table(q, std::vector<Elem>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) table[a][b] = cosets.coset_of[g.mul(cosets.transversal[a], cosets.transversal[b])];
  std::string name = g.name().empty() ? "" : g.name() + " / " + n.to_string();
  Quotient out;
  out.group = FiniteGroup::from_table(std::move(table), std::move(name));
  out.projection = GroupHom(n.parent(), out.group, cosets.coset_of);
  out.transversal = std::move(cosets.transversal);
  return out;
}

std::vector<Elem> multiplication_map(int n, long u) {
  std::vector<Elem> images(n);
  long r = ((u % n) + n) % n;
  for (int x = 0; x < n; ++x) images[x] = static_cast<Elem>((r * x) % n);
  return images;
}

}  // namespace hecke
