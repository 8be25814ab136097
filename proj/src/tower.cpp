#include "hecke/tower.hpp"

#include <numeric>

#include "hecke/error.hpp"

namespace hecke {

namespace {

std::string str(long g) { return std::to_string(g); }

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

TowerPtr TowerSpec::create(InstancePtr ambient, std::vector<Subgroup> chain, std::optional<Twist> twist,
                           std::string name) {
  if (chain.empty()) throw Error(ErrorKind::InconsistentValues, "a tower needs at least K_0");
  const FiniteGroup& g = ambient->group();
  for (std::size_t n = 0; n < chain.size(); ++n) {
    const Subgroup& k = chain[n];
    if (k.parent() != ambient->group_ptr()) throw Error(ErrorKind::InstanceMismatch, "K_" + str(n) + " is not in L");
    if (!k.is_normal()) throw Error(ErrorKind::NotNormal, "K_" + str(n) + " = " + k.to_string() + " is not normal");
    ambient->require_admissible_class(k);
    if (n > 0 && !k.is_subset_of(chain[n - 1])) {
      throw Error(ErrorKind::NotNested, "K_" + str(n) + " is not inside K_" + str(n - 1));
    }
  }
  if (twist) {
    const GroupHom& phi = twist->phi;
    if (phi.source() != ambient->group_ptr() || phi.target() != ambient->group_ptr()) {
      throw Error(ErrorKind::InstanceMismatch, "phi is not an endomorphism of L");
    }
    if (!phi.is_automorphism()) throw Error(ErrorKind::NotAHomomorphism, "phi is not an automorphism of L");
    for (std::size_t n = 0; n < chain.size(); ++n) {
      if (phi.image(chain[n]) != chain[n]) {
        throw Error(ErrorKind::CompatibilityViolation, "phi(K_" + str(n) + ") != K_" + str(n));
      }
    }
    const Subgroup& nsub = ambient->normal_subgroup();
    if (phi.image(nsub) != nsub) throw Error(ErrorKind::CompatibilityViolation, "phi(N) != N");
    for (Elem x : nsub.members()) {
      if (ambient->omega()(phi(x)) != ambient->omega()(x)) {
        throw Error(ErrorKind::CompatibilityViolation, "omega(phi(" + str(x) + ")) != omega(" + str(x) + ")");
      }
    }
    for (int x = 0; x < g.order(); ++x) {
      if (ambient->rho().exponent(phi(x)) != ambient->rho().exponent(x)) {
        throw Error(ErrorKind::CompatibilityViolation, "rho(phi(" + str(x) + ")) != rho(" + str(x) + ")");
      }
    }
    const long m = ambient->field().conductor();
    twist->rho_t = ((twist->rho_t % m) + m) % m;
    if (m > 1 && std::gcd(twist->rho_t, m) != 1) throw Error(ErrorKind::NotAUnit, "rho(t) exponent " + str(twist->rho_t));
    if (m == 1) twist->rho_t = 0;
    for (Elem x : nsub.members()) {
      if (apply_galois(twist->rho_t, ambient->omega()(x)) != ambient->omega()(x)) {
        throw Error(ErrorKind::CompatibilityViolation, "rho(t) moves omega(" + str(x) + ")");
      }
    }
  }
  auto t = std::shared_ptr<TowerSpec>(new TowerSpec());
  t->name_ = std::move(name);
  t->ambient_ = std::move(ambient);
  t->chain_ = std::move(chain);
  t->twist_ = std::move(twist);
  for (const auto& k : t->chain_) t->quotients_.push_back(quotient(join(t->ambient_->normal_subgroup(), k)));
  t->levels_.resize(t->chain_.size());
  t->embeddings_.resize(t->chain_.size());
  if (t->twist_) {
    if (auto v = t->square_violation()) throw Error(ErrorKind::CompatibilityViolation, *v);
  }
  return t;
}

const Twist& TowerSpec::twist() const {
  if (!twist_) throw Error(ErrorKind::NoTwistConfigured, "tower '" + name_ + "' has no twist");
  return *twist_;
}

GroupHom TowerSpec::surjection(int n) const {
  const Quotient& hi = quotients_.at(n + 1);
  const Quotient& lo = quotients_.at(n);
  std::vector<Elem> images;
  for (Elem x : hi.transversal) images.push_back(lo.projection(x));
  return GroupHom(hi.group, lo.group, std::move(images));
}

GroupHom TowerSpec::phi_at(int n) const {
  const GroupHom& phi = twist().phi;
  const Quotient& q = quotients_.at(n);
  std::vector<Elem> images;
  for (Elem x : q.transversal) images.push_back(q.projection(phi(x)));
  return GroupHom(q.group, q.group, std::move(images));
}

std::optional<std::string> TowerSpec::square_violation() const {
  for (int n = 0; n + 1 < static_cast<int>(chain_.size()); ++n) {
    GroupHom s = surjection(n);
    GroupHom lo = phi_at(n);
    GroupHom hi = phi_at(n + 1);
    for (int x = 0; x < s.source()->order(); ++x) {
      if (lo(s(x)) != s(hi(x))) {
        return "phi_" + str(n) + " o s_" + str(n) + " != s_" + str(n) + " o phi_" + str(n + 1) + " at " + str(x);
      }
    }
  }
  return std::nullopt;
}

LevelPtr TowerSpec::level_algebra(int n) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (levels_.at(n)) return levels_[n];
  }
  LevelPtr built = build_level(ambient_, chain_.at(n));
  std::lock_guard<std::mutex> lock(mutex_);
  if (!levels_[n]) levels_[n] = std::move(built);
  return levels_[n];
}

const LevelEmbedding& TowerSpec::embedding(int n) const {
  if (n < 0 || n + 1 >= static_cast<int>(chain_.size())) throw Error(ErrorKind::NotNested, "no level after " + str(n));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (embeddings_[n]) return *embeddings_[n];
  }
  auto built = std::make_unique<LevelEmbedding>(embed_level(level_algebra(n), level_algebra(n + 1)));
  std::lock_guard<std::mutex> lock(mutex_);
  if (!embeddings_[n]) embeddings_[n] = std::move(built);
  return *embeddings_[n];
}

TowerPtr TowerSpec::inverse_twist() const {
  const Twist& t = twist();
  const long m = ambient_->field().conductor();
  long inv = 0;
  for (long j = 0; j < std::max(m, 1L); ++j) {
    if ((t.rho_t * j) % m == 1 % m) {
      inv = j;
      break;
    }
  }
  return create(ambient_, chain_, Twist{t.phi.inverse(), inv}, name_ + " (inverse twist)");
}

TowerPtr TowerSpec::truncated(int depth) const {
  if (depth < 0 || depth > this->depth()) throw Error(ErrorKind::NotNested, "depth " + str(depth) + " out of range");
  std::vector<Subgroup> chain(chain_.begin(), chain_.begin() + depth + 1);
  return create(ambient_, std::move(chain), twist_, name_);
}

TowerPtr cyclic_tower(int p, int depth, long conductor) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidGroup, str(p) + " is not prime");
  if (depth < 0) throw Error(ErrorKind::InvalidGroup, "negative depth");
  long order = 1;
  for (int i = 0; i < depth; ++i) {
    order *= p;
    if (order > kMaxGroupOrder) {
      throw Error(ErrorKind::BoundsExceeded, "Z/" + str(p) + "^" + str(depth) + " exceeds the group order cap");
    }
  }
  GroupPtr l = FiniteGroup::cyclic(static_cast<int>(order));
  const CyclotomicField& f = CyclotomicField::get(conductor);
  Subgroup trivial = Subgroup::trivial(l);
  auto inst = HeckeInstance::create(trivial, NormalCharacter::trivial(trivial, f), RhoAction::trivial(l, f), 1,
                                    "Z_" + str(p));
  std::vector<Subgroup> chain;
  long step = 1;
  for (int n = 0; n <= depth; ++n) {
    std::vector<Elem> members;
    for (long x = 0; x < order; x += step) members.push_back(static_cast<Elem>(x));
    chain.push_back(Subgroup(l, std::move(members)));
    step *= p;
  }
  return TowerSpec::create(inst, std::move(chain), std::nullopt, "Z_" + str(p) + " depth " + str(depth));
}

TowerPtr attach_unit_twist(const TowerPtr& tower, long u) {
  const FiniteGroup& l = tower->ambient()->group();
  const int n = l.order();
  if (l.table() != FiniteGroup::cyclic(n)->table()) {
    throw Error(ErrorKind::InvalidGroup, "unit twists need a cyclic ambient group");
  }
  if (std::gcd(((u % n) + n) % n, static_cast<long>(n)) != 1 && n > 1) {
    throw Error(ErrorKind::NotAUnit, str(u) + " is not a unit mod " + str(n));
  }
  GroupHom phi(tower->ambient()->group_ptr(), tower->ambient()->group_ptr(), multiplication_map(n, u));
  return TowerSpec::create(tower->ambient(), tower->chain(), Twist{phi, 1}, tower->name() + " twist u=" + str(u));
}

}  // namespace hecke
