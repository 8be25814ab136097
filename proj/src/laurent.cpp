#include "hecke/laurent.hpp"

#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

long inverse_exponent(long k, long m) {
  if (m == 1) return 0;
  for (long j = 1; j < m; ++j) {
    if ((k * j) % m == 1) return j;
  }
  throw Error(ErrorKind::NotAUnit, std::to_string(k) + " is not a unit mod " + std::to_string(m));
}

long power_mod(long base, long e, long m) {
  if (m == 1) return 0;
  long r = 1 % m;
  base %= m;
  for (; e > 0; --e) r = (r * base) % m;
  return r;
}

// l -> sigma_exponent(s(psi^{-1}(l))).
FieldVector transport(const FieldVector& values, const GroupHom& psi, long exponent) {
  FieldVector out(values.size());
  for (Eigen::Index x = 0; x < values.size(); ++x) out(psi(static_cast<Elem>(x))) = apply_galois(exponent, values(x));
  return out;
}

void require_invariant_level(const TowerSpec& tower, const Subgroup& k) {
  if (tower.twist().phi.image(k) != k) {
    throw Error(ErrorKind::CompatibilityViolation, "level " + k.to_string() + " is not phi-invariant");
  }
}

bool nonzero(const FieldVector& v) { return !is_zero_matrix(v); }

}  // namespace

HeckeElement phi_hecke(const TowerSpec& tower, const HeckeElement& s) {
  const Twist& t = tower.twist();
  if (s.instance() != tower.ambient()) throw Error(ErrorKind::InstanceMismatch, "element is not on the tower's L");
  require_invariant_level(tower, s.level());
  return unchecked_element(s.instance(), transport(s.values(), t.phi, t.rho_t), s.level());
}

// ---------------------------------------------------------------------------

namespace {

FieldMatrix automorphism_images(const LevelAlgebra& level, const GroupHom& psi, long exponent) {
  const int n = level.algebra()->order();
  FieldMatrix images(n, n);
  for (int d = 0; d < n; ++d) {
    const HeckeElement& b = level.basis_function(d);
    HeckeElement moved = unchecked_element(b.instance(), transport(b.values(), psi, exponent), b.level());
    images.col(d) = level.expand(moved).coefficients();
  }
  return images;
}

}  // namespace

LevelAutomorphism::LevelAutomorphism(TowerPtr tower, int level) : tower_(std::move(tower)), level_(level) {
  const Twist& t = tower_->twist();
  require_invariant_level(*tower_, tower_->level(level));
  algebra_ = tower_->level_algebra(level);
  galois_ = t.rho_t;
  images_ = automorphism_images(*algebra_, t.phi, galois_);
}

CPElement LevelAutomorphism::operator()(const CPElement& x) const {
  const CrossedProduct& a = *algebra();
  if (x.parent() != algebra()) throw Error(ErrorKind::ParentMismatch, "element of another level algebra");
  FieldVector out = FieldVector::Constant(a.order(), FieldElement(a.field(), 0));
  for (int d = 0; d < a.order(); ++d) {
    if (x[d].is_zero()) continue;
    const FieldElement r = apply_galois(galois_, x[d]);
    for (int e = 0; e < a.order(); ++e) {
      if (!images_(e, d).is_zero()) out(e) += r * images_(e, d);
    }
  }
  return a.element(std::move(out));
}

const LevelAutomorphism& LevelAutomorphism::inverse() const {
  if (!inverse_) {
    auto inv = std::shared_ptr<LevelAutomorphism>(new LevelAutomorphism());
    const Twist& t = tower_->twist();
    inv->tower_ = tower_;
    inv->level_ = level_;
    inv->algebra_ = algebra_;
    inv->galois_ = inverse_exponent(t.rho_t, algebra_->instance()->field().conductor());
    inv->images_ = automorphism_images(*algebra_, t.phi.inverse(), inv->galois_);
    inverse_ = inv;
  }
  return *inverse_;
}

CPElement LevelAutomorphism::power(const CPElement& x, long k) const {
  CPElement out = x;
  if (k >= 0) {
    for (long i = 0; i < k; ++i) out = (*this)(out);
  } else {
    const LevelAutomorphism& inv = inverse();
    for (long i = 0; i < -k; ++i) out = inv(out);
  }
  return out;
}

std::optional<std::string> LevelAutomorphism::automorphism_violation() const {
  const CrossedProduct& a = *algebra();
  std::vector<FieldElement> scalars{FieldElement(a.field(), 1)};
  if (a.field().degree() > 1) scalars.push_back(FieldElement::zeta(a.field()));
  for (int x = 0; x < a.order(); ++x) {
    for (int y = 0; y < a.order(); ++y) {
      for (const auto& r : scalars) {
        CPElement rhs = r * a.basis(y);
        if ((*this)(cp_mul(a.basis(x), rhs)) != cp_mul((*this)(a.basis(x)), (*this)(rhs))) {
          return "alpha(b_" + std::to_string(x) + " r b_" + std::to_string(y) + ") != alpha(b_" + std::to_string(x) +
                 ") alpha(r b_" + std::to_string(y) + ") for r = " + r.to_string();
        }
      }
    }
  }
  const LevelAutomorphism& inv = inverse();
  for (int d = 0; d < a.order(); ++d) {
    if (inv((*this)(a.basis(d))) != a.basis(d) || (*this)(inv(a.basis(d))) != a.basis(d)) {
      return "alpha is not inverted by the inverse twist at b_" + std::to_string(d);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

TwistedLaurentElement::TwistedLaurentElement(LevelAutPtr alpha) : alpha_(std::move(alpha)) {}

TwistedLaurentElement TwistedLaurentElement::monomial(LevelAutPtr alpha, const CPElement& a, long n) {
  TwistedLaurentElement f(std::move(alpha));
  f.set(n, a);
  return f;
}

CPElement TwistedLaurentElement::coefficient(long n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? base()->zero() : it->second;
}

void TwistedLaurentElement::set(long n, const CPElement& a) {
  if (a.parent() != base()) throw Error(ErrorKind::BaseMismatch, "coefficient from another algebra");
  if (a.is_zero()) {
    coeffs_.erase(n);
  } else {
    coeffs_.insert_or_assign(n, a);
  }
}

namespace {

void require_same_ring(const TwistedLaurentElement& a, const TwistedLaurentElement& b) {
  if (a.alpha() != b.alpha()) {
    if (!a.alpha() || !b.alpha() || a.base() != b.base() || a.alpha()->images() != b.alpha()->images() ||
        a.alpha()->galois_exponent() != b.alpha()->galois_exponent()) {
      throw Error(ErrorKind::BaseMismatch, "Laurent elements over different twisted rings");
    }
  }
}

}  // namespace

TwistedLaurentElement& TwistedLaurentElement::operator+=(const TwistedLaurentElement& other) {
  require_same_ring(*this, other);
  for (const auto& [n, a] : other.coeffs_) set(n, coefficient(n) + a);
  return *this;
}

TwistedLaurentElement operator-(const TwistedLaurentElement& a, const TwistedLaurentElement& b) {
  require_same_ring(a, b);
  TwistedLaurentElement out = a;
  for (const auto& [n, c] : b.coeffs_) out.set(n, out.coefficient(n) - c);
  return out;
}

bool operator==(const TwistedLaurentElement& a, const TwistedLaurentElement& b) {
  return a.base() == b.base() && a.coeffs_ == b.coeffs_;
}

std::string TwistedLaurentElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, a] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << a.to_string() << "] t^" << n;
  }
  return os.str();
}

TwistedLaurentElement laurent_mul(const TwistedLaurentElement& f, const TwistedLaurentElement& g) {
  require_same_ring(f, g);
  TwistedLaurentElement out(f.alpha());
  for (const auto& [m, a] : f.coefficients()) {
    for (const auto& [n, b] : g.coefficients()) {
      out.set(m + n, out.coefficient(m + n) + cp_mul(a, f.alpha()->power(b, m)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

CovirtZElement::CovirtZElement(TowerPtr tower, int level, std::map<long, FieldVector> slices)
    : tower_(std::move(tower)), level_(level) {
  const HeckeInstance& inst = *tower_->ambient();
  const Subgroup& k = tower_->level(level_);
  tower_->twist();
  for (auto& [m, v] : slices) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = v(i).in(inst.field());
    if (auto bad = element_violation(inst, v, k)) {
      throw Error(ErrorKind::InconsistentValues, "slice " + std::to_string(m) + ": " + *bad);
    }
    if (nonzero(v)) slices_.emplace(m, std::move(v));
  }
}

CovirtZElement::CovirtZElement(TowerPtr tower, int level, std::map<long, FieldVector> slices, Unchecked)
    : tower_(std::move(tower)), level_(level) {
  for (auto& [m, v] : slices) {
    if (nonzero(v)) slices_.emplace(m, std::move(v));
  }
}

FieldElement CovirtZElement::operator()(Elem l, long m) const {
  auto it = slices_.find(m);
  if (it == slices_.end()) return FieldElement(tower_->ambient()->field(), 0);
  return it->second(l);
}

bool operator==(const CovirtZElement& a, const CovirtZElement& b) {
  return a.tower_ == b.tower_ && a.slices_ == b.slices_;
}

CovirtZElement operator+(const CovirtZElement& a, const CovirtZElement& b) {
  if (a.tower_ != b.tower_) throw Error(ErrorKind::InstanceMismatch, "elements over different towers");
  std::map<long, FieldVector> out = a.slices_;
  for (const auto& [m, v] : b.slices_) {
    auto it = out.find(m);
    if (it == out.end()) {
      out.emplace(m, v);
    } else {
      it->second += v;
    }
  }
  return CovirtZElement(a.tower_, std::min(a.level_, b.level_), std::move(out), CovirtZElement::Unchecked{});
}

CovirtZElement direct_convolve(const CovirtZElement& x, const CovirtZElement& y) {
  if (x.tower_ != y.tower_) throw Error(ErrorKind::InstanceMismatch, "elements over different towers");
  const TowerSpec& tower = *x.tower_;
  const HeckeInstance& inst = *tower.ambient();
  const FiniteGroup& l = inst.group();
  const CyclotomicField& f = inst.field();
  const long cond = f.conductor();
  const Twist& twist = tower.twist();
  const int level = std::max(x.level_, y.level_);
  const Subgroup& k = tower.level(level);
  const std::vector<Elem> transversal = left_cosets(join(inst.normal_subgroup(), k)).transversal;
  const FieldElement mu(f, inst.measure(k));
  const GroupHom phi_inv = twist.phi.inverse();
  const long rho_t_inv = inverse_exponent(twist.rho_t, cond);

  std::map<long, FieldVector> out;
  for (const auto& [a, xa] : x.slices_) {
    // phi^a and rho(t)^a.
    GroupHom phi_a = GroupHom::identity(inst.group_ptr());
    for (long i = 0; i < std::abs(a); ++i) phi_a = (a > 0 ? twist.phi : phi_inv).compose(phi_a);
    const long t_exp = power_mod(a > 0 ? twist.rho_t : rho_t_inv, std::abs(a), cond);
    for (const auto& [b, yb] : y.slices_) {
      FieldVector acc = FieldVector::Constant(l.order(), FieldElement(f, 0));
      for (int g = 0; g < l.order(); ++g) {
        FieldElement sum(f, 0);
        for (Elem lp : transversal) {
          const Elem h = l.mul(g, phi_a(lp));  // l t^m . t^{-b} l' = h t^a
          const FieldElement& u = xa(h);
          if (u.is_zero()) continue;
          const FieldElement& v = yb(l.inv(lp));
          if (v.is_zero()) continue;
          const long e = cond == 1 ? 0 : (inst.rho().exponent(h) * t_exp) % cond;
          sum += u * apply_galois(e, v);
        }
        acc(g) = mu * sum;
      }
      auto it = out.find(a + b);
      if (it == out.end()) {
        out.emplace(a + b, std::move(acc));
      } else {
        it->second += acc;
      }
    }
  }
  return CovirtZElement(x.tower_, level, std::move(out), CovirtZElement::Unchecked{});
}

CovirtZElement xi(const TwistedLaurentElement& f) {
  const LevelAutomorphism& alpha = *f.alpha();
  std::map<long, FieldVector> slices;
  for (const auto& [n, a] : f.coefficients()) slices.emplace(n, alpha.level()->to_hecke(a).values());
  return CovirtZElement(alpha.tower(), alpha.level_index(), std::move(slices), CovirtZElement::Unchecked{});
}

TwistedLaurentElement xi_inv(const CovirtZElement& x, const LevelAutPtr& alpha) {
  if (x.tower() != alpha->tower()) {
    throw Error(ErrorKind::IncompatibleInstance, "element and Laurent ring live on different towers or levels");
  }
  const LevelAlgebra& level = *alpha->level();
  TwistedLaurentElement out(alpha);
  for (const auto& [n, v] : x.slices()) {
    HeckeElement s = unchecked_element(level.instance(), v, level.level());
    if (auto bad = element_violation(*level.instance(), v, level.level())) {
      throw Error(ErrorKind::IncompatibleInstance, "slice " + std::to_string(n) + " is not at the ring's level: " + *bad);
    }
    out.set(n, level.expand(s));
  }
  return out;
}

}  // namespace hecke
