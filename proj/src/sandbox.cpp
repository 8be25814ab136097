#include "hecke/sandbox.hpp"

#include <algorithm>

#include "hecke/error.hpp"

namespace hecke {

namespace {

std::string str(Elem g) { return std::to_string(g); }

}  // namespace

InstancePtr HeckeInstance::create(Subgroup n, NormalCharacter omega, RhoAction rho, Rational quotient_measure,
                                  std::string id) {
  if (!n.is_normal()) throw Error(ErrorKind::NotNormal, "N = " + n.to_string() + " is not normal");
  if (omega.domain() != n) throw Error(ErrorKind::InstanceMismatch, "omega is not defined on N");
  if (rho.group() != n.parent()) throw Error(ErrorKind::InstanceMismatch, "rho is defined on a different group");
  if (&rho.field() != &omega.field()) throw Error(ErrorKind::FieldMismatch, "rho and omega use different fields");
  if (quotient_measure <= 0) throw Error(ErrorKind::InconsistentValues, "mu(Q) must be positive");
  CharacterReport report = validate_normal_character(omega, rho);
  if (!report.ok) {
    const auto& v = report.violations.front();
    throw Error(ErrorKind::CompatibilityViolation, v.condition + ": " + v.identity + " fails; " + v.detail);
  }
  auto inst = std::shared_ptr<HeckeInstance>(new HeckeInstance());
  inst->id_ = std::move(id);
  inst->n_ = std::move(n);
  inst->omega_ = std::move(omega);
  inst->rho_ = std::move(rho);
  inst->quotient_measure_ = quotient_measure;
  return inst;
}

Rational HeckeInstance::measure(const Subgroup& k) const {
  Subgroup nk = join(n_, k);
  Rational m = quotient_measure_ * Rational(nk.order(), group().order());
  m.canonicalize();
  return m;
}

void HeckeInstance::require_admissible_class(const Subgroup& k) const {
  if (k.parent() != n_.parent()) throw Error(ErrorKind::InstanceMismatch, "level is a subgroup of another group");
  for (Elem x : k.members()) {
    if (!rho_(x).is_identity()) {
      throw Error(ErrorKind::LevelNotAdmissibleClass,
                  "K = " + k.to_string() + ": rho(" + str(x) + ") acts nontrivially on the coefficients");
    }
  }
  for (Elem x : n_.members()) {
    if (k.contains(x) && !omega_(x).is_one()) {
      throw Error(ErrorKind::LevelNotAdmissibleClass,
                  "K = " + k.to_string() + ": omega(" + str(x) + ") = " + omega_(x).to_string() + " on N cap K");
    }
  }
}

HeckeInstance::Factorisation HeckeInstance::factorise(const Subgroup& k) const {
  Factorisation f;
  f.nk = join(n_, k);
  const int order = group().order();
  f.n_part.assign(order, -1);
  f.k_part.assign(order, -1);
  for (Elem a : n_.members()) {
    for (Elem b : k.members()) {
      Elem x = group().mul(a, b);
      if (f.n_part[x] < 0) {
        f.n_part[x] = a;
        f.k_part[x] = b;
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------------------

std::optional<std::string> element_violation(const HeckeInstance& instance, const FieldVector& values,
                                             const Subgroup& level) {
  const FiniteGroup& g = instance.group();
  if (values.size() != g.order()) return "value table has the wrong length";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i).field() != nullptr && values(i).field() != &instance.field()) return "value outside the field";
  }
  const NormalCharacter& omega = instance.omega();
  for (Elem n : instance.normal_subgroup().members()) {
    for (int x = 0; x < g.order(); ++x) {
      if (values(g.mul(n, x)) != omega(n) * values(x)) {
        return "s(ng) = omega(n) s(g) fails at n = " + str(n) + ", g = " + str(x);
      }
      if (values(g.mul(x, n)) != values(x) * omega(n)) {
        return "s(gn) = s(g) omega(n) fails at n = " + str(n) + ", g = " + str(x);
      }
    }
  }
  for (Elem k : level.members()) {
    for (int x = 0; x < g.order(); ++x) {
      if (values(g.mul(k, x)) != values(x)) return "s(kg) = s(g) fails at k = " + str(k) + ", g = " + str(x);
      if (values(g.mul(x, k)) != values(x)) return "s(gk) = s(g) fails at k = " + str(k) + ", g = " + str(x);
    }
  }
  return std::nullopt;
}

HeckeElement::HeckeElement(InstancePtr instance, FieldVector values, Subgroup level)
    : instance_(std::move(instance)), values_(std::move(values)), level_(std::move(level)) {
  instance_->require_admissible_class(level_);
  for (Eigen::Index i = 0; i < values_.size(); ++i) values_(i) = values_(i).in(instance_->field());
  if (auto v = element_violation(*instance_, values_, level_)) throw Error(ErrorKind::InconsistentValues, *v);
}

HeckeElement::HeckeElement(InstancePtr instance, FieldVector values, Subgroup level, Unchecked)
    : instance_(std::move(instance)), values_(std::move(values)), level_(std::move(level)) {}

HeckeElement unchecked_element(InstancePtr instance, FieldVector values, Subgroup level) {
  return HeckeElement(std::move(instance), std::move(values), std::move(level), HeckeElement::Unchecked{});
}

HeckeElement HeckeElement::at_level(const Subgroup& k) const {
  if (!k.is_subset_of(level_)) throw Error(ErrorKind::NotNested, k.to_string() + " is not inside " + level_.to_string());
  instance_->require_admissible_class(k);
  return unchecked_element(instance_, values_, k);
}

namespace {

void require_same_instance(const HeckeElement& a, const HeckeElement& b) {
  if (a.instance() != b.instance()) throw Error(ErrorKind::InstanceMismatch, "elements of different Hecke algebras");
}

}  // namespace

HeckeElement operator+(const HeckeElement& a, const HeckeElement& b) {
  require_same_instance(a, b);
  return unchecked_element(a.instance_, a.values_ + b.values_, intersect(a.level_, b.level_));
}

HeckeElement operator-(const HeckeElement& a, const HeckeElement& b) {
  require_same_instance(a, b);
  return unchecked_element(a.instance_, a.values_ - b.values_, intersect(a.level_, b.level_));
}

HeckeElement make_element(const InstancePtr& instance, const std::vector<FieldElement>& coset_values,
                          const Subgroup& level) {
  instance->require_admissible_class(level);
  const FiniteGroup& g = instance->group();
  auto fact = instance->factorise(level);
  LeftCosets cosets = left_cosets(fact.nk);
  if (coset_values.size() != cosets.transversal.size()) {
    throw Error(ErrorKind::InconsistentValues, "expected " + std::to_string(cosets.transversal.size()) +
                                                   " coset values, got " + std::to_string(coset_values.size()));
  }
  FieldVector values(g.order());
  for (int x = 0; x < g.order(); ++x) {
    int c = cosets.coset_of[x];
    Elem t = cosets.transversal[c];
    Elem rest = g.mul(g.inv(t), x);  // = n k
    values(x) = instance->omega()(fact.n_part[rest]) * coset_values[c].in(instance->field());
  }
  if (auto v = element_violation(*instance, values, level)) {
    throw Error(ErrorKind::InconsistentValues, "coset values do not extend to a Hecke element: " + *v);
  }
  return unchecked_element(instance, std::move(values), level);
}

HeckeElement zero_element(const InstancePtr& instance, const Subgroup& level) {
  instance->require_admissible_class(level);
  FieldVector values = FieldVector::Constant(instance->group().order(), FieldElement(instance->field(), 0));
  return unchecked_element(instance, std::move(values), level);
}

HeckeElement unit_1k(const InstancePtr& instance, const Subgroup& k) {
  instance->require_admissible_class(k);
  auto fact = instance->factorise(k);
  const FieldElement inv_measure(instance->field(), Rational(1) / instance->measure(k));
  FieldVector values = FieldVector::Constant(instance->group().order(), FieldElement(instance->field(), 0));
  for (Elem x : fact.nk.members()) values(x) = inv_measure * instance->omega()(fact.n_part[x]);
  return unchecked_element(instance, std::move(values), k);
}

HeckeElement convolve_with(const HeckeElement& s, const HeckeElement& t, const Subgroup& k,
                           const std::vector<Elem>& transversal) {
  require_same_instance(s, t);
  const HeckeInstance& inst = *s.instance();
  inst.require_admissible_class(k);
  if (!k.is_subset_of(s.level()) || !k.is_subset_of(t.level())) {
    throw Error(ErrorKind::LevelNotAdmissibleClass, "K = " + k.to_string() + " is not admissible for both factors");
  }
  const FiniteGroup& g = inst.group();
  Subgroup nk = join(inst.normal_subgroup(), k);
  LeftCosets cosets = left_cosets(nk);
  std::vector<char> hit(cosets.transversal.size(), 0);
  for (Elem x : transversal) {
    if (hit[cosets.coset_of[x]]) throw Error(ErrorKind::InconsistentValues, "transversal meets a coset twice");
    hit[cosets.coset_of[x]] = 1;
  }
  if (transversal.size() != cosets.transversal.size()) {
    throw Error(ErrorKind::InconsistentValues, "transversal misses a coset of NK");
  }
  const FieldElement mu(inst.field(), inst.measure(k));
  const RhoAction& rho = inst.rho();
  FieldVector out(g.order());
  for (int x = 0; x < g.order(); ++x) {
    FieldElement acc(inst.field(), 0);
    for (Elem y : transversal) {
      Elem xy = g.mul(x, y);
      const FieldElement& a = s(xy);
      if (a.is_zero()) continue;
      const FieldElement& b = t(g.inv(y));
      if (b.is_zero()) continue;
      acc += a * rho.act(xy, b);
    }
    out(x) = mu * acc;
  }
  return unchecked_element(s.instance(), std::move(out), k);
}

HeckeElement convolve(const HeckeElement& s, const HeckeElement& t) {
  require_same_instance(s, t);
  Subgroup k = intersect(s.level(), t.level());
  Subgroup nk = join(s.instance()->normal_subgroup(), k);
  return convolve_with(s, t, k, left_cosets(nk).transversal);
}

HeckeElement scalar_act(const FieldElement& r, const HeckeElement& s) {
  const CyclotomicField& f = s.instance()->field();
  if (r.field() != nullptr && r.field() != &f) throw Error(ErrorKind::FieldMismatch, "scalar from another field");
  FieldVector values = s.values();
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = r * values(i);
  return unchecked_element(s.instance(), std::move(values), s.level());
}

std::optional<std::string> pushforward_violation(const GroupHom& phi, const HeckeInstance& source,
                                                 const HeckeInstance& target) {
  if (phi.source()->table() != source.group().table()) return "phi does not start at the source group";
  if (phi.target()->table() != target.group().table()) return "phi does not end at the target group";
  if (&source.field() != &target.field()) return "coefficient fields differ";
  std::vector<Elem> image;
  for (Elem x : source.normal_subgroup().members()) image.push_back(phi(x));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (image != target.normal_subgroup().members()) return "phi(N') != N";
  for (int x = 0; x < source.group().order(); ++x) {
    if (source.rho().exponent(x) != target.rho().exponent(phi(x))) {
      return "rho' != rho o phi at " + str(x);
    }
  }
  for (Elem x : source.normal_subgroup().members()) {
    if (source.omega()(x) != target.omega()(phi(x))) {
      return "omega'(" + str(x) + ") = " + source.omega()(x).to_string() + " but omega(phi(" + str(x) +
             ")) = " + target.omega()(phi(x)).to_string();
    }
  }
  return std::nullopt;
}

HeckeElement pushforward(const GroupHom& phi, const InstancePtr& target, const HeckeElement& s) {
  const HeckeInstance& src = *s.instance();
  if (auto v = pushforward_violation(phi, src, *target)) throw Error(ErrorKind::CompatibilityViolation, *v);
  const FiniteGroup& g = target->group();
  const Subgroup& ks = s.level();
  auto fact = src.factorise(ks);
  // For each target element y in phi(N'K'), one x in N'K' with phi(x) = y.
  std::vector<Elem> lift(g.order(), -1);
  for (Elem x : fact.nk.members())
    if (lift[phi(x)] < 0) lift[phi(x)] = x;
  std::vector<Elem> transversal = left_cosets(fact.nk).transversal;
  Subgroup k_image = phi.image(Subgroup(phi.source(), ks.members()));
  k_image = Subgroup(target->group_ptr(), k_image.members());
  target->require_admissible_class(k_image);
  Rational ratio = src.measure(ks) / target->measure(k_image);
  const FieldElement scale(target->field(), ratio);
  FieldVector out = FieldVector::Constant(g.order(), FieldElement(target->field(), 0));
  for (int y = 0; y < g.order(); ++y) {
    FieldElement acc(target->field(), 0);
    for (Elem tprime : transversal) {
      Elem rest = g.mul(g.inv(phi(tprime)), y);
      Elem x = lift[rest];
      if (x < 0) continue;
      acc += s(tprime) * target->omega()(phi(fact.n_part[x]));
    }
    out(y) = scale * acc;
  }
  return HeckeElement(target, std::move(out), k_image);
}

}  // namespace hecke
