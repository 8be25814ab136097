#include "hecke/crossed_product.hpp"

#include <numeric>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

std::string str(Elem g) { return std::to_string(g); }

FieldVector zeros(const CyclotomicField& f, Eigen::Index n) { return FieldVector::Constant(n, FieldElement(f, 0)); }

void require_parent(const CPElement& a, const CPElement& b) {
  if (a.parent() != b.parent()) throw Error(ErrorKind::ParentMismatch, "elements of different crossed products");
}

long inverse_mod(long k, long m) {
  for (long j = 0; j < m; ++j) {
    if ((k * j) % m == 1 % m) return j;
  }
  throw Error(ErrorKind::NotAUnit, std::to_string(k) + " is not a unit mod " + std::to_string(m));
}

}  // namespace

CPPtr CrossedProduct::create(GroupPtr d, const CyclotomicField& field, FieldMatrix w, std::vector<long> c_exponents,
                             std::vector<Elem> section, std::string label) {
  const int n = d->order();
  if (w.rows() != n || w.cols() != n) throw Error(ErrorKind::InconsistentValues, "w must be a |D| x |D| table");
  if (static_cast<int>(c_exponents.size()) != n) throw Error(ErrorKind::InconsistentValues, "c needs one entry per d");
  if (!section.empty() && static_cast<int>(section.size()) != n) {
    throw Error(ErrorKind::InconsistentValues, "section needs one entry per d");
  }
  const long m = field.conductor();
  for (auto& k : c_exponents) {
    k = ((k % m) + m) % m;
    if (std::gcd(k, m) != 1 && m > 1) throw Error(ErrorKind::NotAUnit, "c exponent " + std::to_string(k));
    if (m == 1) k = 0;
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (w(x, y).field() != nullptr && w(x, y).field() != &field) {
        throw Error(ErrorKind::FieldMismatch, "w(" + str(x) + ", " + str(y) + ") lies in another field");
      }
      w(x, y) = w(x, y).in(field);
      if (w(x, y).is_zero()) {
        throw Error(ErrorKind::InconsistentValues, "w(" + str(x) + ", " + str(y) + ") is not a unit");
      }
    }
  }
  auto a = std::shared_ptr<CrossedProduct>(new CrossedProduct());
  a->d_ = std::move(d);
  a->field_ = &field;
  a->w_ = std::move(w);
  a->c_ = std::move(c_exponents);
  a->section_ = std::move(section);
  a->label_ = std::move(label);
  if (auto v = structure_violation(*a)) throw Error(ErrorKind::InconsistentValues, *v);
  return a;
}

bool CrossedProduct::coefficients_central() const {
  for (long k : c_) {
    if (k != 1 % field_->conductor()) return false;
  }
  return true;
}

CPElement CrossedProduct::basis(Elem d) const {
  FieldVector v = zeros(*field_, order());
  v(d) = FieldElement(*field_, 1);
  return CPElement(shared_from_this(), std::move(v));
}

CPElement CrossedProduct::one() const { return basis(0); }
CPElement CrossedProduct::zero() const { return CPElement(shared_from_this(), zeros(*field_, order())); }

CPElement CrossedProduct::scalar(const FieldElement& r) const {
  FieldVector v = zeros(*field_, order());
  v(0) = r.in(*field_);
  return CPElement(shared_from_this(), std::move(v));
}

CPElement CrossedProduct::element(FieldVector coefficients) const {
  return CPElement(shared_from_this(), std::move(coefficients));
}

std::optional<std::string> structure_violation(const CrossedProduct& a) {
  const FiniteGroup& d = a.group();
  const int n = d.order();
  const long m = a.field().conductor();
  if (a.c_exponent(0) != 1 % m) return "c_e is not the identity";
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if ((a.c_exponent(x) * a.c_exponent(y)) % m != a.c_exponent(d.mul(x, y)) % m) {
        return "c_x c_y = c_xy fails at x = " + str(x) + ", y = " + str(y);
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    if (!a.w(0, x).is_one() || !a.w(x, 0).is_one()) return "b_e is not a two-sided unit: w(e, " + str(x) + ") != 1";
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const FieldElement wxy = a.w(x, y);
      const Elem xy = d.mul(x, y);
      for (int z = 0; z < n; ++z) {
        if (wxy * a.w(xy, z) != a.act(x, a.w(y, z)) * a.w(x, d.mul(y, z))) {
          return "(b_x b_y) b_z = b_x (b_y b_z) fails at x = " + str(x) + ", y = " + str(y) + ", z = " + str(z);
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

CPElement::CPElement(CPPtr parent, FieldVector coefficients) : parent_(std::move(parent)), coeffs_(std::move(coefficients)) {
  const CyclotomicField& f = parent_->field();
  if (coeffs_.size() != parent_->order()) throw Error(ErrorKind::InconsistentValues, "coefficient table has the wrong length");
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_(i).field() != nullptr && coeffs_(i).field() != &f) {
      throw Error(ErrorKind::FieldMismatch, "coefficient outside the field");
    }
    coeffs_(i) = coeffs_(i).in(f);
  }
}

CPElement& CPElement::operator+=(const CPElement& other) {
  require_parent(*this, other);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) += other.coeffs_(i);
  return *this;
}

CPElement& CPElement::operator-=(const CPElement& other) {
  require_parent(*this, other);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) -= other.coeffs_(i);
  return *this;
}

CPElement CPElement::operator-() const {
  CPElement out = *this;
  for (Eigen::Index i = 0; i < out.coeffs_.size(); ++i) out.coeffs_(i) = -out.coeffs_(i);
  return out;
}

CPElement operator*(const FieldElement& r, const CPElement& x) {
  CPElement out = x;
  const FieldElement s = r.in(x.parent_->field());
  for (Eigen::Index i = 0; i < out.coeffs_.size(); ++i) out.coeffs_(i) = s * out.coeffs_(i);
  return out;
}

CPElement operator*(const CPElement& x, const CPElement& y) { return cp_mul(x, y); }

bool operator==(const CPElement& a, const CPElement& b) { return a.parent_ == b.parent_ && a.coeffs_ == b.coeffs_; }

std::string CPElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index d = 0; d < coeffs_.size(); ++d) {
    if (coeffs_(d).is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_(d).to_string() << ")*b" << d;
  }
  if (first) os << "0";
  return os.str();
}

CPElement cp_mul(const CPElement& x, const CPElement& y) {
  require_parent(x, y);
  const CrossedProduct& a = *x.parent();
  const FiniteGroup& d = a.group();
  const int n = d.order();
  FieldVector out = zeros(a.field(), n);
  for (int p = 0; p < n; ++p) {
    const FieldElement& xp = x[p];
    if (xp.is_zero()) continue;
    for (int q = 0; q < n; ++q) {
      const FieldElement& yq = y[q];
      if (yq.is_zero()) continue;
      out(d.mul(p, q)) += xp * a.act(p, yq) * a.w(p, q);
    }
  }
  return CPElement(x.parent(), std::move(out));
}

CPElement basis_inverse(const CrossedProduct& a, Elem d) {
  const Elem di = a.group().inv(d);
  const long m = a.field().conductor();
  const long cinv = m == 1 ? 0 : inverse_mod(a.c_exponent(d), m);
  CPElement out = a.zero();
  FieldVector v = out.coefficients();
  v(di) = apply_galois(cinv, a.w(d, di).inverse());
  return a.element(std::move(v));
}

FieldVector left_from_right_coords(const CrossedProduct& a, const FieldVector& right) {
  FieldVector out(right.size());
  for (Eigen::Index d = 0; d < right.size(); ++d) out(d) = a.act(static_cast<Elem>(d), right(d));
  return out;
}

FieldVector right_from_left_coords(const CrossedProduct& a, const FieldVector& left) {
  const long m = a.field().conductor();
  FieldVector out(left.size());
  for (Eigen::Index d = 0; d < left.size(); ++d) {
    const long k = m == 1 ? 0 : inverse_mod(a.c_exponent(static_cast<Elem>(d)), m);
    out(d) = apply_galois(k, left(d));
  }
  return out;
}

FieldMatrix left_multiplication_right_coords(const CPElement& x) {
  const CrossedProduct& a = *x.parent();
  const FiniteGroup& d = a.group();
  const int n = d.order();
  const long m = a.field().conductor();
  FieldMatrix out = FieldMatrix::Constant(n, n, FieldElement(a.field(), 0));
  for (int p = 0; p < n; ++p) {
    if (x[p].is_zero()) continue;
    for (int q = 0; q < n; ++q) {
      const Elem pq = d.mul(p, q);
      const long k = m == 1 ? 0 : inverse_mod(a.c_exponent(pq), m);
      out(pq, q) += apply_galois(k, x[p] * a.w(p, q));
    }
  }
  return out;
}

std::optional<CPElement> cp_inverse(const CPElement& x) {
  const CrossedProduct& a = *x.parent();
  FieldMatrix l = left_multiplication_right_coords(x);
  FieldVector one = right_from_left_coords(a, a.one().coefficients());
  auto sol = solve(l, one);
  if (!sol) return std::nullopt;
  CPElement y = a.element(left_from_right_coords(a, *sol));
  if (cp_mul(x, y) != a.one() || cp_mul(y, x) != a.one()) return std::nullopt;
  return y;
}

// ---------------------------------------------------------------------------

LevelPtr build_level(const InstancePtr& instance, const Subgroup& k, std::vector<Elem> section) {
  if (k.parent() != instance->group_ptr()) throw Error(ErrorKind::InstanceMismatch, "level is a subgroup of another group");
  if (!k.is_normal()) throw Error(ErrorKind::NotNormal, "K = " + k.to_string() + " is not normal");
  instance->require_admissible_class(k);
  const FiniteGroup& g = instance->group();
  const CyclotomicField& f = instance->field();
  const NormalCharacter& omega = instance->omega();

  // omega(n) must not depend on how an element of NK is written as nk.
  std::vector<FieldElement> seen(g.order());
  std::vector<char> has(g.order(), 0);
  for (Elem n : instance->normal_subgroup().members()) {
    for (Elem kk : k.members()) {
      Elem x = g.mul(n, kk);
      if (!has[x]) {
        has[x] = 1;
        seen[x] = omega(n);
      } else if (seen[x] != omega(n)) {
        throw Error(ErrorKind::WellDefinednessFailure,
                    "omega(n) depends on the factorisation of " + str(x) + " = n k (K = " + k.to_string() + ")");
      }
    }
  }

  auto fact = instance->factorise(k);
  Quotient q = quotient(fact.nk);
  const int nd = q.group->order();
  if (section.empty()) {
    section = q.transversal;
  } else {
    if (static_cast<int>(section.size()) != nd) throw Error(ErrorKind::InconsistentValues, "section has the wrong length");
    if (section[0] != 0) throw Error(ErrorKind::InconsistentValues, "section must send e to e");
    for (int d = 0; d < nd; ++d) {
      if (section[d] < 0 || section[d] >= g.order() || q.projection(section[d]) != d) {
        throw Error(ErrorKind::InconsistentValues, "section(" + str(d) + ") = " + str(section[d]) + " is not in coset " + str(d));
      }
    }
  }

  FieldMatrix w(nd, nd);
  for (int d1 = 0; d1 < nd; ++d1) {
    for (int d2 = 0; d2 < nd; ++d2) {
      Elem x = g.mul(g.mul(section[q.group->mul(d1, d2)], g.inv(section[d2])), g.inv(section[d1]));
      w(d1, d2) = omega(fact.n_part[x]);
    }
  }
  std::vector<long> c(nd);
  for (int d = 0; d < nd; ++d) c[d] = instance->rho().exponent(section[d]);

  auto level = std::shared_ptr<LevelAlgebra>(new LevelAlgebra());
  level->instance_ = instance;
  level->level_ = k;
  level->measure_ = instance->measure(k);
  std::string label = instance->id().empty() ? "level " + k.to_string() : instance->id() + " level " + k.to_string();
  level->algebra_ = CrossedProduct::create(q.group, f, std::move(w), std::move(c), section, std::move(label));

  const FieldElement inv_measure(f, Rational(1) / level->measure_);
  for (int d = 0; d < nd; ++d) {
    FieldVector values = zeros(f, g.order());
    for (int x = 0; x < g.order(); ++x) {
      if (q.projection(x) != d) continue;
      Elem rest = g.mul(x, g.inv(section[d]));
      values(x) = inv_measure * omega(fact.n_part[rest]);
    }
    level->basis_.push_back(HeckeElement(instance, std::move(values), k));
  }
  level->quotient_ = std::move(q);
  return level;
}

CPElement LevelAlgebra::expand(const HeckeElement& s) const {
  if (s.instance() != instance_) throw Error(ErrorKind::InstanceMismatch, "element of another Hecke algebra");
  const CyclotomicField& f = instance_->field();
  const auto& section = algebra_->section();
  const FieldElement mu(f, measure_);
  FieldVector coeffs(algebra_->order());
  for (int d = 0; d < algebra_->order(); ++d) coeffs(d) = mu * s(section[d]);
  CPElement x = algebra_->element(std::move(coeffs));
  if (to_hecke(x).values() != s.values()) {
    throw Error(ErrorKind::InconsistentValues, "function does not lie in H(G//K) for K = " + level_.to_string());
  }
  return x;
}

HeckeElement LevelAlgebra::to_hecke(const CPElement& x) const {
  if (x.parent() != algebra_) throw Error(ErrorKind::ParentMismatch, "element of another crossed product");
  const FiniteGroup& g = instance_->group();
  FieldVector values(g.order());
  for (int y = 0; y < g.order(); ++y) {
    Elem d = quotient_.projection(y);
    values(y) = x[d] * basis_[d](y);
  }
  return unchecked_element(instance_, std::move(values), level_);
}

IsoReport iso_check(const LevelAlgebra& level) {
  IsoReport report;
  const CrossedProduct& a = *level.algebra();
  const CyclotomicField& f = a.field();
  const int n = a.order();
  const auto& section = a.section();
  // Basis property: b_d is supported on its own coset and nonzero there.
  for (int d = 0; d < n; ++d) {
    const HeckeElement& b = level.basis_function(d);
    if (b(section[d]).is_zero()) report.basis_independent = false;
    for (int y = 0; y < level.instance()->group().order(); ++y) {
      if (level.d_quotient().projection(y) != d && !b(y).is_zero()) report.basis_independent = false;
    }
  }
  std::vector<FieldElement> scalars{FieldElement(f, 1)};
  if (f.degree() > 1) scalars.push_back(FieldElement::zeta(f));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (const auto& r : scalars) {
        ++report.products_checked;
        CPElement expected = cp_mul(a.basis(x), r * a.basis(y));
        HeckeElement direct = convolve(level.basis_function(x), scalar_act(r, level.basis_function(y)));
        std::string actual;
        bool match = false;
        try {
          CPElement got = level.expand(direct);
          match = got == expected;
          actual = got.to_string();
        } catch (const Error& e) {
          actual = e.what();
        }
        if (!match) {
          report.ok = false;
          report.mismatches.push_back({x, y, r.to_string(), expected.to_string(), actual});
        }
      }
    }
  }
  if (!report.basis_independent) report.ok = false;
  return report;
}

// ---------------------------------------------------------------------------

CPElement LevelEmbedding::operator()(const CPElement& x) const {
  if (x.parent() != coarse_->algebra()) throw Error(ErrorKind::ParentMismatch, "element of another level");
  FieldVector v = matrix_ * x.coefficients();
  return fine_->algebra()->element(std::move(v));
}

CPElement LevelEmbedding::retract(const CPElement& x) const {
  if (x.parent() != fine_->algebra()) throw Error(ErrorKind::ParentMismatch, "element of another level");
  FieldVector v = retraction_ * x.coefficients();
  return coarse_->algebra()->element(std::move(v));
}

LevelEmbedding embed_level(const LevelPtr& coarse, const LevelPtr& fine) {
  if (coarse->instance() != fine->instance()) throw Error(ErrorKind::InstanceMismatch, "levels of different instances");
  if (!fine->level().is_subset_of(coarse->level())) {
    throw Error(ErrorKind::NotNested, fine->level().to_string() + " is not inside " + coarse->level().to_string());
  }
  LevelEmbedding f;
  f.coarse_ = coarse;
  f.fine_ = fine;
  const int nc = coarse->algebra()->order();
  const int nf = fine->algebra()->order();
  f.matrix_.resize(nf, nc);
  for (int d = 0; d < nc; ++d) {
    HeckeElement b = coarse->basis_function(d).at_level(fine->level());
    f.matrix_.col(d) = fine->expand(b).coefficients();
  }
  // e b'_j e for the image e of the unit, pulled back through the embedding.
  const CrossedProduct& af = *fine->algebra();
  CPElement e = f(coarse->algebra()->one());
  f.retraction_.resize(nc, nf);
  for (int j = 0; j < nf; ++j) {
    CPElement corner = cp_mul(cp_mul(e, af.basis(j)), e);
    auto sol = solve(f.matrix_, corner.coefficients());
    if (!sol) throw Error(ErrorKind::InconsistentValues, "corner element outside the image of the embedding");
    f.retraction_.col(j) = *sol;
  }
  return f;
}

LevelEmbedding compose(const LevelEmbedding& outer, const LevelEmbedding& inner) {
  if (inner.fine() != outer.coarse()) throw Error(ErrorKind::NotNested, "embeddings do not compose");
  LevelEmbedding f;
  f.coarse_ = inner.coarse();
  f.fine_ = outer.fine();
  f.matrix_ = outer.matrix() * inner.matrix();
  f.retraction_ = inner.retraction_ * outer.retraction_;
  return f;
}

EmbeddingReport verify_embedding(const LevelEmbedding& f) {
  EmbeddingReport r;
  const CrossedProduct& ac = *f.coarse()->algebra();
  const CrossedProduct& af = *f.fine()->algebra();
  const CyclotomicField& field = ac.field();
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag && r.first_failure.empty()) r.first_failure = what;
    flag = false;
  };
  std::vector<FieldElement> scalars{FieldElement(field, 1)};
  if (field.degree() > 1) scalars.push_back(FieldElement::zeta(field));

  std::vector<CPElement> images;
  for (int d = 0; d < ac.order(); ++d) images.push_back(f(ac.basis(d)));
  for (int x = 0; x < ac.order(); ++x) {
    for (int y = 0; y < ac.order(); ++y) {
      for (const auto& s : scalars) {
        if (cp_mul(images[x], s * images[y]) != f(cp_mul(ac.basis(x), s * ac.basis(y)))) {
          fail(r.multiplicative, "f(b_x) f(r b_y) != f(b_x r b_y) at x = " + str(x) + ", y = " + str(y));
        }
      }
    }
  }

  const CPElement e = f(ac.one());
  const CPElement e2 = af.one() - e;
  std::vector<CPElement> probes;
  for (int j = 0; j < af.order(); ++j) probes.push_back(af.basis(j));
  for (const auto& s : scalars) probes.push_back(af.scalar(s));
  auto central_idempotent = [&](const CPElement& idem) {
    if (cp_mul(idem, idem) != idem) return false;
    for (const auto& p : probes) {
      if (cp_mul(idem, p) != cp_mul(p, idem)) return false;
    }
    return true;
  };
  if (!central_idempotent(e)) fail(r.unit_central_idempotent, "image of 1_K is not a central idempotent");
  if (!central_idempotent(e2)) fail(r.complement_central_idempotent, "1_K' - 1_K is not a central idempotent");
  if (!cp_mul(e, e2).is_zero() || !cp_mul(e2, e).is_zero()) fail(r.orthogonal, "1_K (1_K' - 1_K) != 0");

  for (int j = 0; j < af.order(); ++j) {
    CPElement corner = cp_mul(cp_mul(e, af.basis(j)), e);
    if (!solve(f.matrix(), corner.coefficients())) {
      fail(r.corner_is_image, "e b'_" + str(j) + " e is not in the image");
    }
  }
  for (int d = 0; d < ac.order(); ++d) {
    if (cp_mul(cp_mul(e, images[d]), e) != images[d]) fail(r.corner_is_image, "image not inside the corner");
    if (f.retract(images[d]) != ac.basis(d)) {
      fail(r.retraction_is_left_inverse, "retract(f(b_" + str(d) + ")) != b_" + str(d));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// An element of A (x)_F M in the model sum_d b_d (x) m_d, M = A^copies.
using Tensor = std::vector<std::vector<CPElement>>;  // [d][copy]

Tensor act_on_tensor(const CrossedProduct& a, const FieldElement& r, Elem d0, const Tensor& t) {
  const FiniteGroup& g = a.group();
  const long m = a.field().conductor();
  Tensor out(t.size());
  for (int d = 0; d < a.order(); ++d) {
    const Elem dd = g.mul(d0, d);
    const long k = m == 1 ? 0 : inverse_mod(a.c_exponent(dd), m);
    FieldElement scalar = apply_galois(k, r.in(a.field()) * a.w(d0, d));
    std::vector<CPElement> moved;
    for (const auto& md : t[d]) moved.push_back(cp_mul(a.scalar(scalar), md));
    out[dd] = std::move(moved);
  }
  return out;
}

}  // namespace

MaschkeReport maschke_section(const CrossedProduct& a, int copies) {
  MaschkeReport report;
  const int n = a.order();
  const CyclotomicField& f = a.field();
  const FieldElement inv_order(f, Rational(1, n));
  std::vector<CPElement> inverses;
  for (int d = 0; d < n; ++d) inverses.push_back(basis_inverse(a, d));

  auto section = [&](const std::vector<CPElement>& x) {
    Tensor t(n);
    for (int d = 0; d < n; ++d) {
      for (const auto& xc : x) t[d].push_back(inv_order * cp_mul(inverses[d], xc));
    }
    return t;
  };
  auto project = [&](const Tensor& t) {
    std::vector<CPElement> y(copies, a.zero());
    for (int d = 0; d < n; ++d) {
      for (int c = 0; c < copies; ++c) y[c] += cp_mul(a.basis(d), t[d][c]);
    }
    return y;
  };
  auto fail = [&](const std::string& what) {
    if (report.ok) report.first_failure = what;
    report.ok = false;
  };

  for (int d = 0; d < n; ++d) {
    if (cp_mul(a.basis(d), inverses[d]) != a.one() || cp_mul(inverses[d], a.basis(d)) != a.one()) {
      fail("b_" + str(d) + " times its inverse is not 1");
    }
  }

  // Algebra generators: the scalar zeta and b_d for a generating set of D.
  std::vector<std::pair<FieldElement, Elem>> generators;
  if (f.degree() > 1) generators.push_back({FieldElement::zeta(f), 0});
  {
    std::vector<Elem> gens;
    std::vector<char> covered(n, 0);
    covered[0] = 1;
    for (int d = 1; d < n; ++d) {
      if (covered[d]) continue;
      gens.push_back(d);
      Subgroup s = Subgroup::generated(a.group_ptr(), gens);
      for (Elem x : s.members()) covered[x] = 1;
    }
    for (Elem d : gens) generators.push_back({FieldElement(f, 1), d});
  }

  std::vector<FieldElement> scalars{FieldElement(f, 1)};
  if (f.degree() > 1) scalars.push_back(FieldElement::zeta(f));
  for (int c = 0; c < copies; ++c) {
    for (int d = 0; d < n; ++d) {
      for (const auto& s : scalars) {
        std::vector<CPElement> x(copies, a.zero());
        x[c] = s * a.basis(d);
        ++report.vectors_checked;
        if (project(section(x)) != x) fail("p(i(x)) != x for x = " + x[c].to_string() + " in copy " + str(c));
        for (const auto& [r, g] : generators) {
          ++report.equivariance_checks;
          std::vector<CPElement> ax;
          CPElement gen = r * a.basis(g);
          for (const auto& xc : x) ax.push_back(cp_mul(gen, xc));
          if (section(ax) != act_on_tensor(a, r, g, section(x))) {
            fail("i(a x) != a i(x) for a = " + gen.to_string() + ", x = " + x[c].to_string());
          }
        }
      }
    }
  }
  return report;
}

}  // namespace hecke
