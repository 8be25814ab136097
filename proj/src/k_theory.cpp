#include "hecke/k_theory.hpp"

#include <algorithm>
#include <numeric>

#include "hecke/error.hpp"
#include "hecke/field_roots.hpp"
#include "hecke/polynomial.hpp"

namespace hecke {

namespace {

std::string str(long x) { return std::to_string(x); }

FieldElement field_trace(const FieldElement& a, const CyclotomicField& f) {
  // Trace of multiplication by a on the power basis.
  Rational t = 0;
  for (int k = 0; k < f.degree(); ++k) t += (a * FieldElement::zeta(f, k)).in(f).coefficient(k);
  return FieldElement(f, t);
}

std::vector<Elem> generating_set(const GroupPtr& g) {
  std::vector<Elem> gens;
  std::vector<char> covered(g->order(), 0);
  covered[0] = 1;
  for (int d = 1; d < g->order(); ++d) {
    if (covered[d]) continue;
    gens.push_back(d);
    Subgroup s = Subgroup::generated(g, gens);
    for (Elem x : s.members()) covered[x] = 1;
  }
  return gens;
}

long suggested_conductor(const CrossedProduct& a) {
  const FiniteGroup& d = a.group();
  long exponent = 1;
  for (int x = 0; x < d.order(); ++x) exponent = std::lcm(exponent, static_cast<long>(d.element_order(x)));
  long w_orders = 1;
  for (int x = 0; x < d.order(); ++x) {
    for (int y = 0; y < d.order(); ++y) {
      long o = root_of_unity_order(a.w(x, y));
      if (o > 0) w_orders = std::lcm(w_orders, o);
    }
  }
  long m = std::lcm(a.field().conductor(), exponent * w_orders);
  if (m % 4 == 2) m /= 2;  // Q(zeta_2k) = Q(zeta_k) for k odd
  return m;
}

[[noreturn]] void non_split(const CrossedProduct& a, const std::string& what) {
  throw NonSplitBlockError(a.label().empty() ? what : a.label() + ": " + what, suggested_conductor(a));
}

CPElement as_element(const CrossedProduct& a, const FieldVector& v) { return a.element(v); }

// Minimal polynomial of y inside a commutative-or-not subalgebra with unit
// `unit` and dimension at most `bound`, together with the powers y^0 .. y^(deg-1).
struct MinPoly {
  FieldPoly poly;
  std::vector<FieldVector> powers;
};

MinPoly min_poly_in(const CPElement& y, const CPElement& unit, int bound) {
  const CrossedProduct& a = *y.parent();
  const Eigen::Index n = a.order();
  std::vector<CPElement> powers{unit};
  for (int i = 1; i <= bound; ++i) powers.push_back(cp_mul(powers.back(), y));
  FieldMatrix m(n, bound + 1);
  for (int i = 0; i <= bound; ++i) m.col(i) = powers[i].coefficients();
  Echelon<FieldElement> e = rref(m);
  Eigen::Index deg = e.rank();
  for (Eigen::Index i = 0; i < e.rank(); ++i) {
    if (e.pivots[i] != i) {
      deg = i;
      break;
    }
  }
  MinPoly out;
  const CyclotomicField& f = a.field();
  out.poly.assign(deg + 1, FieldElement(f, 0));
  out.poly[deg] = FieldElement(f, 1);
  for (Eigen::Index i = 0; i < deg; ++i) out.poly[i] = -e.reduced(i, deg);
  for (Eigen::Index i = 0; i < deg; ++i) out.powers.push_back(powers[i].coefficients());
  return out;
}

// mu / (x - lambda) by synthetic division.
FieldPoly deflate(const FieldPoly& mu, const FieldElement& lambda) {
  const long d = degree(mu);
  FieldPoly q(d, FieldElement(lambda.field() ? *lambda.field() : CyclotomicField::get(1), 0));
  FieldElement carry = mu[d];
  for (long i = d - 1; i >= 0; --i) {
    q[i] = carry;
    carry = mu[i] + carry * lambda;
  }
  return q;
}

// The idempotents of F[y] ~ F[x]/(mu) attached to the roots of mu in F.
std::vector<FieldVector> root_idempotents(const CyclotomicField& f, const MinPoly& mp,
                                          const std::vector<FieldElement>& roots) {
  std::vector<FieldVector> out;
  for (const auto& lambda : roots) {
    FieldPoly q = deflate(mp.poly, lambda);
    FieldElement scale = evaluate(q, lambda).inverse();
    FieldVector e = FieldVector::Constant(mp.powers[0].size(), FieldElement(f, 0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i].is_zero()) continue;
      FieldElement c = q[i] * scale;
      for (Eigen::Index k = 0; k < e.size(); ++k) {
        if (!mp.powers[i](k).is_zero()) e(k) += c * mp.powers[i](k);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

FieldMatrix independent_span(const std::vector<FieldVector>& vectors, Eigen::Index n) {
  if (vectors.empty()) return FieldMatrix(n, 0);
  FieldMatrix m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  std::vector<Eigen::Index> cols = independent_columns(m);
  FieldMatrix out(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(cols[i]);
  return out;
}

int first_nonzero(const CPElement& x) {
  for (int d = 0; d < x.parent()->order(); ++d) {
    if (!x[d].is_zero()) return d;
  }
  return -1;
}

// Descending lexicographic order on coefficient vectors.
bool fingerprint_greater(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                         const CyclotomicField& f) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    std::vector<Rational> ca = a[i].coefficients(f), cb = b[i].coefficients(f);
    for (std::size_t k = 0; k < ca.size(); ++k) {
      if (ca[k] != cb[k]) return ca[k] > cb[k];
    }
  }
  return false;
}

int isqrt(int x) {
  int r = 0;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// A rank-one idempotent below z inside A z ~ M_n(F), found by splitting
// corners f A f with eigenvalues in F until the corner is one-dimensional.
CPElement certify_matrix_block(const CrossedProduct& a, const CPElement& z, int index) {
  CPElement f = z;
  const int n = a.order();
  while (true) {
    std::vector<FieldVector> corner;
    for (int d = 0; d < n; ++d) corner.push_back(cp_mul(cp_mul(f, a.basis(d)), f).coefficients());
    FieldMatrix basis = independent_span(corner, n);
    const int dim = static_cast<int>(basis.cols());
    if (dim == 1) return f;
    std::vector<FieldVector> candidates;
    for (int j = 0; j < dim; ++j) candidates.push_back(basis.col(j));
    for (int j = 0; j < dim; ++j) {
      for (int k = j + 1; k < dim; ++k) candidates.push_back(basis.col(j) + basis.col(k));
    }
    bool split = false;
    for (const auto& c : candidates) {
      MinPoly mp = min_poly_in(as_element(a, c), f, dim);
      if (degree(mp.poly) < 2) continue;
      std::vector<FieldElement> roots = roots_in_field(a.field(), mp.poly);
      if (roots.empty()) continue;
      f = as_element(a, root_idempotents(a.field(), mp, {roots.front()}).front());
      split = true;
      break;
    }
    if (!split) non_split(a, "could not certify block " + str(index) + " as a matrix algebra over the field");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

FieldMatrix trace_gram(const CrossedProduct& a) {
  const FiniteGroup& d = a.group();
  const int n = d.order();
  const CyclotomicField& f = a.field();
  const FieldElement order(f, n);
  if (a.coefficients_central()) {
    FieldMatrix g = FieldMatrix::Constant(n, n, FieldElement(f, 0));
    for (int x = 0; x < n; ++x) g(x, d.inv(x)) = order * a.w(x, d.inv(x));
    return g;
  }
  const int deg = f.degree();
  FieldMatrix g = FieldMatrix::Constant(n * deg, n * deg, FieldElement(f, 0));
  for (int x = 0; x < n; ++x) {
    const Elem y = d.inv(x);
    for (int i = 0; i < deg; ++i) {
      for (int j = 0; j < deg; ++j) {
        FieldElement u = FieldElement::zeta(f, i) * a.act(x, FieldElement::zeta(f, j)) * a.w(x, y);
        g(x * deg + i, y * deg + j) = order * field_trace(u, f);
      }
    }
  }
  return g;
}

SemisimplicityCertificate certify_semisimple(const CrossedProduct& a) {
  SemisimplicityCertificate c;
  c.trace_field = a.coefficients_central() ? "F" : "Q";
  FieldMatrix g = trace_gram(a);
  c.gram_size = static_cast<int>(g.rows());
  c.determinant = determinant(g);
  c.nondegenerate = !c.determinant.is_zero();
  if (!c.nondegenerate) {
    FieldMatrix k = nullspace(g);
    c.witness = FieldVector(k.col(0));
  }
  return c;
}

SemisimpleDecomposition block_decompose(const CrossedProduct& a) {
  if (!a.coefficients_central()) {
    throw Error(ErrorKind::CoefficientsNotCentral,
                "block decomposition needs c_d = id for all d" + (a.label().empty() ? "" : " (" + a.label() + ")"));
  }
  SemisimplicityCertificate cert = certify_semisimple(a);
  if (!cert.nondegenerate) throw Error(ErrorKind::NotSemisimple, "trace form is degenerate");

  const FiniteGroup& d = a.group();
  const int n = d.order();
  const CyclotomicField& f = a.field();
  const CPPtr self = a.one().parent();

  // Center: x b_g = b_g x for generators g of D.
  std::vector<Elem> gens = generating_set(a.group_ptr());
  FieldMatrix eqs = FieldMatrix::Constant(std::max<Eigen::Index>(1, n * gens.size()), n, FieldElement(f, 0));
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const Elem g = gens[gi];
    for (int x = 0; x < n; ++x) {
      eqs(gi * n + d.mul(x, g), x) += a.w(x, g);
      eqs(gi * n + d.mul(g, x), x) -= a.w(g, x);
    }
  }
  SemisimpleDecomposition dec;
  dec.algebra = self;
  dec.center_basis = nullspace(eqs);
  const int zdim = static_cast<int>(dec.center_basis.cols());

  struct Component {
    CPElement unit;
    FieldMatrix zbasis;
  };
  std::vector<Component> pending{{a.one(), dec.center_basis}};
  std::vector<CPElement> finished;
  while (!pending.empty()) {
    Component c = std::move(pending.back());
    pending.pop_back();
    const int k = static_cast<int>(c.zbasis.cols());
    if (k == 1) {
      finished.push_back(c.unit);
      continue;
    }
    bool split = false;
    for (int j = 0; j < k && !split; ++j) {
      CPElement y = as_element(a, c.zbasis.col(j));
      MinPoly mp = min_poly_in(y, c.unit, k);
      if (degree(mp.poly) < 2) continue;
      std::vector<FieldElement> roots = roots_in_field(f, mp.poly);
      if (roots.empty()) continue;
      std::vector<FieldVector> idems = root_idempotents(f, mp, roots);
      FieldVector rest = c.unit.coefficients();
      for (const auto& e : idems) rest -= e;
      if (!is_zero_matrix(rest)) idems.push_back(rest);
      const bool all_lines = static_cast<long>(roots.size()) == degree(mp.poly) && degree(mp.poly) == k;
      for (const auto& e : idems) {
        CPElement ce = as_element(a, e);
        if (all_lines) {
          pending.push_back({ce, FieldMatrix(e)});
          continue;
        }
        std::vector<FieldVector> span;
        for (int i = 0; i < k; ++i) span.push_back(cp_mul(as_element(a, c.zbasis.col(i)), ce).coefficients());
        pending.push_back({ce, independent_span(span, n)});
      }
      split = true;
    }
    if (!split) {
      Rational dim = Rational(n) * c.unit[0].to_rational();
      non_split(a, "a simple block of dimension " + to_string(dim.get_num()) + " has a center of degree " + str(k) +
                       " over the field, so it is not a split matrix algebra");
    }
  }

  for (std::size_t i = 0; i < finished.size(); ++i) {
    Block b;
    b.idempotent = finished[i];
    Rational dim = Rational(n) * finished[i][0].to_rational();
    if (dim.get_den() != 1 || dim <= 0) throw Error(ErrorKind::InconsistentValues, "block dimension " + to_string(dim));
    b.dimension = static_cast<int>(dim.get_num().get_si());
    b.matrix_size = isqrt(b.dimension);
    if (b.matrix_size * b.matrix_size != b.dimension) {
      non_split(a, "a simple block has dimension " + str(b.dimension) + ", which is not a square");
    }
    const int pivot = first_nonzero(b.idempotent);
    const FieldElement inv = b.idempotent[pivot].inverse();
    for (int j = 0; j < zdim; ++j) {
      CPElement cz = cp_mul(as_element(a, dec.center_basis.col(j)), b.idempotent);
      b.fingerprint.push_back(cz[pivot] * inv);
    }
    if (b.matrix_size == 1) {
      for (int x = 0; x < n; ++x) b.character.push_back(cp_mul(a.basis(x), b.idempotent)[pivot] * inv);
      b.primitive = b.idempotent;
      b.basis = FieldMatrix(b.idempotent.coefficients());
    } else {
      std::vector<FieldVector> span;
      for (int x = 0; x < n; ++x) span.push_back(cp_mul(a.basis(x), b.idempotent).coefficients());
      b.basis = independent_span(span, n);
      if (b.basis.cols() != b.dimension) throw Error(ErrorKind::InconsistentValues, "block rank differs from its trace");
      b.primitive = certify_matrix_block(a, b.idempotent, static_cast<int>(i));
    }
    dec.blocks.push_back(std::move(b));
  }
  std::stable_sort(dec.blocks.begin(), dec.blocks.end(), [&](const Block& x, const Block& y) {
    if (x.dimension != y.dimension) return x.dimension < y.dimension;
    return fingerprint_greater(x.fingerprint, y.fingerprint, f);
  });
  return dec;
}

std::optional<std::string> decomposition_violation(const SemisimpleDecomposition& dec) {
  const CrossedProduct& a = *dec.algebra;
  CPElement total = a.zero();
  int dims = 0;
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    const Block& b = dec.blocks[i];
    const CPElement& z = b.idempotent;
    total += z;
    dims += b.dimension;
    if (cp_mul(z, z) != z) return "z_" + str(i) + " is not idempotent";
    for (int d = 0; d < a.order(); ++d) {
      if (cp_mul(z, a.basis(d)) != cp_mul(a.basis(d), z)) return "z_" + str(i) + " does not commute with b_" + str(d);
    }
    for (std::size_t j = i + 1; j < dec.blocks.size(); ++j) {
      if (!cp_mul(z, dec.blocks[j].idempotent).is_zero()) return "z_" + str(i) + " z_" + str(j) + " != 0";
    }
    if (b.matrix_size * b.matrix_size != b.dimension) return "block " + str(i) + " is not square";
    if (cp_mul(b.primitive, b.primitive) != b.primitive || cp_mul(b.primitive, z) != b.primitive) {
      return "primitive idempotent of block " + str(i) + " is not below z_" + str(i);
    }
  }
  if (total != a.one()) return "the z_i do not sum to 1";
  if (dims != a.order()) return "block dimensions do not add up to |D|";
  return std::nullopt;
}

// ---------------------------------------------------------------------------

CPMatrix cp_matrix_mul(const CPMatrix& x, const CPMatrix& y) {
  const std::size_t k = x.size();
  CPMatrix out(k);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q) {
      CPElement acc = x[p][0].parent()->zero();
      for (std::size_t r = 0; r < k; ++r) acc += cp_mul(x[p][r], y[r][q]);
      out[p].push_back(std::move(acc));
    }
  }
  return out;
}

IntegerVector k0_class(const SemisimpleDecomposition& dec, const CPMatrix& e) {
  const CrossedProduct& a = *dec.algebra;
  const std::size_t k = e.size();
  const int n = a.order();
  for (const auto& row : e) {
    if (row.size() != k) throw Error(ErrorKind::NotIdempotent, "matrix is not square");
    for (const auto& x : row) {
      if (x.parent() != dec.algebra) throw Error(ErrorKind::ParentMismatch, "entry from another algebra");
    }
  }
  if (cp_matrix_mul(e, e) != e) throw Error(ErrorKind::NotIdempotent, "e * e != e");
  IntegerVector out(dec.rank());
  for (int i = 0; i < dec.rank(); ++i) {
    const Block& b = dec.blocks[i];
    Eigen::Index r = 0;
    if (b.matrix_size == 1) {
      FieldMatrix m(k, k);
      for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = 0; q < k; ++q) {
          FieldElement v(a.field(), 0);
          for (int d = 0; d < n; ++d) {
            if (!e[p][q][d].is_zero()) v += e[p][q][d] * b.character[d];
          }
          m(p, q) = v;
        }
      }
      r = rank(m);
    } else {
      const Eigen::Index bd = b.basis.cols();
      FieldMatrix m(static_cast<Eigen::Index>(k) * n, static_cast<Eigen::Index>(k) * bd);
      for (std::size_t q = 0; q < k; ++q) {
        for (Eigen::Index j = 0; j < bd; ++j) {
          CPElement beta = as_element(a, b.basis.col(j));
          for (std::size_t p = 0; p < k; ++p) {
            m.block(p * n, q * bd + j, n, 1) = cp_mul(e[p][q], beta).coefficients();
          }
        }
      }
      r = rank(m);
      if (r % b.matrix_size != 0) throw Error(ErrorKind::InconsistentValues, "rank not divisible by the block size");
      r /= b.matrix_size;
    }
    out(i) = Integer(static_cast<long>(r));
  }
  return out;
}

IntegerVector k0_class(const SemisimpleDecomposition& dec, const CPElement& e) { return k0_class(dec, CPMatrix{{e}}); }

IntegerMatrix induced_k0(const SemisimpleDecomposition& source, const SemisimpleDecomposition& target,
                         const FieldMatrix& map) {
  if (map.rows() != target.algebra->order() || map.cols() != source.algebra->order()) {
    throw Error(ErrorKind::InconsistentValues, "map has the wrong shape");
  }
  IntegerMatrix out(target.rank(), source.rank());
  for (int i = 0; i < source.rank(); ++i) {
    CPElement image = target.algebra->element(map * source.blocks[i].primitive.coefficients());
    out.col(i) = k0_class(target, image);
  }
  return out;
}

IntegerMatrix induced_k0(const SemisimpleDecomposition& coarse, const SemisimpleDecomposition& fine,
                         const LevelEmbedding& f) {
  if (coarse.algebra != f.coarse()->algebra() || fine.algebra != f.fine()->algebra()) {
    throw Error(ErrorKind::ParentMismatch, "decompositions do not match the embedding");
  }
  return induced_k0(coarse, fine, f.matrix());
}

IntegerMatrix aut_k0(const SemisimpleDecomposition& dec, const LevelAutomorphism& alpha) {
  if (alpha.algebra() != dec.algebra) throw Error(ErrorKind::ParentMismatch, "automorphism of another algebra");
  const int r = dec.rank();
  IntegerMatrix p = IntegerMatrix::Zero(r, r);
  std::vector<char> hit(r, 0);
  for (int i = 0; i < r; ++i) {
    CPElement image = alpha(dec.blocks[i].idempotent);
    int target = -1;
    for (int j = 0; j < r; ++j) {
      if (dec.blocks[j].idempotent == image) {
        target = j;
        break;
      }
    }
    if (target < 0 || hit[target]) {
      throw Error(ErrorKind::NotPermutation, "alpha(z_" + str(i) + ") is not another central idempotent");
    }
    hit[target] = 1;
    p(target, i) = 1;
  }
  return p;
}

std::vector<std::vector<int>> permutation_orbits(const IntegerMatrix& p) {
  const int r = static_cast<int>(p.rows());
  std::vector<int> next(r, -1);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (p(j, i) != 0) next[i] = j;
    }
    if (next[i] < 0) throw Error(ErrorKind::NotPermutation, "column " + str(i) + " is zero");
  }
  std::vector<char> seen(r, 0);
  std::vector<std::vector<int>> orbits;
  for (int i = 0; i < r; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (int j = i; !seen[j]; j = next[j]) {
      seen[j] = 1;
      orbit.push_back(j);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// ---------------------------------------------------------------------------

DecompositionPtr TowerK0::decomposition(int level) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(level);
    if (it != cache_.end()) return it->second;
  }
  LevelPtr lv = tower_->level_algebra(level);
  DecompositionPtr dec;
  try {
    dec = std::make_shared<const SemisimpleDecomposition>(block_decompose(*lv->algebra()));
  } catch (const NonSplitBlockError& e) {
    throw NonSplitBlockError("level " + str(level) + ": " + e.detail(), e.suggested_conductor());
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(level, dec).first->second;
}

void TowerK0::adopt(int level, DecompositionPtr dec) const {
  std::lock_guard<std::mutex> lock(mutex_);
  cache_[level] = std::move(dec);
}

int ColimitK0::total_rank() const {
  Eigen::Index s = 0;
  for (auto r : summand_ranks) s += r;
  return static_cast<int>(s);
}

ColimitK0 colim_k0(const TowerK0& tk, int depth) {
  const TowerSpec& tower = *tk.tower();
  if (depth < 0 || depth > tower.depth()) throw Error(ErrorKind::NotNested, "depth " + str(depth) + " out of range");
  ColimitK0 out;
  out.depth = depth;
  for (int i = 0; i <= depth; ++i) out.level_ranks.push_back(tk.decomposition(i)->rank());
  out.summand_ranks.push_back(out.level_ranks[0]);
  for (int i = 0; i < depth; ++i) {
    ColimitStep step;
    step.from = i;
    step.map = induced_k0(*tk.decomposition(i), *tk.decomposition(i + 1), tower.embedding(i));
    step.snf = smith_normal_form(step.map);
    step.left_inverse = integer_left_inverse(step.map);
    step.cokernel = cokernel(step.snf);
    if (!step.left_inverse) out.all_split = false;
    if (!step.cokernel.torsion.empty()) out.torsion_free = false;
    out.summand_ranks.push_back(step.cokernel.free_rank);
    out.steps.push_back(std::move(step));
  }
  return out;
}

WangResult wang_assemble(const TowerK0& tk, int depth) {
  const TowerSpec& tower = *tk.tower();
  tower.twist();
  if (depth < 0 || depth > tower.depth()) throw Error(ErrorKind::NotNested, "depth " + str(depth) + " out of range");
  WangResult out;
  out.negative.reason =
      "the level algebras are semisimple, hence regular, so K_n of each level and of the colimit vanish for n <= -1; "
      "the Wang sequence then gives K_n(H(G)) = 0 for n <= -1";
  IntegerMatrix previous;
  for (int n = 0; n <= depth; ++n) {
    WangDepth w;
    w.depth = n;
    DecompositionPtr dec = tk.decomposition(n);
    w.level_rank = dec->rank();
    LevelAutomorphism alpha(tk.tower(), n);
    w.k0_phi_inverse = aut_k0(*dec, alpha.inverse());
    IntegerMatrix diff = integer_identity(w.level_rank) - w.k0_phi_inverse;
    w.snf = smith_normal_form(diff);
    w.k0 = cokernel(w.snf);
    w.boundary_rank = w.level_rank - w.snf.rank();
    w.orbits = permutation_orbits(w.k0_phi_inverse);
    if (n > 0) {
      IntegerMatrix m = induced_k0(*tk.decomposition(n - 1), *dec, tower.embedding(n - 1));
      w.compatible_with_previous = m * previous == w.k0_phi_inverse * m;
    }
    if (!w.k0.torsion.empty()) out.torsion_free = false;
    if (w.k0.free_rank + w.snf.rank() != w.level_rank) out.bookkeeping_ok = false;
    out.new_orbits.push_back(static_cast<Eigen::Index>(w.orbits.size()) -
                             (n == 0 ? 0 : static_cast<Eigen::Index>(out.depths.back().orbits.size())));
    previous = w.k0_phi_inverse;
    out.depths.push_back(std::move(w));
  }
  return out;
}

}  // namespace hecke
