#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hecke/json_io.hpp"
#include "hecke/tower.hpp"

using namespace hecke;
using fixture::Q;
using fixture::Qz;

namespace {

std::vector<LevelPtr> corpus_levels() {
  std::vector<LevelPtr> out;
  GroupPtr z4 = FiniteGroup::cyclic(4);
  InstancePtr plain = fixture::plain(z4, Qz(4));
  for (const Subgroup& k : {Subgroup::whole(z4), Subgroup(z4, {0, 2}), Subgroup::trivial(z4)}) out.push_back(build_level(plain, k));
  InstancePtr c = fixture::example_c(Qz(4));
  out.push_back(build_level(c, Subgroup::trivial(c->group_ptr())));
  InstancePtr cq = fixture::example_c(Q());
  out.push_back(build_level(cq, Subgroup::trivial(cq->group_ptr())));
  InstancePtr gal = fixture::galois_z4();
  out.push_back(build_level(gal, Subgroup(gal->group_ptr(), {0, 2})));
  out.push_back(build_level(gal, Subgroup::trivial(gal->group_ptr())));
  InstancePtr s3 = fixture::plain(FiniteGroup::symmetric(3), Qz(3));
  out.push_back(build_level(s3, Subgroup::trivial(s3->group_ptr())));
  out.push_back(build_level(s3, Subgroup(s3->group_ptr(), {0, 3, 4})));
  TowerPtr t = cyclic_tower(3, 2, 9);
  for (int n = 0; n <= 2; ++n) out.push_back(t->level_algebra(n));
  return out;
}

std::vector<Elem> largest_section(const Quotient& q) {
  std::vector<Elem> out(q.group->order(), -1);
  for (Elem g = 0; g < q.projection.source()->order(); ++g) out[q.projection(g)] = std::max(out[q.projection(g)], g);
  out[0] = 0;
  return out;
}

}  // namespace

TEST_CASE("plain group algebra has trivial cocycle and action") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  LevelPtr lv = build_level(fixture::plain(z4, Q()), Subgroup::trivial(z4));
  const CrossedProduct& a = *lv->algebra();
  CHECK(a.order() == 4);
  for (Elem x = 0; x < 4; ++x) {
    CHECK(a.c(x).is_identity());
    for (Elem y = 0; y < 4; ++y) CHECK(a.w(x, y) == FieldElement(Q(), 1));
  }
  CHECK(a.coefficients_central());
}

TEST_CASE("Example C is Q[x]/(x^2 + 1)") {
  InstancePtr c = fixture::example_c(Q());
  LevelPtr lv = build_level(c, Subgroup::trivial(c->group_ptr()));
  const CPPtr& a = lv->algebra();
  REQUIRE(a->order() == 2);
  CHECK(a->w(1, 1) == FieldElement(Q(), -1));
  CHECK(a->w(0, 0) == FieldElement(Q(), 1));
  CHECK(a->w(0, 1) == FieldElement(Q(), 1));
  CHECK(a->w(1, 0) == FieldElement(Q(), 1));
  CHECK(a->basis(1) * a->basis(1) == -a->basis(0));
  CHECK(lv->basis_function(1).values() == fixture::table(Q(), {0, 2, 0, -2}));
  CHECK(lv->to_hecke(a->one()) == unit_1k(c, Subgroup::trivial(c->group_ptr())));
}

TEST_CASE("cyclic tower level has D = Z/3 and trivial cocycle") {
  TowerPtr t = cyclic_tower(3, 2);
  const CPPtr a = t->level_algebra(1)->algebra();
  REQUIRE(a->order() == 3);
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y) CHECK(a->w(x, y) == FieldElement(Q(), 1));
}

TEST_CASE("the unit b_e") {
  std::mt19937 rng(1);
  for (const LevelPtr& lv : corpus_levels()) {
    const CPPtr& a = lv->algebra();
    CPElement x = fixture::random_cp(rng, a);
    CHECK(a->basis(0) * x == x);
    CHECK(x * a->basis(0) == x);
    CHECK(a->one() == a->basis(0));
  }
}

TEST_CASE("Galois-twisted product") {
  InstancePtr gal = fixture::galois_z4();
  LevelPtr lv = build_level(gal, Subgroup(gal->group_ptr(), {0, 2}));
  const CPPtr& a = lv->algebra();
  REQUIRE(a->order() == 2);
  CHECK_FALSE(a->coefficients_central());
  const FieldElement z = FieldElement::zeta(Qz(4));
  CHECK(a->basis(1) * (z * a->basis(0)) == (-z) * a->basis(1));
}

TEST_CASE("iso_check on every corpus level, with both sections") {
  for (const LevelPtr& lv : corpus_levels()) {
    IsoReport r = iso_check(*lv);
    CHECK(r.ok);
    CHECK(r.basis_independent);
    CHECK(r.mismatches.empty());
    CHECK(r.products_checked >= lv->algebra()->order() * lv->algebra()->order());
    LevelPtr other = build_level(lv->instance(), lv->level(), largest_section(lv->d_quotient()));
    IsoReport r2 = iso_check(*other);
    CHECK(r2.ok);
    CHECK(structure_violation(*other->algebra()) == std::nullopt);
  }
}

TEST_CASE("the largest-label section of Example C changes w by a coboundary only") {
  InstancePtr c = fixture::example_c(Q());
  Subgroup e = Subgroup::trivial(c->group_ptr());
  LevelPtr a = build_level(c, e);
  LevelPtr b = build_level(c, e, {0, 3});
  CHECK(b->algebra()->section() == std::vector<Elem>{0, 3});
  // b'_1 = delta at 3 = -b_1, and (-b_1)^2 = b_1^2, so w(1,1) is still -1
  CHECK(b->algebra()->w(1, 1) == FieldElement(Q(), -1));
  CHECK(b->to_hecke(b->algebra()->basis(1)) == a->to_hecke(-a->algebra()->basis(1)));
}

TEST_CASE("build_level rejects bad levels") {
  InstancePtr c = fixture::example_c(Q());
  try {
    build_level(c, Subgroup(c->group_ptr(), {0, 2}));
    FAIL("K = N accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LevelNotAdmissibleClass);
  }
  InstancePtr s3 = fixture::plain(FiniteGroup::symmetric(3), Q());
  try {
    build_level(s3, Subgroup(s3->group_ptr(), {0, 1}));
    FAIL("non-normal level accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormal);
  }
}

TEST_CASE("crossed product ring axioms on random elements") {
  std::mt19937 rng(2);
  for (const LevelPtr& lv : corpus_levels()) {
    const CPPtr& a = lv->algebra();
    for (int trial = 0; trial < 3; ++trial) {
      CPElement x = fixture::random_cp(rng, a), y = fixture::random_cp(rng, a), z = fixture::random_cp(rng, a);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK((x + y) * z == x * z + y * z);
      CHECK(cp_mul(x, y) == x * y);
      // the Hecke realisation is a ring map
      CHECK(lv->to_hecke(x * y) == convolve(lv->to_hecke(x), lv->to_hecke(y)));
      CHECK(lv->expand(lv->to_hecke(x)) == x);
    }
  }
}

TEST_CASE("basis inverses and general inverses") {
  std::mt19937 rng(3);
  for (const LevelPtr& lv : corpus_levels()) {
    const CPPtr& a = lv->algebra();
    for (Elem d = 0; d < a->order(); ++d) {
      CPElement inv = basis_inverse(*a, d);
      CHECK(a->basis(d) * inv == a->one());
      CHECK(inv * a->basis(d) == a->one());
    }
    CPElement x = fixture::random_cp(rng, a);
    if (auto inv = cp_inverse(x)) {
      CHECK(x * *inv == a->one());
      CHECK(*inv * x == a->one());
    }
  }
  InstancePtr p = fixture::plain(FiniteGroup::cyclic(2), Q());
  const CPPtr a = build_level(p, Subgroup::trivial(p->group_ptr()))->algebra();
  CHECK_FALSE(cp_inverse(a->one() + a->basis(1)).has_value());
}

TEST_CASE("left multiplication in right coordinates") {
  std::mt19937 rng(4);
  for (const LevelPtr& lv : corpus_levels()) {
    const CPPtr& a = lv->algebra();
    CPElement x = fixture::random_cp(rng, a), z = fixture::random_cp(rng, a);
    FieldVector rz = right_from_left_coords(*a, z.coefficients());
    CHECK(left_from_right_coords(*a, rz) == z.coefficients());
    FieldVector image = left_multiplication_right_coords(x) * rz;
    CHECK(left_from_right_coords(*a, image) == (x * z).coefficients());
  }
}

TEST_CASE("structure validation rejects a non-cocycle") {
  GroupPtr z3 = FiniteGroup::cyclic(3);
  FieldMatrix w = FieldMatrix::Constant(3, 3, FieldElement(Q(), 1));
  w(1, 1) = FieldElement(Q(), 2);
  CHECK_THROWS_AS(CrossedProduct::create(z3, Q(), w, {1, 1, 1}), Error);
  FieldMatrix ok = FieldMatrix::Constant(3, 3, FieldElement(Q(), 1));
  CHECK_NOTHROW(CrossedProduct::create(z3, Q(), ok, {1, 1, 1}));
  CHECK_THROWS_AS(CrossedProduct::create(z3, Qz(4), FieldMatrix::Constant(3, 3, FieldElement(Qz(4), 1)), {1, 3, 1}),
                  Error);
}

TEST_CASE("level embeddings") {
  TowerPtr t = cyclic_tower(3, 2);
  LevelPtr coarse = t->level_algebra(1), fine = t->level_algebra(2);
  LevelEmbedding f = embed_level(coarse, fine);
  const FieldElement third(Q(), make_rational(1, 3));
  CPElement image = f(coarse->algebra()->basis(0));
  for (Elem d = 0; d < 9; ++d) CHECK(image[d] == (d % 3 == 0 ? third : FieldElement(Q(), 0)));
  EmbeddingReport r = verify_embedding(f);
  CHECK(r.ok());
  LevelEmbedding same = embed_level(coarse, coarse);
  CHECK(same.matrix() == FieldMatrix::Identity(3, 3));
  // composition through the middle level equals the direct embedding
  LevelEmbedding g = embed_level(t->level_algebra(0), coarse);
  LevelEmbedding direct = embed_level(t->level_algebra(0), fine);
  CHECK(compose(f, g).matrix() == direct.matrix());
  std::mt19937 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    CPElement x = fixture::random_cp(rng, coarse->algebra()), y = fixture::random_cp(rng, coarse->algebra());
    CHECK(f(x * y) == f(x) * f(y));
    CHECK(f.retract(f(x)) == x);
    // the embedding is the identity on Hecke functions
    CHECK(fine->to_hecke(f(x)).values() == coarse->to_hecke(x).values());
  }
}

TEST_CASE("embeddings on the corpus satisfy the corner identities") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  InstancePtr plain = fixture::plain(z4, Qz(4));
  LevelPtr l0 = build_level(plain, Subgroup::whole(z4));
  LevelPtr l1 = build_level(plain, Subgroup(z4, {0, 2}));
  LevelPtr l2 = build_level(plain, Subgroup::trivial(z4));
  for (auto [a, b] : {std::pair{l0, l1}, std::pair{l1, l2}, std::pair{l0, l2}}) CHECK(verify_embedding(embed_level(a, b)).ok());
  InstancePtr gal = fixture::galois_z4();
  CHECK(verify_embedding(embed_level(build_level(gal, Subgroup(gal->group_ptr(), {0, 2})),
                                     build_level(gal, Subgroup::trivial(gal->group_ptr()))))
            .ok());
  CHECK_THROWS_AS(embed_level(l2, l1), Error);
}

TEST_CASE("Maschke splitting") {
  for (const LevelPtr& lv : corpus_levels()) {
    for (int copies : {1, 2}) {
      MaschkeReport r = maschke_section(*lv->algebra(), copies);
      CHECK(r.ok);
      CHECK(r.vectors_checked >= lv->algebra()->order() * copies);
    }
  }
  TowerPtr t = cyclic_tower(3, 1);
  MaschkeReport r = maschke_section(*t->level_algebra(1)->algebra());
  CHECK(r.ok);
  CHECK(r.vectors_checked == 3);
}

TEST_CASE("crossed product elements survive a JSON round trip") {
  std::mt19937 rng(6);
  std::vector<LevelPtr> levels = corpus_levels();
  for (const LevelPtr& lv : levels) {
    CPElement x = fixture::random_cp(rng, lv->algebra());
    CHECK(cp_element_from_json(Json::parse(to_json(x).dump()), lv->algebra()) == x);
    Json s = structure_to_json(*lv->algebra());
    CHECK(s["order"] == lv->algebra()->order());
  }
  try {
    cp_element_from_json(to_json(levels[0]->algebra()->one()), levels[3]->algebra());
    FAIL("wrong parent accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParentMismatch);
  }
}
