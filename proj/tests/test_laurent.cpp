#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hecke/json_io.hpp"
#include "hecke/laurent.hpp"

using namespace hecke;
using fixture::Q;
using fixture::Qz;

namespace {

LevelAutPtr level_aut(const TowerPtr& t, int n) { return std::make_shared<const LevelAutomorphism>(t, n); }

/// L = Z/9 with phi = multiplication by 2 and rho(t) = zeta -> zeta^2 on Q(zeta_9).
TowerPtr galois_twisted_tower() {
  GroupPtr z9 = FiniteGroup::cyclic(9);
  InstancePtr inst = fixture::plain(z9, Qz(9));
  std::vector<Subgroup> chain = {Subgroup::whole(z9), Subgroup(z9, {0, 3, 6}), Subgroup::trivial(z9)};
  return TowerSpec::create(inst, chain, Twist{GroupHom(z9, z9, multiplication_map(9, 2)), 2}, "galois-z9");
}

std::vector<TwistedLaurentElement> monomials(const LevelAutPtr& alpha, int max_degree, bool with_zeta) {
  std::vector<TwistedLaurentElement> out;
  const CPPtr& a = alpha->algebra();
  for (long n = -max_degree; n <= max_degree; ++n)
    for (Elem d = 0; d < a->order(); ++d) {
      out.push_back(TwistedLaurentElement::monomial(alpha, a->basis(d), n));
      if (with_zeta && a->field().degree() > 1)
        out.push_back(TwistedLaurentElement::monomial(alpha, FieldElement::zeta(a->field()) * a->basis(d), n));
    }
  return out;
}

TwistedLaurentElement random_laurent(std::mt19937& rng, const LevelAutPtr& alpha) {
  TwistedLaurentElement f(alpha);
  std::uniform_int_distribution<int> deg(-2, 2);
  for (int i = 0; i < 3; ++i) f.set(deg(rng), fixture::random_cp(rng, alpha->algebra()));
  return f;
}

}  // namespace

TEST_CASE("phi_hecke with the identity twist is the identity") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 2, 9), 1);
  std::mt19937 rng(1);
  for (int n = 0; n <= 2; ++n) {
    HeckeElement s = fixture::random_element(rng, t->ambient(), t->level(n));
    CHECK(phi_hecke(*t, s) == s);
  }
}

TEST_CASE("phi_hecke moves the indicator at 1 to the indicator at 2") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 2), 2);
  LevelPtr lv = t->level_algebra(2);
  HeckeElement d1 = lv->basis_function(1);
  HeckeElement moved = phi_hecke(*t, d1);
  CHECK(moved == lv->basis_function(2));
  for (Elem l = 0; l < 9; ++l) CHECK(moved(l).is_zero() == (l != 2));
}

TEST_CASE("phi_hecke is multiplicative on all basis pairs at levels up to 9") {
  for (TowerPtr t : {attach_unit_twist(cyclic_tower(3, 2, 9), 2), galois_twisted_tower()}) {
    for (int n = 0; n <= 2; ++n) {
      LevelPtr lv = t->level_algebra(n);
      const int dim = lv->algebra()->order();
      const FieldElement z = FieldElement::zeta(lv->algebra()->field());
      for (Elem a = 0; a < dim; ++a)
        for (Elem b = 0; b < dim; ++b) {
          HeckeElement s = lv->basis_function(a);
          HeckeElement s2 = scalar_act(z, lv->basis_function(b));
          CHECK(phi_hecke(*t, convolve(s, s2)) == convolve(phi_hecke(*t, s), phi_hecke(*t, s2)));
        }
    }
  }
}

TEST_CASE("phi_hecke is inverted by the inverse twist") {
  std::mt19937 rng(2);
  for (TowerPtr t : {attach_unit_twist(cyclic_tower(3, 2, 9), 2), galois_twisted_tower()}) {
    TowerPtr inv = t->inverse_twist();
    for (int n = 0; n <= 2; ++n) {
      HeckeElement s = fixture::random_element(rng, t->ambient(), t->level(n));
      CHECK(phi_hecke(*inv, phi_hecke(*t, s)) == s);
      CHECK(phi_hecke(*t, phi_hecke(*inv, s)) == s);
    }
  }
}

TEST_CASE("phi_hecke needs a twist") {
  TowerPtr t = cyclic_tower(3, 1);
  try {
    phi_hecke(*t, unit_1k(t->ambient(), t->level(1)));
    FAIL("untwisted tower accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoTwistConfigured);
  }
}

TEST_CASE("level automorphisms") {
  std::mt19937 rng(3);
  for (TowerPtr t : {attach_unit_twist(cyclic_tower(3, 2, 9), 2), galois_twisted_tower()}) {
    for (int n = 0; n <= 2; ++n) {
      LevelAutPtr alpha = level_aut(t, n);
      CHECK(alpha->automorphism_violation() == std::nullopt);
      CPElement x = fixture::random_cp(rng, alpha->algebra());
      CHECK(alpha->power(alpha->power(x, 3), -3) == x);
      CHECK(alpha->inverse()((*alpha)(x)) == x);
      CHECK(alpha->power(x, 2) == (*alpha)((*alpha)(x)));
      CHECK(alpha->power(x, 0) == x);
      // agrees with phi_hecke on Hecke functions
      CHECK(alpha->level()->to_hecke((*alpha)(x)) == phi_hecke(*t, alpha->level()->to_hecke(x)));
    }
  }
}

TEST_CASE("laurent_mul examples") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 1), 2);
  LevelAutPtr alpha = level_aut(t, 1);
  const CPPtr& a = alpha->algebra();
  std::mt19937 rng(4);
  CPElement x = fixture::random_cp(rng, a), y = fixture::random_cp(rng, a);
  CHECK(laurent_mul(TwistedLaurentElement::monomial(alpha, x, 0), TwistedLaurentElement::monomial(alpha, y, 0)) ==
        TwistedLaurentElement::monomial(alpha, x * y, 0));
  // (b_1 t)(b_1 t) = b_1 alpha(b_1) t^2 = b_1 b_2 t^2 = b_0 t^2
  TwistedLaurentElement m = TwistedLaurentElement::monomial(alpha, a->basis(1), 1);
  CHECK((*alpha)(a->basis(1)) == a->basis(2));
  CHECK(laurent_mul(m, m) == TwistedLaurentElement::monomial(alpha, a->basis(1) * a->basis(2), 2));
  CHECK(laurent_mul(m, m) == TwistedLaurentElement::monomial(alpha, a->basis(0), 2));

  TowerPtr plain = attach_unit_twist(cyclic_tower(2, 1), 1);
  LevelAutPtr id = level_aut(plain, 1);
  const CPPtr& b = id->algebra();
  TwistedLaurentElement bt = TwistedLaurentElement::monomial(id, b->basis(1), 1);
  CHECK(laurent_mul(bt, bt) == TwistedLaurentElement::monomial(id, b->basis(1) * b->basis(1), 2));
  CHECK(laurent_mul(bt, bt) == TwistedLaurentElement::monomial(id, b->basis(0), 2));
}

TEST_CASE("laurent_mul is associative on all monomial triples") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 1, 3), 2);
  LevelAutPtr alpha = level_aut(t, 1);
  std::vector<TwistedLaurentElement> ms = monomials(alpha, 1, true);
  for (const auto& f : ms)
    for (const auto& g : ms) {
      TwistedLaurentElement fg = laurent_mul(f, g);
      for (const auto& h : ms) CHECK(laurent_mul(fg, h) == laurent_mul(f, laurent_mul(g, h)));
    }
}

TEST_CASE("laurent_mul is bilinear") {
  TowerPtr t = galois_twisted_tower();
  LevelAutPtr alpha = level_aut(t, 1);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    TwistedLaurentElement f = random_laurent(rng, alpha), g = random_laurent(rng, alpha), h = random_laurent(rng, alpha);
    CHECK(laurent_mul(f, g + h) == laurent_mul(f, g) + laurent_mul(f, h));
    CHECK(laurent_mul(f + g, h) == laurent_mul(f, h) + laurent_mul(g, h));
    CHECK(laurent_mul(laurent_mul(f, g), h) == laurent_mul(f, laurent_mul(g, h)));
    CHECK((f - f).is_zero());
  }
}

TEST_CASE("laurent_mul rejects different bases") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 1), 2);
  LevelAutPtr a0 = level_aut(t, 0), a1 = level_aut(t, 1);
  try {
    laurent_mul(TwistedLaurentElement::monomial(a0, a0->algebra()->one(), 0),
                TwistedLaurentElement::monomial(a1, a1->algebra()->one(), 0));
    FAIL("different bases accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BaseMismatch);
  }
}

TEST_CASE("xi of a degree-zero element is its slice-0 extension") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 1), 2);
  LevelAutPtr alpha = level_aut(t, 1);
  std::mt19937 rng(6);
  CPElement x = fixture::random_cp(rng, alpha->algebra());
  CovirtZElement X = xi(TwistedLaurentElement::monomial(alpha, x, 0));
  REQUIRE(X.slices().size() == 1);
  CHECK(X.slices().begin()->first == 0);
  CHECK(X.slices().begin()->second == alpha->level()->to_hecke(x).values());
  for (Elem l = 0; l < 3; ++l) CHECK(X(l, 1).is_zero());
}

TEST_CASE("xi and xi_inv are mutually inverse and additive") {
  std::mt19937 rng(7);
  for (TowerPtr t : {attach_unit_twist(cyclic_tower(3, 2, 9), 2), galois_twisted_tower()}) {
    for (int n = 0; n <= 2; ++n) {
      LevelAutPtr alpha = level_aut(t, n);
      for (int trial = 0; trial < 3; ++trial) {
        TwistedLaurentElement f = random_laurent(rng, alpha), g = random_laurent(rng, alpha);
        CHECK(xi_inv(xi(f), alpha) == f);
        CHECK(xi(f + g) == xi(f) + xi(g));
      }
    }
  }
}

TEST_CASE("xi is multiplicative on all monomial pairs with |n| <= 2") {
  for (TowerPtr t : {attach_unit_twist(cyclic_tower(3, 2, 9), 2), galois_twisted_tower()}) {
    for (int level : {1, 2}) {
      LevelAutPtr alpha = level_aut(t, level);
      std::vector<TwistedLaurentElement> ms = monomials(alpha, 2, level == 1);
      for (const auto& f : ms)
        for (const auto& g : ms) CHECK(direct_convolve(xi(f), xi(g)) == xi(laurent_mul(f, g)));
    }
  }
}

TEST_CASE("direct convolution examples") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 1), 2);
  LevelAutPtr alpha = level_aut(t, 1);
  const LevelPtr& lv = alpha->level();
  std::mt19937 rng(8);
  TwistedLaurentElement f = random_laurent(rng, alpha);
  CovirtZElement unit = xi(TwistedLaurentElement::monomial(alpha, alpha->algebra()->one(), 0));
  CHECK(direct_convolve(xi(f), unit) == xi(f));
  CHECK(direct_convolve(unit, xi(f)) == xi(f));

  CPElement x = fixture::random_cp(rng, alpha->algebra()), y = fixture::random_cp(rng, alpha->algebra());
  CovirtZElement prod = direct_convolve(xi(TwistedLaurentElement::monomial(alpha, x, 0)),
                                        xi(TwistedLaurentElement::monomial(alpha, y, 0)));
  CHECK(prod.slices().size() == 1);
  CHECK(prod.slices().at(0) == convolve(lv->to_hecke(x), lv->to_hecke(y)).values());

  CovirtZElement d1 = xi(TwistedLaurentElement::monomial(alpha, alpha->algebra()->basis(1), 1));
  CovirtZElement sq = direct_convolve(d1, d1);
  REQUIRE(sq.slices().size() == 1);
  CHECK(sq.slices().begin()->first == 2);
  CHECK(sq.slices().at(2) == lv->to_hecke(alpha->algebra()->basis(1) * (*alpha)(alpha->algebra()->basis(1))).values());
}

TEST_CASE("direct convolution respects the grading") {
  TowerPtr t = galois_twisted_tower();
  LevelAutPtr alpha = level_aut(t, 2);
  std::mt19937 rng(9);
  for (long m = -2; m <= 2; ++m)
    for (long n = -2; n <= 2; ++n) {
      CovirtZElement x = xi(TwistedLaurentElement::monomial(alpha, fixture::random_cp(rng, alpha->algebra()), m));
      CovirtZElement y = xi(TwistedLaurentElement::monomial(alpha, fixture::random_cp(rng, alpha->algebra()), n));
      CovirtZElement xy = direct_convolve(x, y);
      for (const auto& [k, slice] : xy.slices()) CHECK(k == m + n);
    }
}

TEST_CASE("covirtually-Z elements are validated and serialised") {
  TowerPtr t = attach_unit_twist(cyclic_tower(3, 1), 2);
  LevelAutPtr alpha = level_aut(t, 1);
  std::mt19937 rng(10);
  CovirtZElement x = xi(random_laurent(rng, alpha));
  CHECK(covirt_element_from_json(Json::parse(to_json(x).dump()), t) == x);
  // level 0 of Z/3: slices must be constant
  std::map<long, FieldVector> bad;
  bad.emplace(0, fixture::table(Q(), {1, 0, 0}));
  CHECK_THROWS_AS(CovirtZElement(t, 0, bad), Error);
  TowerPtr other = attach_unit_twist(cyclic_tower(3, 1), 2);
  try {
    xi_inv(x, level_aut(other, 1));
    FAIL("foreign tower accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatibleInstance);
  }
  try {
    direct_convolve(x, xi(TwistedLaurentElement::monomial(level_aut(other, 1), level_aut(other, 1)->algebra()->one(), 0)));
    FAIL("foreign tower accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InstanceMismatch);
  }
}
