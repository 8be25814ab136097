#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hecke/json_io.hpp"
#include "oracles.hpp"

using namespace hecke;
using fixture::Q;
using fixture::Qz;
using fixture::table;

namespace {

struct Case {
  InstancePtr inst;
  std::vector<Subgroup> levels;
};

std::vector<Case> corpus() {
  std::vector<Case> out;
  GroupPtr z4 = FiniteGroup::cyclic(4);
  InstancePtr plain = fixture::plain(z4, Qz(4));
  out.push_back({plain, {Subgroup::whole(z4), Subgroup(z4, {0, 2}), Subgroup::trivial(z4)}});
  InstancePtr c = fixture::example_c(Qz(4));
  out.push_back({c, {Subgroup::trivial(c->group_ptr())}});
  InstancePtr gal = fixture::galois_z4();
  out.push_back({gal, {Subgroup(gal->group_ptr(), {0, 2}), Subgroup::trivial(gal->group_ptr())}});
  InstancePtr s3 = fixture::s3_sign(Q());
  out.push_back({s3, {Subgroup(s3->group_ptr(), {0, 3, 4}), Subgroup::trivial(s3->group_ptr())}});
  InstancePtr s3p = fixture::plain(FiniteGroup::symmetric(3), Q(), make_rational(3, 2));
  out.push_back({s3p, {Subgroup(s3p->group_ptr(), {0, 1}), Subgroup::trivial(s3p->group_ptr())}});
  return out;
}

std::vector<Elem> largest_transversal(const Subgroup& nk) {
  LeftCosets c = left_cosets(nk);
  std::vector<Elem> out(c.transversal.size(), -1);
  for (Elem g = 0; g < nk.group().order(); ++g) out[c.coset_of[g]] = std::max(out[c.coset_of[g]], g);
  return out;
}

}  // namespace

TEST_CASE("make_element examples") {
  InstancePtr c = fixture::example_c(Q());
  GroupPtr g = c->group_ptr();
  HeckeElement s = make_element(c, {FieldElement(1), FieldElement(0)}, Subgroup::trivial(g));
  CHECK(s.values() == table(Q(), {1, 0, -1, 0}));
  CHECK(make_element(c, {FieldElement(0), FieldElement(0)}, Subgroup::trivial(g)).is_zero());
  CHECK(zero_element(c, Subgroup::trivial(g)).is_zero());
  try {
    make_element(c, {FieldElement(1)}, Subgroup(g, {0, 2}));
    FAIL("K = N accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LevelNotAdmissibleClass);
  }
  CHECK_THROWS_AS(make_element(c, {FieldElement(1)}, Subgroup::trivial(g)), Error);
}

TEST_CASE("element invariants are enforced") {
  InstancePtr c = fixture::example_c(Q());
  GroupPtr g = c->group_ptr();
  CHECK(element_violation(*c, table(Q(), {1, 0, -1, 0}), Subgroup::trivial(g)) == std::nullopt);
  CHECK(element_violation(*c, table(Q(), {1, 0, 1, 0}), Subgroup::trivial(g)).has_value());
  try {
    HeckeElement(c, table(Q(), {1, 0, 1, 0}), Subgroup::trivial(g));
    FAIL("omega-equivariance not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentValues);
  }
  // right K-invariance at K = {0, 2} in the plain group algebra
  InstancePtr p = fixture::plain(g, Q());
  CHECK(element_violation(*p, table(Q(), {1, 2, 1, 2}), Subgroup(g, {0, 2})) == std::nullopt);
  CHECK(element_violation(*p, table(Q(), {1, 2, 3, 2}), Subgroup(g, {0, 2})).has_value());
}

TEST_CASE("convolution examples") {
  GroupPtr z2 = FiniteGroup::cyclic(2);
  InstancePtr inst = fixture::plain(z2, Q());
  Subgroup k = Subgroup::trivial(z2);
  CHECK(inst->measure(k) == make_rational(1, 2));
  HeckeElement one = unit_1k(inst, k);
  CHECK(one.values() == table(Q(), {2, 0}));
  HeckeElement d1 = HeckeElement(inst, table(Q(), {0, 2}), k);
  CHECK(convolve(d1, d1).values() == table(Q(), {2, 0}));

  InstancePtr c = fixture::example_c(Q());
  Subgroup e = Subgroup::trivial(c->group_ptr());
  HeckeElement u = unit_1k(c, e);
  CHECK(u.values() == table(Q(), {2, 0, -2, 0}));
  HeckeElement b1 = HeckeElement(c, table(Q(), {0, 2, 0, -2}), e);
  CHECK(convolve(b1, b1).values() == table(Q(), {-2, 0, 2, 0}));
  CHECK(convolve(u, u) == u);
  CHECK(scalar_act(FieldElement(2), b1).values() == table(Q(), {0, 4, 0, -4}));
  CHECK(scalar_act(FieldElement(1), b1) == b1);
  CHECK(scalar_act(FieldElement(0), b1).is_zero());
}

TEST_CASE("unit of the whole group") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  InstancePtr p = fixture::plain(z4, Q(), 3);
  CHECK(unit_1k(p, Subgroup::whole(z4)).values() == FieldVector::Constant(4, FieldElement(Q(), make_rational(1, 3))));
}

TEST_CASE("convolution agrees with the defining sum over the whole group") {
  std::mt19937 rng(101);
  for (const Case& c : corpus()) {
    for (const Subgroup& k1 : c.levels)
      for (const Subgroup& k2 : c.levels) {
        HeckeElement s = fixture::random_element(rng, c.inst, k1);
        HeckeElement t = fixture::random_element(rng, c.inst, k2);
        HeckeElement st = convolve(s, t);
        std::vector<FieldElement> expected = oracle::naive_product(*c.inst, s.values(), t.values());
        for (Elem x = 0; x < c.inst->group().order(); ++x) CHECK(st(x) == expected[x]);
      }
  }
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937 rng(202);
  for (const Case& c : corpus()) {
    for (const Subgroup& k : c.levels) {
      for (int trial = 0; trial < 3; ++trial) {
        HeckeElement a = fixture::random_element(rng, c.inst, k);
        HeckeElement b = fixture::random_element(rng, c.inst, c.levels.back());
        HeckeElement d = fixture::random_element(rng, c.inst, c.levels.front());
        CHECK(convolve(convolve(a, b), d) == convolve(a, convolve(b, d)));
        CHECK(convolve(a, b + d) == convolve(a, b) + convolve(a, d));
        HeckeElement one = unit_1k(c.inst, k);
        CHECK(convolve(one, a) == a);
        CHECK(convolve(a, one) == a);
      }
      CHECK(convolve(unit_1k(c.inst, k), unit_1k(c.inst, k)) == unit_1k(c.inst, k));
    }
  }
}

TEST_CASE("the product does not depend on the level or transversal used") {
  std::mt19937 rng(303);
  for (const Case& c : corpus()) {
    const Subgroup& fine = c.levels.back();
    for (const Subgroup& k : c.levels) {
      HeckeElement s = fixture::random_element(rng, c.inst, k);
      HeckeElement t = fixture::random_element(rng, c.inst, k);
      HeckeElement reference = convolve(s, t);
      for (const Subgroup& k2 : {k, fine}) {
        if (!k2.is_subset_of(k)) continue;
        const Subgroup nk = join(c.inst->normal_subgroup(), k2);
        CHECK(convolve_with(s, t, k2, left_cosets(nk).transversal) == reference);
        CHECK(convolve_with(s, t, k2, largest_transversal(nk)) == reference);
      }
    }
  }
}

TEST_CASE("rescaling the measure by lambda is undone by s -> s / lambda") {
  std::mt19937 rng(404);
  for (const Rational lambda : {make_rational(2), make_rational(1, 3)}) {
    InstancePtr a = fixture::example_c(Qz(4));
    InstancePtr b = fixture::example_c(Qz(4), lambda);
    Subgroup k = Subgroup::trivial(a->group_ptr());
    Subgroup kb = Subgroup::trivial(b->group_ptr());
    auto move = [&](const HeckeElement& s) {
      FieldVector v = s.values();
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = v(i) * FieldElement(Rational(1) / lambda);
      return HeckeElement(b, v, kb);
    };
    for (int trial = 0; trial < 4; ++trial) {
      HeckeElement s = fixture::random_element(rng, a, k), t = fixture::random_element(rng, a, k);
      CHECK(convolve(move(s), move(t)) == move(convolve(s, t)));
    }
    CHECK(move(unit_1k(a, k)) == unit_1k(b, kb));
  }
}

TEST_CASE("pushforward along the open inclusion {0,2} in Z/4") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  GroupPtr z2 = FiniteGroup::cyclic(2);
  InstancePtr target = fixture::plain(z4, Q());
  InstancePtr source = fixture::plain(z2, Q());
  GroupHom phi = GroupHom::inclusion(Subgroup(z4, {0, 2}), z2);
  CHECK(pushforward_violation(phi, *source, *target) == std::nullopt);
  Subgroup e2 = Subgroup::trivial(z2), e4 = Subgroup::trivial(z4);
  CHECK(pushforward(phi, target, unit_1k(source, e2)) == unit_1k(target, e4));
  CHECK(pushforward(phi, target, unit_1k(source, Subgroup::whole(z2))) == unit_1k(target, Subgroup(z4, {0, 2})));
  std::mt19937 rng(505);
  for (const Subgroup& k : {e2, Subgroup::whole(z2)}) {
    for (int trial = 0; trial < 4; ++trial) {
      HeckeElement s = fixture::random_element(rng, source, k), t = fixture::random_element(rng, source, e2);
      HeckeElement ps = pushforward(phi, target, s);
      CHECK(pushforward(phi, target, convolve(s, t)) == convolve(ps, pushforward(phi, target, t)));
      CHECK(pushforward(phi, target, s + t) == ps + pushforward(phi, target, t));
      // supported on the image
      CHECK(ps(1).is_zero());
      CHECK(ps(3).is_zero());
    }
  }
}

TEST_CASE("pushforward along the identity is the identity") {
  std::mt19937 rng(606);
  InstancePtr c = fixture::example_c(Q());
  GroupHom id = GroupHom::identity(c->group_ptr());
  HeckeElement s = fixture::random_element(rng, c, Subgroup::trivial(c->group_ptr()));
  CHECK(pushforward(id, c, s) == s);
}

TEST_CASE("pushforward along a surjection needs omega' = omega o pr") {
  InstancePtr signed_source = fixture::example_c(Q());
  GroupPtr z4 = signed_source->group_ptr();
  GroupPtr z2 = FiniteGroup::cyclic(2);
  GroupHom pr(z4, z2, {0, 1, 0, 1});
  InstancePtr target = fixture::plain(z2, Q());
  CHECK(pushforward_violation(pr, *signed_source, *target).has_value());
  HeckeElement s = unit_1k(signed_source, Subgroup::trivial(z4));
  try {
    pushforward(pr, target, s);
    FAIL("mismatched omega accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CompatibilityViolation);
  }
  Subgroup n(z4, {0, 2});
  InstancePtr trivial_source =
      HeckeInstance::create(n, NormalCharacter::trivial(n, Q()), RhoAction::trivial(z4, Q()));
  CHECK(pushforward_violation(pr, *trivial_source, *target) == std::nullopt);
  std::mt19937 rng(707);
  Subgroup e4 = Subgroup::trivial(z4);
  HeckeElement a = fixture::random_element(rng, trivial_source, e4), b = fixture::random_element(rng, trivial_source, e4);
  CHECK(pushforward(pr, target, convolve(a, b)) == convolve(pushforward(pr, target, a), pushforward(pr, target, b)));
}

TEST_CASE("instance validation") {
  GroupPtr s3 = FiniteGroup::symmetric(3);
  const auto& f3 = Qz(3);
  Subgroup a3(s3, {0, 3, 4});
  NormalCharacter bad(a3, f3, {FieldElement(f3, 1), FieldElement::zeta(f3), FieldElement::zeta(f3, 2)});
  try {
    HeckeInstance::create(a3, bad, RhoAction::trivial(s3, f3));
    FAIL("invalid omega accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CompatibilityViolation);
  }
  Subgroup t(s3, {0, 1});
  CHECK_THROWS_AS(HeckeInstance::create(t, NormalCharacter::trivial(t, f3), RhoAction::trivial(s3, f3)), Error);
}

TEST_CASE("Hecke elements survive a JSON round trip") {
  std::mt19937 rng(808);
  for (const Case& c : corpus()) {
    for (const Subgroup& k : c.levels) {
      HeckeElement s = fixture::random_element(rng, c.inst, k);
      Json j = Json::parse(to_json(s).dump());
      HeckeElement back = hecke_element_from_json(j, c.inst);
      CHECK(back == s);
      CHECK(back.level() == s.level());
    }
  }
  InstancePtr c = fixture::example_c(Q());
  InstancePtr other = fixture::plain(c->group_ptr(), Q());
  Json j = to_json(unit_1k(c, Subgroup::trivial(c->group_ptr())));
  try {
    hecke_element_from_json(j, other);
    FAIL("wrong instance accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InstanceMismatch);
  }
}
