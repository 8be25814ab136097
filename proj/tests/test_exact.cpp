#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hecke/field_roots.hpp"
#include "hecke/json_io.hpp"
#include "hecke/lattice.hpp"
#include "hecke/linalg.hpp"
#include "hecke/polynomial.hpp"
#include "hecke/smith.hpp"
#include "oracles.hpp"

using namespace hecke;
using fixture::Q;
using fixture::Qz;

namespace {

const std::vector<long> kConductors = {1, 3, 4, 5, 8, 9, 12, 27};

std::vector<Rational> rationals(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.push_back(Rational(x));
  return out;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(make_rational(2, 3) + make_rational(1, 6) == make_rational(5, 6));
  CHECK(to_string(make_rational(2, 3) + make_rational(1, 6)) == "5/6");
  CHECK(to_string(Rational(4)) == "4/1");
  CHECK(parse_rational("-6/8") == make_rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(parse_integer("-123456789012345678901234567890") == Integer("-123456789012345678901234567890"));
}

TEST_CASE("cyclotomic examples") {
  const auto& f4 = Qz(4);
  const auto& f3 = Qz(3);
  const FieldElement z4 = FieldElement::zeta(f4);
  CHECK(z4 * z4 == FieldElement(f4, -1));
  const FieldElement z3 = FieldElement::zeta(f3);
  CHECK((FieldElement(f3, 1) + z3).inverse() == -z3);
  CHECK((FieldElement(f3, 1) + z3) * (-z3) == FieldElement(f3, 1));
  CHECK_THROWS_AS(FieldElement(f3, 0).inverse(), Error);
  CHECK(f4.degree() == 2);
  CHECK(Qz(12).degree() == 4);
  CHECK(Qz(27).degree() == 18);
  CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
  CHECK(euler_phi(27) == 18);
}

TEST_CASE("untagged constants adopt the other field") {
  const auto& f5 = Qz(5);
  FieldElement a = FieldElement(make_rational(1, 2)) + FieldElement::zeta(f5);
  REQUIRE(a.field() == &f5);
  CHECK(a.coefficient(0) == make_rational(1, 2));
  CHECK(a.coefficient(1) == 1);
  CHECK_THROWS_AS(FieldElement::zeta(Qz(3)) + FieldElement::zeta(f5), Error);
}

TEST_CASE("root_of_unity examples") {
  CHECK(root_of_unity(Q(), 1) == FieldElement(Q(), 1));
  CHECK(root_of_unity(Q(), 2) == FieldElement(Q(), -1));
  CHECK(root_of_unity(Qz(4), 4) == FieldElement::zeta(Qz(4)));
  CHECK_THROWS_AS(root_of_unity(Q(), 3), Error);
  CHECK_THROWS_AS(root_of_unity(Qz(4), 8), Error);
}

TEST_CASE("apply_aut examples") {
  const auto& f4 = Qz(4);
  const FieldElement z = FieldElement::zeta(f4);
  CHECK(apply_aut(FieldAut(f4, 3), z) == -z);
  std::mt19937 rng(7);
  for (int i = 0; i < 5; ++i) {
    FieldElement a = fixture::random_scalar(rng, f4);
    CHECK(apply_aut(FieldAut::identity(f4), a) == a);
  }
  for (int i = 0; i < f4.degree(); ++i) {
    FieldElement b = FieldElement::zeta(f4, i);
    CHECK(apply_aut(FieldAut(f4, 3), apply_aut(FieldAut(f4, 3), b)) == b);
  }
}

TEST_CASE("minimal polynomial examples") {
  CHECK(minimal_polynomial(FieldElement(Qz(4), 0)) == rationals({0, 1}));
  CHECK(minimal_polynomial(FieldElement::zeta(Qz(4))) == rationals({1, 0, 1}));
  CHECK(minimal_polynomial(FieldElement(Qz(3), 1) + FieldElement::zeta(Qz(3))) == rationals({1, -1, 1}));
  CHECK(minimal_polynomial(FieldElement(Qz(9), 5)) == rationals({-5, 1}));
}

TEST_CASE("field axioms hold on random elements, checked through the complex embedding") {
  std::mt19937 rng(20261018);
  for (long m : kConductors) {
    const auto& f = Qz(m);
    for (int trial = 0; trial < 12; ++trial) {
      FieldElement a = fixture::random_scalar(rng, f), b = fixture::random_scalar(rng, f),
                   c = fixture::random_scalar(rng, f);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == FieldElement(f, 0));
      CHECK(oracle::close(oracle::embed(a * b, m), oracle::embed(a, m) * oracle::embed(b, m)));
      CHECK(oracle::close(oracle::embed(a + b, m), oracle::embed(a, m) + oracle::embed(b, m)));
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == FieldElement(f, 1));
        CHECK(oracle::close(oracle::embed(a.inverse(), m), 1.0 / oracle::embed(a, m)));
      }
      // minimal polynomial vanishes at a
      CHECK(evaluate(from_rationals(minimal_polynomial(a)), a).is_zero());
    }
  }
}

TEST_CASE("Galois automorphisms are field automorphisms and compose") {
  std::mt19937 rng(11);
  for (long m : kConductors) {
    const auto& f = Qz(m);
    for (long k : f.galois_exponents()) {
      FieldAut s(f, k);
      CHECK(s.compose(s.inverse()).is_identity());
      FieldElement a = fixture::random_scalar(rng, f), b = fixture::random_scalar(rng, f);
      CHECK(apply_aut(s, a * b) == apply_aut(s, a) * apply_aut(s, b));
      CHECK(apply_aut(s, a + b) == apply_aut(s, a) + apply_aut(s, b));
      for (long k2 : f.galois_exponents()) {
        FieldAut t(f, k2);
        CHECK(apply_aut(s.compose(t), a) == apply_aut(s, apply_aut(t, a)));
      }
      // sigma_k corresponds to zeta -> zeta^k under the embedding
      CHECK(oracle::close(oracle::embed(apply_aut(s, FieldElement::zeta(f)), m),
                          oracle::embed(FieldElement::zeta(f, k), m)));
    }
  }
}

TEST_CASE("roots of unity have the requested order") {
  for (long m : kConductors) {
    const auto& f = Qz(m);
    for (long n = 1; n <= f.root_order(); ++n) {
      if (f.root_order() % n) continue;
      FieldElement r = root_of_unity(f, n);
      CHECK(root_of_unity_order(r) == n);
      CHECK(r.pow(n) == FieldElement(f, 1));
    }
  }
  CHECK(root_of_unity_order(FieldElement(Qz(3), 2)) == 0);
}

TEST_CASE("polynomial arithmetic") {
  const auto& f = Qz(3);
  FieldPoly a = from_roots({FieldElement(f, 1), FieldElement::zeta(f)});
  FieldPoly b = from_roots({FieldElement(f, 1), FieldElement(f, 2)});
  FieldPoly g = poly_gcd(a, b);
  CHECK(g == from_roots({FieldElement(f, 1)}));
  FieldPoly q, r;
  poly_divmod(poly_mul(a, b), b, q, r);
  CHECK(q == a);
  CHECK(degree(r) == -1);
  FieldPoly sq = poly_mul(a, a);
  CHECK(squarefree_part(sq) == make_monic(a));
  CHECK(derivative(from_rationals(rationals({0, 0, 1}))) == from_rationals(rationals({0, 2})));
}

TEST_CASE("roots in cyclotomic fields") {
  FieldPoly x2p1 = from_rationals(rationals({1, 0, 1}));
  CHECK(roots_in_field(Q(), x2p1).empty());
  auto r4 = roots_in_field(Qz(4), x2p1);
  REQUIRE(r4.size() == 2);
  for (const auto& r : r4) CHECK(evaluate(x2p1, r).is_zero());
  auto cube = roots_in_field(Qz(3), from_rationals(rationals({-1, 0, 0, 1})));
  CHECK(cube.size() == 3);
  // a root with a denominator: x - (1/3 + 2 zeta) over Q(zeta_9)
  const auto& f9 = Qz(9);
  FieldElement target = FieldElement(f9, make_rational(1, 3)) + FieldElement(f9, 2) * FieldElement::zeta(f9);
  auto lin = roots_in_field(f9, poly_mul(from_roots({target}), from_rationals(rationals({1, 0, 1}))));
  REQUIRE(lin.size() == 1);
  CHECK(lin[0] == target);
  // Phi_27 splits completely over Q(zeta_27)
  const std::vector<Integer> phi27 = cyclotomic_polynomial(27);
  auto prim = roots_in_field(Qz(27), from_rationals(std::vector<Rational>(phi27.begin(), phi27.end())));
  CHECK(prim.size() == 18);
}

TEST_CASE("exact linear algebra agrees with minor expansion") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    const int rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    RationalMatrix m(rows, cols);
    std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        // low-rank structure now and then
        Rational v = (trial % 3 == 0 && i > 0) ? Rational(dense[0][j] * (i + 1)) : make_rational(entry(rng), 1 + (i + j) % 2);
        m(i, j) = v;
        dense[i][j] = v;
      }
    CHECK(hecke::rank(m) == oracle::rank_by_minors(dense));
    CHECK(rref(m).rank() == oracle::rank_by_minors(dense));
    RationalMatrix ns = nullspace(m);
    CHECK(ns.cols() == cols - hecke::rank(m));
    CHECK(is_zero_matrix(RationalMatrix(m * ns)));
    if (rows == cols) {
      CHECK(determinant(m) == oracle::leibniz_det(dense));
      auto inv = inverse(m);
      CHECK(inv.has_value() == (oracle::leibniz_det(dense) != 0));
      if (inv) CHECK(RationalMatrix(m * *inv) == RationalMatrix::Identity(rows, cols));
    }
  }
}

TEST_CASE("solve finds a solution or reports inconsistency") {
  RationalMatrix a(2, 2);
  a << 1, 2, 2, 4;
  Vector<Rational> b(2);
  b << 1, 2;
  auto x = solve(a, b);
  REQUIRE(x);
  CHECK(Vector<Rational>(a * *x) == b);
  b << 1, 3;
  CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("Bareiss determinant matches Leibniz") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int n = 1; n <= 6; ++n) {
    IntegerMatrix m(n, n);
    std::vector<std::vector<Integer>> dense(n, std::vector<Integer>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dense[i][j] = m(i, j) = entry(rng);
    CHECK(determinant_bareiss(m) == oracle::leibniz_det(dense));
  }
}

TEST_CASE("Smith normal form examples") {
  SmithForm id = smith_normal_form(integer_identity(3));
  CHECK(id.S == integer_identity(3));
  IntegerMatrix two(1, 1);
  two(0, 0) = 2;
  CHECK(smith_normal_form(two).S == two);
  IntegerMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  SmithForm s = smith_normal_form(IntegerMatrix(integer_identity(2) - swap));
  CHECK(s.diagonal() == std::vector<Integer>{1, 0});
  Cokernel c = cokernel(s);
  CHECK(c.free_rank == 1);
  CHECK(c.torsion.empty());
}

TEST_CASE("Smith normal form agrees with determinantal divisors") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    IntegerMatrix m(rows, cols);
    std::vector<std::vector<Integer>> dense(rows, std::vector<Integer>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) dense[i][j] = m(i, j) = entry(rng) * (trial % 2 ? 2 : 1);
    SmithForm s = smith_normal_form(m);
    CHECK(IntegerMatrix(s.U * s.S * s.V) == m);
    CHECK(IntegerMatrix(s.left * m * s.right) == s.S);
    CHECK(abs(determinant_bareiss(s.U)) == 1);
    CHECK(abs(determinant_bareiss(s.V)) == 1);
    CHECK(IntegerMatrix(s.U * s.left) == integer_identity(rows));
    std::vector<Integer> diag = s.diagonal();
    CHECK(diag == oracle::invariant_factors(dense));
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
      if (diag[i + 1] != 0) CHECK(diag[i + 1] % diag[i] == 0);
  }
}

TEST_CASE("integer left inverses exist exactly for split injections") {
  IntegerMatrix col(2, 1);
  col << 1, 1;
  auto left = integer_left_inverse(col);
  REQUIRE(left);
  CHECK(IntegerMatrix(*left * col) == integer_identity(1));
  IntegerMatrix two(2, 1);
  two << 2, 4;
  CHECK_FALSE(integer_left_inverse(two).has_value());
}

TEST_CASE("LLL keeps the lattice and shortens the basis") {
  IntegerMatrix b(3, 3);
  b << 1, 0, 0, 4, 1, 0, 17, 8, 1;
  const Integer det = determinant_bareiss(b);
  IntegerMatrix reduced = b;
  lll_reduce(reduced);
  CHECK(abs(determinant_bareiss(reduced)) == abs(det));
  for (int i = 0; i < 3; ++i) CHECK(reduced.row(i).cwiseAbs().maxCoeff() <= 1);
  IntegerVector t(3);
  t << 5, 5, 5;
  IntegerVector r = babai_residual(reduced, t);
  CHECK(r.cwiseAbs().maxCoeff() <= 1);
}

TEST_CASE("JSON round trips of exact values") {
  std::mt19937 rng(23);
  CHECK(to_json(make_rational(-3, 4)) == "-3/4");
  CHECK(rational_from_json(to_json(make_rational(-3, 4))) == make_rational(-3, 4));
  CHECK(integer_from_json(to_json(Integer("98765432109876543210"))) == Integer("98765432109876543210"));
  CHECK(to_json(FieldElement(1))["field"].is_null());
  for (long m : kConductors) {
    FieldElement a = fixture::random_scalar(rng, Qz(m));
    CHECK(field_element_from_json(to_json(a)) == a);
    CHECK(field_element_from_json(Json::parse(to_json(a).dump())) == a);
  }
  FieldMatrix fm(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) fm(i, j) = fixture::random_scalar(rng, Qz(8));
  CHECK(field_matrix_from_json(to_json(fm)) == fm);
  IntegerMatrix im(2, 2);
  im << 1, -2, 3, 400;
  CHECK(integer_matrix_from_json(to_json(im)) == im);
  CHECK_THROWS_AS(rational_from_json(Json(3.5)), Error);
  CHECK_THROWS_AS(field_element_from_json(Json::object({{"field", 4}})), Error);
}
