#include "hecke/field_roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "hecke/error.hpp"
#include "hecke/lattice.hpp"

namespace hecke {

namespace {

using IntPoly = std::vector<Integer>;  // over Z/p^N, constant term first

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer powmod(const Integer& base, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer eval_mod(const IntPoly& p, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = mod(acc * x + p[i], m);
  return acc;
}

IntPoly derivative_int(const IntPoly& p) {
  IntPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  return out;
}

bool invertible_mod(const Integer& a, const Integer& m, Integer& inv) {
  return mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0;
}

// Degree of gcd(a, b) over F_p; used to detect repeated roots mod p.
long gcd_degree_mod(IntPoly a, IntPoly b, const Integer& p) {
  auto normalize = [&](IntPoly& q) {
    for (auto& c : q) c = mod(c, p);
    while (!q.empty() && q.back() == 0) q.pop_back();
  };
  normalize(a);
  normalize(b);
  while (!b.empty()) {
    Integer inv;
    invertible_mod(b.back(), p, inv);
    while (a.size() >= b.size()) {
      Integer c = mod(a.back() * inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod(a[shift + j] - c * b[j], p);
      normalize(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<long>(a.size()) - 1;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// A primitive m-th root of unity modulo the prime p (p = 1 mod m).
Integer primitive_root_mod(long m, long p) {
  const auto factors = prime_factors(m);
  for (long a = 2; a < p; ++a) {
    Integer r = powmod(a, (p - 1) / m, p);
    bool primitive = true;
    for (long q : factors) {
      if (powmod(r, m / q, p) == 1) primitive = false;
    }
    if (m == 1) primitive = r == 1;
    if (primitive) return r;
  }
  return 1;
}

// Newton lift of a simple root of `f` from mod p to mod p^N.
Integer hensel_lift(const IntPoly& f, Integer root, long p, long N) {
  const IntPoly df = derivative_int(f);
  Integer modulus = p;
  long precision = 1;
  Integer pN;
  mpz_ui_pow_ui(pN.get_mpz_t(), p, N);
  while (precision < N) {
    precision = std::min(2 * precision, N);
    mpz_ui_pow_ui(modulus.get_mpz_t(), p, precision);
    Integer inv;
    if (!invertible_mod(eval_mod(df, root, modulus), modulus, inv)) {
      throw Error(ErrorKind::InconsistentValues, "Hensel lifting hit a repeated root");
    }
    root = mod(root - eval_mod(f, root, modulus) * inv, modulus);
  }
  return mod(root, pN);
}

struct IntegralPoly {
  // h(x) = D^n f(x / D), coefficients in Z[zeta] as numerator vectors.
  std::vector<std::vector<Integer>> coefficients;
  Integer scale;  // D
};

IntegralPoly clear_denominators(const CyclotomicField& field, const FieldPoly& monic) {
  IntegralPoly out;
  out.scale = 1;
  for (const auto& c : monic) out.scale = lcm(out.scale, c.in(field).denominator());
  const std::size_t n = monic.size() - 1;
  Integer power = 1;  // D^(n-i) for i = n, n-1, ...
  out.coefficients.assign(monic.size(), std::vector<Integer>(field.degree(), 0));
  for (std::size_t i = monic.size(); i-- > 0;) {
    FieldElement c = monic[i].in(field) * FieldElement(Rational(power));
    const auto& num = c.numerators();
    for (std::size_t j = 0; j < num.size(); ++j) {
      // c is integral by construction
      out.coefficients[i][j] = num[j];
    }
    if (c.denominator() != 1) throw Error(ErrorKind::InconsistentValues, "denominator clearing failed");
    power *= out.scale;
  }
  (void)n;
  return out;
}

// Image of the integral polynomial under zeta -> R, reduced mod `modulus`.
IntPoly specialize(const IntegralPoly& h, const Integer& r, const Integer& modulus) {
  IntPoly out;
  for (const auto& coeff : h.coefficients) {
    Integer acc = 0;
    Integer rp = 1;
    for (const auto& c : coeff) {
      acc += c * rp;
      rp = mod(rp * r, modulus);
    }
    out.push_back(mod(acc, modulus));
  }
  return out;
}

// Upper bound for the power-basis coefficients of any root of h, from the
// Cauchy bound in every complex embedding and the inverse embedding matrix.
double coefficient_bound(const CyclotomicField& field, const IntegralPoly& h) {
  const long m = field.conductor();
  const int phi = field.degree();
  const auto& exps = field.galois_exponents();
  const double two_pi = 2.0 * std::acos(-1.0);
  double cauchy = 0;
  for (long k : exps) {
    double max_coeff = 0;
    for (std::size_t i = 0; i + 1 < h.coefficients.size(); ++i) {
      std::complex<double> v = 0;
      for (int j = 0; j < phi; ++j) {
        v += h.coefficients[i][j].get_d() * std::polar(1.0, two_pi * static_cast<double>(k * j % m) / m);
      }
      max_coeff = std::max(max_coeff, std::abs(v));
    }
    cauchy = std::max(cauchy, 1.0 + max_coeff);
  }
  Eigen::MatrixXcd v(phi, phi);
  for (int a = 0; a < phi; ++a) {
    for (int j = 0; j < phi; ++j) v(a, j) = std::polar(1.0, two_pi * static_cast<double>(exps[a] * j % m) / m);
  }
  Eigen::MatrixXcd vinv = v.inverse();
  double norm = 0;
  for (int j = 0; j < phi; ++j) norm = std::max(norm, vinv.row(j).cwiseAbs().sum());
  return norm * cauchy * 1.01 + 1.0;
}

}  // namespace

bool coefficient_less(const FieldElement& a, const FieldElement& b) {
  const CyclotomicField* f = common_field(a, b);
  std::vector<Rational> ca = f ? a.coefficients(*f) : a.coefficients();
  std::vector<Rational> cb = f ? b.coefficients(*f) : b.coefficients();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

std::vector<FieldElement> roots_in_field(const CyclotomicField& field, const FieldPoly& f) {
  FieldPoly g = make_monic(f);
  if (degree(g) < 0) throw Error(ErrorKind::InconsistentValues, "roots of the zero polynomial");
  std::vector<FieldElement> roots;
  if (degree(g) == 0) return roots;
  g = squarefree_part(g);
  for (auto& c : g) c = c.in(field);
  if (degree(g) == 1) {
    roots.push_back(-g[0]);
    return roots;
  }

  const long m = field.conductor();
  const int phi = field.degree();
  const IntegralPoly h = clear_denominators(field, g);
  const FieldElement scale_inv(field, Rational(1) / Rational(h.scale));

  // Smallest prime p = 1 mod m (p > deg) where h stays squarefree.
  long p = 0;
  Integer r_mod_p;
  IntPoly hp;
  for (long cand = m + 1;; cand += m) {
    if (!is_prime(cand) || cand <= static_cast<long>(g.size())) continue;
    Integer r = primitive_root_mod(m, cand);
    IntPoly spec = specialize(h, r, cand);
    if (spec.back() == 0) continue;
    if (gcd_degree_mod(spec, derivative_int(spec), cand) != 0) continue;
    p = cand;
    r_mod_p = r;
    hp = spec;
    break;
  }
  std::vector<Integer> residues;
  for (long x = 0; x < p; ++x) {
    if (eval_mod(hp, x, p) == 0) residues.push_back(x);
  }
  if (residues.empty()) return roots;

  const double bound = coefficient_bound(field, h);
  // Require p^(N/phi) comfortably above 2^phi * sqrt(phi) * bound.
  const double needed = (phi + 2.0) * std::log(2.0) + 0.5 * std::log(phi) + std::log(bound);
  long N = std::max<long>(1, static_cast<long>(std::ceil(phi * needed / std::log(static_cast<double>(p)))));

  const IntPoly phi_m = cyclotomic_polynomial(m);
  std::vector<bool> done(residues.size(), false);
  for (int attempt = 0; attempt < 3; ++attempt) {
    Integer pN;
    mpz_ui_pow_ui(pN.get_mpz_t(), p, N);
    Integer R = hensel_lift(phi_m, r_mod_p, p, N);
    IntegerMatrix basis(phi, phi);
    basis.setConstant(Integer(0));
    basis(0, 0) = pN;
    Integer rp = 1;
    for (int j = 1; j < phi; ++j) {
      rp = mod(rp * R, pN);
      basis(j, 0) = mod(-rp, pN);
      basis(j, j) = 1;
    }
    lll_reduce(basis);
    IntPoly hN = specialize(h, R, pN);
    for (std::size_t i = 0; i < residues.size(); ++i) {
      if (done[i]) continue;
      Integer lifted = hensel_lift(hN, residues[i], p, N);
      IntegerVector target(phi);
      target.setConstant(Integer(0));
      target(0) = lifted;
      IntegerVector c = babai_residual(basis, target);
      FieldElement candidate = FieldElement::from_raw(&field, std::vector<Integer>(c.data(), c.data() + phi), 1) *
                               scale_inv;
      if (evaluate(g, candidate).is_zero()) {
        roots.push_back(candidate);
        done[i] = true;
      }
    }
    if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) break;
    N *= 2;
  }
  std::sort(roots.begin(), roots.end(), coefficient_less);
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace hecke
