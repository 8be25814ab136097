#include "hecke/lattice.hpp"

#include <vector>

#include "hecke/error.hpp"

namespace hecke {

namespace {

Integer dot_rows(const IntegerMatrix& b, Eigen::Index i, Eigen::Index j) {
  Integer s = 0;
  for (Eigen::Index c = 0; c < b.cols(); ++c) mpz_addmul(s.get_mpz_t(), b(i, c).get_mpz_t(), b(j, c).get_mpz_t());
  return s;
}

Integer exact_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Nearest integer to a / b for b > 0, ties rounded up.
Integer round_div(const Integer& a, const Integer& b) {
  Integer num = 2 * a + b;
  Integer den = 2 * b;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

// Integral LLL with the d_i / lambda_{k,j} bookkeeping; indices below are
// 1-based to keep d_0 = 1 in slot 0.
void lll_reduce(IntegerMatrix& basis) {
  const Eigen::Index n = basis.rows();
  if (n <= 1) return;
  std::vector<Integer> d(n + 1, 0);
  std::vector<std::vector<Integer>> lambda(n + 1, std::vector<Integer>(n + 1, 0));
  auto row = [](Eigen::Index i) { return i - 1; };

  auto red = [&](Eigen::Index k, Eigen::Index l) {
    Integer twice = 2 * lambda[k][l];
    if (abs(twice) <= d[l]) return;
    Integer q = round_div(lambda[k][l], d[l]);
    basis.row(row(k)) -= q * basis.row(row(l));
    lambda[k][l] -= q * d[l];
    for (Eigen::Index i = 1; i < l; ++i) lambda[k][i] -= q * lambda[l][i];
  };

  Eigen::Index kmax = 1;
  d[0] = 1;
  d[1] = dot_rows(basis, 0, 0);
  Eigen::Index k = 2;

  auto swap = [&](Eigen::Index k) {
    basis.row(row(k)).swap(basis.row(row(k - 1)));
    for (Eigen::Index j = 1; j <= k - 2; ++j) std::swap(lambda[k][j], lambda[k - 1][j]);
    Integer lam = lambda[k][k - 1];
    Integer b = exact_div(d[k - 2] * d[k] + lam * lam, d[k - 1]);
    for (Eigen::Index i = k + 1; i <= kmax; ++i) {
      Integer t = lambda[i][k];
      lambda[i][k] = exact_div(d[k] * lambda[i][k - 1] - lam * t, d[k - 1]);
      lambda[i][k - 1] = exact_div(b * t + lam * lambda[i][k], d[k]);
    }
    d[k - 1] = b;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (Eigen::Index j = 1; j <= k; ++j) {
        Integer u = dot_rows(basis, row(k), row(j));
        for (Eigen::Index i = 1; i < j; ++i) u = exact_div(d[i] * u - lambda[k][i] * lambda[j][i], d[i - 1]);
        if (j < k) {
          lambda[k][j] = u;
        } else {
          if (u == 0) throw Error(ErrorKind::InconsistentValues, "lattice basis is linearly dependent");
          d[k] = u;
        }
      }
    }
    for (;;) {
      red(k, k - 1);
      if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lambda[k][k - 1] * lambda[k][k - 1]) {
        swap(k);
        k = std::max<Eigen::Index>(2, k - 1);
        continue;
      }
      for (Eigen::Index l = k - 2; l >= 1; --l) red(k, l);
      ++k;
      break;
    }
  }
}

IntegerVector babai_residual(const IntegerMatrix& basis, const IntegerVector& target) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index dim = basis.cols();
  // Rational Gram-Schmidt.
  std::vector<std::vector<Rational>> star(n, std::vector<Rational>(dim));
  std::vector<Rational> norms(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < dim; ++c) star[i][c] = basis(i, c);
    for (Eigen::Index j = 0; j < i; ++j) {
      Rational num = 0;
      for (Eigen::Index c = 0; c < dim; ++c) num += Rational(basis(i, c)) * star[j][c];
      Rational mu = num / norms[j];
      for (Eigen::Index c = 0; c < dim; ++c) star[i][c] -= mu * star[j][c];
    }
    norms[i] = 0;
    for (Eigen::Index c = 0; c < dim; ++c) norms[i] += star[i][c] * star[i][c];
  }
  IntegerVector residual = target;
  for (Eigen::Index i = n; i-- > 0;) {
    Rational num = 0;
    for (Eigen::Index c = 0; c < dim; ++c) num += Rational(residual(c)) * star[i][c];
    Rational q = num / norms[i];
    // round to nearest integer
    Integer qi;
    Rational shifted = q + Rational(1, 2);
    mpz_fdiv_q(qi.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    if (qi != 0) residual -= qi * basis.row(i).transpose();
  }
  return residual;
}

}  // namespace hecke
