#include "hecke/linalg.hpp"

namespace hecke {

Integer determinant_bareiss(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InconsistentValues, "determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  Integer previous = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.row(p).swap(m.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace hecke
