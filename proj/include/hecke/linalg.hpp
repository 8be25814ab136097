#pragma once

// Exact elimination over fields (Rational, FieldElement) held in Eigen
// containers. Everything here is a free function templated on the scalar.

#include <optional>
#include <utility>
#include <vector>

#include "hecke/eigen_support.hpp"
#include "hecke/error.hpp"

namespace hecke {

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

inline FieldElement scalar_inverse(const FieldElement& x) { return x.inverse(); }
inline Rational scalar_inverse(const Rational& x) {
  if (sgn(x) == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return Rational(1) / x;
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!is_zero(m.coeff(i, j))) return false;
    }
  }
  return true;
}

template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;            // reduced row echelon form, zero rows last
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination. Pivot search takes the first nonzero entry in
/// each column so results are deterministic.
template <class Scalar>
Echelon<Scalar> rref(Matrix<Scalar> m) {
  Echelon<Scalar> out;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    Scalar inv = scalar_inverse(Scalar(m(r, c)));
    for (Eigen::Index k = c; k < cols; ++k) {
      if (!is_zero(m(r, k))) m(r, k) = m(r, k) * inv;
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Scalar factor = m(i, c);
      for (Eigen::Index k = c; k < cols; ++k) {
        if (!is_zero(m(r, k))) m(i, k) -= factor * m(r, k);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

/// Rank via forward elimination only (no back substitution).
template <class Scalar>
Eigen::Index rank(Matrix<Scalar> m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    Scalar inv = scalar_inverse(Scalar(m(r, c)));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (is_zero(m(i, c))) continue;
      Scalar factor = m(i, c) * inv;
      for (Eigen::Index k = c; k < cols; ++k) {
        if (!is_zero(m(r, k))) m(i, k) -= factor * m(r, k);
      }
    }
    ++r;
  }
  return r;
}

/// Columns form a basis of {x : m x = 0}, one per free column, in RREF order.
template <class Scalar>
Matrix<Scalar> nullspace(const Matrix<Scalar>& m) {
  Echelon<Scalar> e = rref(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  Matrix<Scalar> basis(cols, cols - e.rank());
  basis.setConstant(Scalar(0));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = Scalar(1);
    for (Eigen::Index i = 0; i < e.rank(); ++i) {
      if (!is_zero(e.reduced(i, free))) basis(e.pivots[i], k) = -e.reduced(i, free);
    }
    ++k;
  }
  return basis;
}

/// Some x with a x = b, or nullopt if the system is inconsistent.
template <class Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  Echelon<Scalar> e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector<Scalar> x(a.cols());
  x.setConstant(Scalar(0));
  for (Eigen::Index i = 0; i < e.rank(); ++i) x(e.pivots[i]) = e.reduced(i, a.cols());
  return x;
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InconsistentValues, "determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = scalar_inverse(Scalar(m(c, c)));
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      Scalar factor = m(i, c) * inv;
      for (Eigen::Index k = c; k < n; ++k) {
        if (!is_zero(m(c, k))) m(i, k) -= factor * m(c, k);
      }
    }
  }
  return det;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
Integer determinant_bareiss(IntegerMatrix m);

template <class Scalar>
std::optional<Matrix<Scalar>> inverse(const Matrix<Scalar>& m) {
  const Eigen::Index n = m.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  Echelon<Scalar> e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return Matrix<Scalar>(e.reduced.rightCols(n));
}

/// Indices of a maximal linearly independent subset of the columns, scanning
/// left to right.
template <class Scalar>
std::vector<Eigen::Index> independent_columns(const Matrix<Scalar>& m) {
  return rref(m).pivots;
}

}  // namespace hecke
