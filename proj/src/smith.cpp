#include "hecke/smith.hpp"

#include "hecke/linalg.hpp"

namespace hecke {

namespace {

struct Reducer {
  IntegerMatrix a, left, right, u, v;

  explicit Reducer(const IntegerMatrix& m)
      : a(m),
        left(integer_identity(m.rows())),
        right(integer_identity(m.cols())),
        u(integer_identity(m.rows())),
        v(integer_identity(m.cols())) {}

  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    left.row(i).swap(left.row(j));
    u.col(i).swap(u.col(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.col(i).swap(a.col(j));
    right.col(i).swap(right.col(j));
    v.row(i).swap(v.row(j));
  }
  // row_i += k * row_j
  void add_row(Eigen::Index i, Eigen::Index j, const Integer& k) {
    if (k == 0) return;
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(i, c) += k * a(j, c);
    for (Eigen::Index c = 0; c < left.cols(); ++c) left(i, c) += k * left(j, c);
    for (Eigen::Index r = 0; r < u.rows(); ++r) u(r, j) -= k * u(r, i);
  }
  // col_i += k * col_j
  void add_col(Eigen::Index i, Eigen::Index j, const Integer& k) {
    if (k == 0) return;
    for (Eigen::Index r = 0; r < a.rows(); ++r) a(r, i) += k * a(r, j);
    for (Eigen::Index r = 0; r < right.rows(); ++r) right(r, i) += k * right(r, j);
    for (Eigen::Index c = 0; c < v.cols(); ++c) v(j, c) -= k * v(i, c);
  }
  void negate_row(Eigen::Index i) {
    a.row(i) = -a.row(i);
    left.row(i) = -left.row(i);
    u.col(i) = -u.col(i);
  }

  bool smallest_in_block(Eigen::Index t, Eigen::Index& pi, Eigen::Index& pj) const {
    bool found = false;
    for (Eigen::Index i = t; i < a.rows(); ++i) {
      for (Eigen::Index j = t; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        if (!found || abs(a(i, j)) < abs(a(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    return found;
  }

  void run() {
    const Eigen::Index n = std::min(a.rows(), a.cols());
    for (Eigen::Index t = 0; t < n; ++t) {
      Eigen::Index pi = t, pj = t;
      if (!smallest_in_block(t, pi, pj)) return;
      swap_rows(t, pi);
      swap_cols(t, pj);
      for (;;) {
        bool dirty = false;
        for (Eigen::Index i = t + 1; i < a.rows(); ++i) {
          if (a(i, t) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (a(i, t) != 0) {
            swap_rows(t, i);
            dirty = true;
          }
        }
        for (Eigen::Index j = t + 1; j < a.cols(); ++j) {
          if (a(t, j) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (a(t, j) != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
        if (dirty) continue;
        // Pivot now isolated; enforce divisibility of the remaining block.
        bool fixed = false;
        for (Eigen::Index i = t + 1; i < a.rows() && !fixed; ++i) {
          for (Eigen::Index j = t + 1; j < a.cols(); ++j) {
            if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              add_row(t, i, 1);
              fixed = true;
              break;
            }
          }
        }
        if (!fixed) break;
      }
      if (a(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

IntegerMatrix integer_identity(Eigen::Index n) {
  IntegerMatrix id(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) id(i, j) = i == j ? 1 : 0;
  }
  return id;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (Eigen::Index i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

Eigen::Index SmithForm::rank() const {
  Eigen::Index r = 0;
  for (const auto& d : diagonal()) r += d != 0;
  return r;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  Reducer red(m);
  red.run();
  SmithForm out;
  out.S = std::move(red.a);
  out.U = std::move(red.u);
  out.V = std::move(red.v);
  out.left = std::move(red.left);
  out.right = std::move(red.right);
  return out;
}

Cokernel cokernel(const SmithForm& snf) {
  Cokernel c;
  c.free_rank = snf.S.rows() - snf.rank();
  for (const auto& d : snf.diagonal()) {
    if (d > 1) c.torsion.push_back(d);
  }
  return c;
}

std::optional<IntegerMatrix> integer_left_inverse(const IntegerMatrix& m) {
  SmithForm snf = smith_normal_form(m);
  const Eigen::Index n = m.cols();
  if (m.rows() < n) return std::nullopt;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (snf.S(i, i) != 1) return std::nullopt;
  }
  // left * M * right = [I; 0]  =>  (right * [I 0] * left) * M = I.
  IntegerMatrix x = snf.right * snf.left.topRows(n);
  return x;
}

}  // namespace hecke
