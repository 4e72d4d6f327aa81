#pragma once

#include "int_matrix.hpp"

#include <optional>

namespace contrakit {

/// left * A * right = diag(d_1, ..., d_rank, 0, ...), d_i | d_{i+1}, d_i > 0.
/// right_inv is kept alongside right since canonical generators are its rows.
struct SmithForm {
  IntVec diag;
  std::size_t rank = 0;
  IntMatrix left, right, right_inv;

  /// All nonzero diagonal entries, units included.
  const IntVec &invariant_factors() const { return diag; }

  /// Torsion of the cokernel Z^cols / rowspace(A): entries different from 1.
  IntVec cokernel_torsion() const {
    IntVec out;
    for (auto &d : diag)
      if (d != 1) out.push_back(d);
    return out;
  }
  std::size_t cokernel_free_rank() const { return right.rows() - rank; }
};

namespace detail {

inline bool find_min_pivot(const IntMatrix &a, std::size_t t, std::size_t &pi, std::size_t &pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Int &v = a(i, j);
      if (v == 0) continue;
      Int av = abs(v);
      if (!found || av < best) {
        found = true;
        best = av;
        pi = i;
        pj = j;
      }
    }
  return found;
}

} // namespace detail

/// Smith normal form. Pivot is the minimal-absolute-value nonzero entry of
/// the remaining block, first in row-major order.
inline SmithForm smith(const IntMatrix &A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix D = A;
  SmithForm sf;
  sf.left = IntMatrix::identity(m);
  sf.right = IntMatrix::identity(n);
  sf.right_inv = IntMatrix::identity(n);

  auto row_add = [&](std::size_t dst, std::size_t src, const Int &q) {
    D.add_row(dst, src, q);
    sf.left.add_row(dst, src, q);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    sf.left.swap_rows(a, b);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int &q) {
    D.add_col(dst, src, q);
    sf.right.add_col(dst, src, q);
    sf.right_inv.add_row(src, dst, -q);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    sf.right.swap_cols(a, b);
    sf.right_inv.swap_rows(a, b);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!detail::find_min_pivot(D, t, pi, pj)) break;
    for (;;) {
      row_swap(t, pi);
      col_swap(t, pj);
      const Int piv = D(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_add(i, t, -(D(i, t) / piv));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_add(j, t, -(D(t, j) / piv));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        detail::find_min_pivot(D, t, pi, pj);
        continue;
      }
      // Row and column are clear; enforce divisibility on the rest.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % piv != 0) {
            row_add(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
      detail::find_min_pivot(D, t, pi, pj);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      sf.left.negate_row(t);
    }
    sf.diag.push_back(D(t, t));
  }
  sf.rank = sf.diag.size();
  return sf;
}

/// Solve x * A = b. Returns nullopt when b is not in the row lattice of A.
inline std::optional<IntVec> solve_left(const SmithForm &sf, const IntVec &b) {
  const std::size_t m = sf.left.rows();
  IntVec c = vec_mul(b, sf.right);
  IntVec z(m);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < sf.rank) {
      if (c[i] % sf.diag[i] != 0) return std::nullopt;
      z[i] = c[i] / sf.diag[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return vec_mul(z, sf.left);
}

inline std::optional<IntVec> solve_left(const IntMatrix &A, const IntVec &b) {
  return solve_left(smith(A), b);
}

inline bool in_row_lattice(const SmithForm &sf, const IntVec &b) {
  return solve_left(sf, b).has_value();
}

/// Basis (as rows) of { x : x * A = 0 }.
inline IntMatrix left_kernel(const SmithForm &sf) {
  const std::size_t m = sf.left.rows();
  return sf.left.submatrix(sf.rank, m, 0, sf.left.cols());
}

/// Basis (as rows) of the row lattice of A.
inline IntMatrix row_lattice_basis(const SmithForm &sf) {
  const std::size_t n = sf.right_inv.cols();
  IntMatrix B(sf.rank, n);
  for (std::size_t i = 0; i < sf.rank; ++i)
    for (std::size_t j = 0; j < n; ++j) B(i, j) = sf.diag[i] * sf.right_inv(i, j);
  return B;
}

} // namespace contrakit
