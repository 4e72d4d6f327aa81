#pragma once
// Independent reference computations used only by the tests.

#include <contrakit/int_matrix.hpp>

#include <functional>
#include <random>

namespace oracle {

using contrakit::Int;
using contrakit::IntMatrix;

/// Fraction-free Gaussian elimination determinant.
inline Int bareiss_det(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t> &)> &f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Determinantal divisors D_k = gcd of all k x k minors; d_k = D_k / D_{k-1}.
inline std::vector<Int> invariant_factors_by_minors(const IntMatrix &a) {
  std::vector<Int> out;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    Int g = 0;
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t> &r) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t> &c) {
        IntMatrix s(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) s(i, j) = a(r[i], c[j]);
        g = contrakit::gcd(g, bareiss_det(s));
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

/// Product of random elementary operations: unimodular by construction.
inline IntMatrix random_unimodular(std::mt19937_64 &rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && rng() % 2) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> q(-3, 3);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) {
      u.negate_row(a);
      continue;
    }
    if (rng() % 4 == 0) u.swap_rows(a, b);
    else u.add_row(a, b, q(rng));
  }
  return u;
}

} // namespace oracle
