#pragma once

#include "fpmod.hpp"

#include <cstdint>
#include <cstdlib>
#include <algorithm>
#include <map>
#include <numeric>

namespace contrakit {

inline std::int64_t default_enum_bound() {
  if (const char *env = std::getenv("CONTRAKIT_MAX_ENUM")) {
    char *end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1'000'000;
}

/// Upper-triangular row basis of the relation lattice by plain Euclidean
/// row elimination. Deliberately independent of the Smith form code.
/// Returns false when the lattice is not of full rank (infinite quotient).
inline bool hermite_basis(const IntMatrix &A, std::size_t g, IntMatrix &H) {
  std::vector<IntVec> rows = A.to_rows();
  H = IntMatrix(g, g);
  std::size_t top = 0;
  for (std::size_t c = 0; c < g; ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) return false;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[top][c];
        for (std::size_t j = c; j < g; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] < 0)
      for (auto &v : rows[top]) v = -v;
    ++top;
  }
  for (std::size_t i = 0; i < g; ++i) H.set_row(i, rows[i]);
  // Reduce entries above the diagonal into [0, pivot).
  for (std::size_t c = 0; c < g; ++c)
    for (std::size_t i = 0; i < c; ++i) {
      Int q = floor_div(H(i, c), H(c, c));
      if (q != 0) H.add_row(i, c, -q);
    }
  return true;
}

/// Complete listing of a finite group Z^g / L. Elements are indices into a
/// mixed-radix box given by the Hermite basis of L.
class Enumeration {
public:
  using Coords = std::vector<std::int64_t>;

  Enumeration(const IntMatrix &presentation, std::int64_t bound = default_enum_bound())
      : g_(presentation.cols()) {
    IntMatrix H;
    if (!hermite_basis(presentation, g_, H)) throw InfiniteModule();
    Int order = 1;
    for (std::size_t c = 0; c < g_; ++c) order *= H(c, c);
    if (order > bound)
      throw OrderBoundExceeded("order " + order.str() + " exceeds bound " + std::to_string(bound));
    order_ = static_cast<std::int64_t>(order);
    h_.assign(g_ * g_, 0);
    for (std::size_t i = 0; i < g_; ++i)
      for (std::size_t j = 0; j < g_; ++j) h_[i * g_ + j] = static_cast<std::int64_t>(H(i, j));
  }
  explicit Enumeration(const FPModule &m, std::int64_t bound = default_enum_bound())
      : Enumeration(m.presentation(), bound) {}

  std::int64_t size() const { return order_; }
  std::size_t gens() const { return g_; }

  Coords coords(std::int64_t idx) const {
    Coords x(g_);
    for (std::size_t c = g_; c-- > 0;) {
      std::int64_t r = h_[c * g_ + c];
      x[c] = idx % r;
      idx /= r;
    }
    return x;
  }
  std::int64_t index(const Coords &x) const {
    std::int64_t idx = 0;
    for (std::size_t c = 0; c < g_; ++c) idx = idx * h_[c * g_ + c] + x[c];
    return idx;
  }

  /// Reduce an arbitrary integer vector into the box.
  std::int64_t reduce(Coords x) const {
    for (std::size_t c = 0; c < g_; ++c) {
      std::int64_t d = h_[c * g_ + c];
      std::int64_t q = x[c] / d;
      if (x[c] % d < 0) --q;
      if (q != 0)
        for (std::size_t j = c; j < g_; ++j) x[j] -= q * h_[c * g_ + j];
    }
    return index(x);
  }
  std::int64_t reduce(const IntVec &x) const {
    Coords y(g_);
    // Bring coordinates into a small range first so int64 never overflows.
    IntVec v = x;
    for (std::size_t c = 0; c < g_; ++c) {
      Int d = h_[c * g_ + c];
      Int q = floor_div(v[c], d);
      if (q != 0)
        for (std::size_t j = c; j < g_; ++j) v[j] -= q * Int(h_[c * g_ + j]);
      y[c] = static_cast<std::int64_t>(v[c]);
    }
    return index(y);
  }

  std::int64_t zero() const { return 0; }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    Coords x = coords(a), y = coords(b);
    for (std::size_t c = 0; c < g_; ++c) x[c] += y[c];
    return reduce(x);
  }
  std::int64_t neg(std::int64_t a) const {
    Coords x = coords(a);
    for (auto &v : x) v = -v;
    return reduce(x);
  }
  /// k * a by double-and-add, so coordinates stay small.
  std::int64_t scale(std::int64_t a, std::int64_t k) const {
    k %= order_;
    if (k < 0) k += order_;
    std::int64_t r = 0;
    while (k) {
      if (k & 1) r = add(r, a);
      a = add(a, a);
      k >>= 1;
    }
    return r;
  }
  /// The element represented by generator j.
  std::int64_t generator(std::size_t j) const {
    Coords x(g_);
    x[j] = 1;
    return reduce(x);
  }

  /// Additive orders of all elements, computed prime by prime.
  const std::vector<std::int64_t> &orders() const {
    if (!orders_.empty() || order_ == 0) return orders_;
    orders_.assign(order_, 1);
    auto f = factorize(order_);
    for (std::int64_t e = 0; e < order_; ++e) {
      std::int64_t o = 1;
      for (auto &[P, v] : f) {
        std::int64_t p = static_cast<std::int64_t>(P);
        std::int64_t cof = order_;
        while (cof % p == 0) cof /= p;
        std::int64_t y = scale(e, cof);
        while (y != 0) {
          y = scale(y, p);
          o *= p;
        }
      }
      orders_[e] = o;
    }
    return orders_;
  }

  std::int64_t exponent() const {
    std::int64_t e = 1;
    for (auto o : orders()) e = std::lcm(e, o);
    return e;
  }

  /// Number of x with k x = 0.
  std::int64_t count_killed_by(std::int64_t k) const {
    std::int64_t n = 0;
    for (auto o : orders())
      if (k % o == 0) ++n;
    return n;
  }

  /// Invariant factors recovered from the sizes of the p^j-torsion subgroups.
  IntVec invariants_by_counting() const {
    std::vector<std::map<std::int64_t, int>> parts; // per prime: exponent list
    std::vector<std::vector<std::int64_t>> factor_lists;
    for (auto &[P, v] : factorize(order_)) {
      std::int64_t p = static_cast<std::int64_t>(P);
      // c[j] = log_p |G[p^j]|
      std::vector<int> c{0};
      std::int64_t pj = 1;
      for (;;) {
        pj *= p;
        std::int64_t cnt = count_killed_by(pj);
        int lg = 0;
        while (cnt > 1) {
          cnt /= p;
          ++lg;
        }
        if (lg == c.back()) break;
        c.push_back(lg);
      }
      // number of cyclic factors of exponent >= j is c[j] - c[j-1]
      std::vector<std::int64_t> exps;
      for (std::size_t j = 1; j < c.size(); ++j) {
        int ge_j = c[j] - c[j - 1];
        int ge_next = j + 1 < c.size() ? c[j + 1] - c[j] : 0;
        std::int64_t pe = 1;
        for (std::size_t t = 0; t < j; ++t) pe *= p;
        for (int t = 0; t < ge_j - ge_next; ++t) exps.push_back(pe);
      }
      std::sort(exps.begin(), exps.end(), std::greater<>());
      factor_lists.push_back(exps);
    }
    std::size_t len = 0;
    for (auto &l : factor_lists) len = std::max(len, l.size());
    IntVec inv(len, 1);
    for (auto &l : factor_lists)
      for (std::size_t i = 0; i < l.size(); ++i) inv[i] *= l[i];
    std::reverse(inv.begin(), inv.end());
    return inv;
  }

private:
  std::size_t g_;
  std::int64_t order_ = 0;
  std::vector<std::int64_t> h_;
  mutable std::vector<std::int64_t> orders_;
};

/// Count homomorphisms m -> n by trying every assignment of generator images.
inline std::int64_t count_homs_brute(const FPModule &m, const FPModule &n,
                                     std::int64_t bound = default_enum_bound()) {
  Enumeration en(n, bound);
  const std::size_t g = m.gens();
  Int combos = pow(Int(en.size()), static_cast<unsigned>(g));
  if (combos > bound) throw OrderBoundExceeded("hom search space too large");
  const IntMatrix &rel = m.presentation();
  std::vector<std::int64_t> img(g, 0);
  std::int64_t count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < rel.rows() && ok; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < g; ++j) {
        if (rel(i, j) == 0) continue;
        Int k = mod(rel(i, j), Int(en.size()));
        acc = en.add(acc, en.scale(img[j], static_cast<std::int64_t>(k)));
      }
      ok = acc == 0;
    }
    if (ok) ++count;
    std::size_t j = 0;
    while (j < g && ++img[j] == en.size()) img[j++] = 0;
    if (j == g) break;
  }
  return count;
}

/// Order of m (x) n from the bilinear presentation, counted by enumeration.
inline std::int64_t count_tensor_brute(const FPModule &m, const FPModule &n,
                                       std::int64_t bound = default_enum_bound()) {
  const std::size_t gm = m.gens(), gn = n.gens();
  const IntMatrix &A = m.presentation(), &B = n.presentation();
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t l = 0; l < gn; ++l) {
      IntVec r(gm * gn);
      for (std::size_t j = 0; j < gm; ++j) r[j * gn + l] = A(i, j);
      rows.push_back(r);
    }
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < gm; ++j) {
      IntVec r(gm * gn);
      for (std::size_t l = 0; l < gn; ++l) r[j * gn + l] = B(i, l);
      rows.push_back(r);
    }
  return Enumeration(IntMatrix::from_rows(rows, gm * gn), bound).size();
}

/// |Tor_1(m, n)|: tuples in n^k killed by the relation lattice basis of m.
/// The lattice basis comes from the Hermite elimination, not the Smith form.
inline std::int64_t count_tor_brute(const FPModule &m, const FPModule &n,
                                    std::int64_t bound = default_enum_bound()) {
  Enumeration en(n, bound);
  // Hermite elimination on the relations of m, keeping nonzero rows.
  std::vector<IntVec> rows = m.presentation().to_rows();
  const std::size_t g = m.gens();
  std::vector<IntVec> basis;
  std::size_t top = 0;
  for (std::size_t c = 0; c < g; ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[top][c];
        for (std::size_t j = c; j < g; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) {
        basis.push_back(rows[top]);
        ++top;
        break;
      }
    }
  }
  const std::size_t k = basis.size();
  Int combos = pow(Int(en.size()), static_cast<unsigned>(k));
  if (combos > bound) throw OrderBoundExceeded("tor search space too large");
  std::vector<std::int64_t> y(k, 0);
  std::int64_t count = 0;
  const std::int64_t ord = en.size();
  for (;;) {
    bool ok = true;
    for (std::size_t j = 0; j < g && ok; ++j) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (basis[i][j] == 0) continue;
        acc = en.add(acc, en.scale(y[i], static_cast<std::int64_t>(mod(basis[i][j], Int(ord)))));
      }
      ok = acc == 0;
    }
    if (ok) ++count;
    std::size_t i = 0;
    while (i < k && ++y[i] == ord) y[i++] = 0;
    if (i == k) break;
  }
  return count;
}

/// |n / a n| by enumerating the image of multiplication by a.
inline std::int64_t count_coker_scalar_brute(const FPModule &n, std::int64_t a,
                                             std::int64_t bound = default_enum_bound()) {
  Enumeration en(n, bound);
  std::vector<char> hit(en.size(), 0);
  std::int64_t img = 0;
  for (std::int64_t e = 0; e < en.size(); ++e) {
    std::int64_t y = en.scale(e, a);
    if (!hit[y]) {
      hit[y] = 1;
      ++img;
    }
  }
  return en.size() / img;
}

} // namespace contrakit
