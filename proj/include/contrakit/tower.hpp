#pragma once

#include "summation.hpp"

#include <array>
#include <map>

namespace contrakit {

/// An element of Z[x] / I^K with I = (p, x): the coefficient of x^b is kept
/// modulo p^(K-b), and x^b vanishes for b >= K.
class TowerElement {
public:
  TowerElement() = default;
  TowerElement(const Int &p, unsigned K, std::vector<Int> coeffs = {}) : p_(p), K_(K), c_(std::move(coeffs)) {
    c_.resize(K_, 0);
    for (unsigned b = 0; b < K_; ++b) c_[b] = mod(c_[b], modulus(b));
  }
  static TowerElement monomial(const Int &p, unsigned K, const Int &coeff, unsigned b) {
    std::vector<Int> c(K, 0);
    if (b < K) c[b] = coeff;
    return {p, K, c};
  }

  const Int &prime() const { return p_; }
  unsigned cutoff() const { return K_; }
  const std::vector<Int> &coeffs() const { return c_; }
  Int modulus(unsigned b) const { return pow(p_, K_ - b); }

  friend TowerElement operator+(const TowerElement &a, const TowerElement &b) {
    std::vector<Int> c(a.K_);
    for (unsigned i = 0; i < a.K_; ++i) c[i] = a.c_[i] + b.c_[i];
    return {a.p_, a.K_, c};
  }
  friend TowerElement operator-(const TowerElement &a, const TowerElement &b) {
    std::vector<Int> c(a.K_);
    for (unsigned i = 0; i < a.K_; ++i) c[i] = a.c_[i] - b.c_[i];
    return {a.p_, a.K_, c};
  }
  friend TowerElement operator*(const TowerElement &a, const TowerElement &b) {
    std::vector<Int> c(a.K_, 0);
    for (unsigned i = 0; i < a.K_; ++i)
      for (unsigned j = 0; i + j < a.K_; ++j) c[i + j] += a.c_[i] * b.c_[j];
    return {a.p_, a.K_, c};
  }
  TowerElement times_p() const {
    std::vector<Int> c = c_;
    for (auto &x : c) x *= p_;
    return {p_, K_, c};
  }
  TowerElement times_x() const {
    std::vector<Int> c(K_, 0);
    for (unsigned b = 0; b + 1 < K_; ++b) c[b + 1] = c_[b];
    return {p_, K_, c};
  }
  bool operator==(const TowerElement &o) const { return p_ == o.p_ && K_ == o.K_ && c_ == o.c_; }
  bool is_zero() const {
    for (auto &x : c_)
      if (x != 0) return false;
    return true;
  }

  /// Membership in I^n: the coefficient of x^b must be divisible by p^(n-b).
  bool in_ideal_power(unsigned n) const {
    if (n > K_) throw PrecisionTooLow("I^" + std::to_string(n) + " beyond cutoff " + std::to_string(K_));
    for (unsigned b = 0; b < n; ++b)
      if (mod(c_[b], pow(p_, n - b)) != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (unsigned b = 0; b < K_; ++b) {
      if (c_[b] == 0) continue;
      if (!s.empty()) s += " + ";
      s += c_[b].str();
      if (b == 1) s += "*x";
      else if (b > 1) s += "*x^" + std::to_string(b);
    }
    return s.empty() ? "0" : s;
  }
  json to_json() const { return jvec(c_); }

private:
  Int p_ = 2;
  unsigned K_ = 1;
  std::vector<Int> c_;
};

// Two-variable carriers: act is s, act_t is t.

/// Z[x] / (p, x)^K with s = p, t = x.
struct TowerCarrier {
  using Elem = TowerElement;
  std::string name = "Tower";
  Int p;
  unsigned K;

  Elem zero() const { return TowerElement(p, K); }
  Elem add(const Elem &a, const Elem &b) const { return a + b; }
  Elem sub(const Elem &a, const Elem &b) const { return a - b; }
  bool equal(const Elem &a, const Elem &b) const { return a == b; }
  Elem act(const Elem &a) const { return a.times_p(); }
  Elem act_t(const Elem &a) const { return a.times_x(); }
  std::size_t horizon() const { return K; }
  template <class Rng> Elem random(Rng &rng) const {
    std::vector<Int> c(K);
    for (auto &x : c) x = Int(static_cast<unsigned long long>(rng()));
    return TowerElement(p, K, c);
  }
  json to_json(const Elem &a) const { return a.to_json(); }
};

/// Z/p^N with s = p and t = p * u.
struct ScalarPairCarrier : ResidueCarrier {
  Int t;
  ScalarPairCarrier(const Int &p, unsigned N, const Int &u) : ResidueCarrier("ScalarPair", pow(p, N), p), t(p * u) {}
  Elem act_t(const Elem &a) const { return mod(a * t, modulus); }
};

/// (Z/m)^2 with s, t given by 2x2 matrices acting on row vectors; used to
/// exercise the commutation check.
struct MatrixPairCarrier {
  using Elem = std::vector<Int>;
  std::string name = "MatrixPair";
  Int m;
  std::array<Int, 4> S, T;
  std::size_t H;

  static Elem apply(const std::array<Int, 4> &M, const Elem &v, const Int &m) {
    return {mod(v[0] * M[0] + v[1] * M[2], m), mod(v[0] * M[1] + v[1] * M[3], m)};
  }
  Elem zero() const { return {0, 0}; }
  Elem add(const Elem &a, const Elem &b) const { return {mod(a[0] + b[0], m), mod(a[1] + b[1], m)}; }
  Elem sub(const Elem &a, const Elem &b) const { return {mod(a[0] - b[0], m), mod(a[1] - b[1], m)}; }
  bool equal(const Elem &a, const Elem &b) const { return sub(a, b) == zero(); }
  Elem act(const Elem &a) const { return apply(S, a, m); }
  Elem act_t(const Elem &a) const { return apply(T, a, m); }
  std::size_t horizon() const { return H; }
  template <class Rng> Elem random(Rng &rng) const {
    return {mod(Int(static_cast<unsigned long long>(rng())), m), mod(Int(static_cast<unsigned long long>(rng())), m)};
  }
  json to_json(const Elem &a) const { return jvec(a); }
};

template <class C> using ArrayFn = std::function<typename C::Elem(std::size_t, std::size_t)>;

template <class C> bool commute_on(const C &c, const typename C::Elem &x) {
  return c.equal(c.act(c.act_t(x)), c.act_t(c.act(x)));
}

/// s-sum of t-sums and t-sum of s-sums; throws NonCommuting when s t != t s on
/// a probe.
template <class C>
std::pair<typename C::Elem, typename C::Elem> two_var_sum(const C &c, const ArrayFn<C> &a,
                                                          const std::vector<typename C::Elem> &probes) {
  for (auto &x : probes)
    if (!commute_on(c, x)) throw NonCommuting("s t x != t s x for x = " + c.to_json(x).dump());
  const std::size_t H = c.horizon();
  auto tsum = [&](const SeqFn<C> &f) {
    typename C::Elem acc = c.zero();
    for (std::size_t n = H; n-- > 0;) acc = c.add(f(n), c.act_t(acc));
    return acc;
  };
  auto rows = sum_s_power<C>(c, [&](std::size_t i) { return tsum([&](std::size_t j) { return a(i, j); }); });
  auto cols = tsum([&](std::size_t j) { return sum_s_power<C>(c, [&](std::size_t i) { return a(i, j); }); });
  return {rows, cols};
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// sum (s+t)^n a_n directly and by the binomial rearrangement.
template <class C>
std::pair<typename C::Elem, typename C::Elem> sum_s_plus_t(const C &c, const SeqFn<C> &a) {
  const std::size_t H = c.horizon();
  typename C::Elem direct = c.zero();
  for (std::size_t n = 2 * H; n-- > 0;) {
    typename C::Elem y = c.add(c.act(direct), c.act_t(direct));
    direct = c.add(a(n), y);
  }
  const bool off = mutated(Mutation::BinomialOffByOne);
  auto coef = [&](std::size_t i, std::size_t j) {
    return binomial(static_cast<unsigned>(i + j), static_cast<unsigned>(off ? i + 1 : i));
  };
  auto scaled = [&](const typename C::Elem &x, const Int &k) {
    typename C::Elem acc = c.zero(), base = x;
    for (Int e = k; e > 0; e >>= 1) {
      if ((e & 1) != 0) acc = c.add(acc, base);
      base = c.add(base, base);
    }
    return acc;
  };
  auto rows = two_var_sum<C>(c, [&](std::size_t i, std::size_t j) { return scaled(a(i + j), coef(i, j)); }, {});
  return {direct, rows.first};
}

/// sum (r s)^n a_n directly and as sum s^n (r^n a_n), with r = 1 + t.
template <class C>
std::pair<typename C::Elem, typename C::Elem> sum_rs(const C &c, const SeqFn<C> &a) {
  auto r = [&](const typename C::Elem &x) { return c.add(x, c.act_t(x)); };
  const std::size_t H = c.horizon();
  typename C::Elem direct = c.zero();
  for (std::size_t n = H; n-- > 0;) direct = c.add(a(n), c.act(r(direct)));
  auto rn = [&](std::size_t n) {
    typename C::Elem x = a(n);
    for (std::size_t k = 0; k < n; ++k) x = r(x);
    return x;
  };
  return {direct, sum_s_power<C>(c, rn)};
}

/// Two-variable axioms, the commutation identity and both substitution formulas.
template <class C, class Rng>
void check_two_var(const C &c, Rng &rng, int trials, Report &out, std::size_t max_side = 8) {
  int f_comm = 0, f_unit = 0, f_binom = 0, f_rs = 0, f_add = 0;
  json w_comm, w_unit, w_binom, w_rs, w_add;
  for (int t = 0; t < trials; ++t) {
    std::size_t rows = 1 + rng() % max_side, cols = 1 + rng() % max_side;
    std::vector<std::vector<typename C::Elem>> arr(rows, std::vector<typename C::Elem>(cols)), brr = arr;
    std::vector<typename C::Elem> probes;
    for (auto &r : arr)
      for (auto &e : r) probes.push_back(e = c.random(rng));
    for (auto &r : brr)
      for (auto &e : r) e = c.random(rng);
    auto A = [&](std::size_t i, std::size_t j) { return i < rows && j < cols ? arr[i][j] : c.zero(); };
    auto B = [&](std::size_t i, std::size_t j) { return i < rows && j < cols ? brr[i][j] : c.zero(); };
    auto [r1, c1] = two_var_sum<C>(c, A, probes);
    if (!c.equal(r1, c1) && f_comm++ == 0) w_comm = {{"trial", t}, {"rows_first", c.to_json(r1)}, {"cols_first", c.to_json(c1)}};
    auto [r2, c2] = two_var_sum<C>(c, [&](std::size_t i, std::size_t j) { return c.add(A(i, j), B(i, j)); }, {});
    auto [r3, c3] = two_var_sum<C>(c, B, {});
    if (!c.equal(r2, c.add(r1, r3)) && f_add++ == 0) w_add = {{"trial", t}};
    (void)c2;
    (void)c3;

    auto v = arr[0][0];
    auto [u1, u2] = two_var_sum<C>(c, [&](std::size_t i, std::size_t j) { return i == 0 && j == 0 ? v : c.zero(); }, {});
    if (!(c.equal(u1, v) && c.equal(u2, v)) && f_unit++ == 0) w_unit = {{"trial", t}, {"v", c.to_json(v)}};

    std::vector<typename C::Elem> seq(1 + rng() % max_side);
    for (auto &x : seq) x = c.random(rng);
    auto S = [&](std::size_t n) { return n < seq.size() ? seq[n] : c.zero(); };
    auto [d1, b1] = sum_s_plus_t<C>(c, S);
    if (!c.equal(d1, b1) && f_binom++ == 0) w_binom = {{"trial", t}, {"direct", c.to_json(d1)}, {"binomial", c.to_json(b1)}};
    auto [d2, b2] = sum_rs<C>(c, S);
    if (!c.equal(d2, b2) && f_rs++ == 0) w_rs = {{"trial", t}, {"direct", c.to_json(d2)}, {"substituted", c.to_json(b2)}};
  }
  out.add(c.name + ": commutation of evaluation orders", f_comm == 0, f_comm ? w_comm : json::object());
  out.add(c.name + ": two-variable additivity", f_add == 0, f_add ? w_add : json::object());
  out.add(c.name + ": two-variable contraunitality", f_unit == 0, f_unit ? w_unit : json::object());
  out.add(c.name + ": (s+t) binomial formula", f_binom == 0, f_binom ? w_binom : json::object());
  out.add(c.name + ": (rs) substitution formula", f_rs == 0, f_rs ? w_rs : json::object());
}

// Constructive Nakayama check over the tower carrier, s = p, t = x.

/// a = p b' + x b'' by coefficient extraction; needs p | constant term.
inline std::pair<TowerElement, TowerElement> split_by_extraction(const TowerElement &a) {
  const Int &p = a.prime();
  const unsigned K = a.cutoff();
  if (a.coeffs()[0] % p != 0)
    throw SplittingFailed("constant term " + a.coeffs()[0].str() + " of " + a.to_string() + " is not divisible by " +
                          p.str());
  std::vector<Int> c1(K, 0), c2(K, 0);
  c1[0] = a.coeffs()[0] / p;
  for (unsigned b = 1; b < K; ++b) c2[b - 1] = a.coeffs()[b];
  return {TowerElement(p, K, c1), TowerElement(p, K, c2)};
}

struct NakayamaTrace {
  std::size_t depth = 0;
  std::vector<TowerElement> level_sums;
  bool telescoping = true;
  bool a0_in_IK = false;
  json witness;
};

using Splitter = std::function<std::pair<TowerElement, TowerElement>(const TowerElement &)>;

/// Replays the double-array construction to depth K: each a_ij is split as
/// p b'_ij + x b''_ij and the pieces move to a_{i+1,j} and a_{i,j+1}. Every
/// level sum sum_{i+j=n} p^i x^j a_ij then equals d0, and the last one lies in I^K.
inline NakayamaTrace nakayama_trace(const TowerElement &d0, unsigned K, const Splitter &split = split_by_extraction) {
  NakayamaTrace tr;
  tr.depth = K;
  std::vector<TowerElement> level{d0};
  auto level_sum = [&](const std::vector<TowerElement> &lv) {
    TowerElement acc(d0.prime(), d0.cutoff());
    for (std::size_t i = 0; i < lv.size(); ++i) {
      TowerElement term = lv[i];
      for (std::size_t k = 0; k < i; ++k) term = term.times_p();
      for (std::size_t k = 0; k + i + 1 < lv.size(); ++k) term = term.times_x();
      acc = acc + term;
    }
    return acc;
  };
  tr.level_sums.push_back(level_sum(level));
  for (unsigned n = 0; n < K; ++n) {
    std::vector<TowerElement> next(n + 2, TowerElement(d0.prime(), d0.cutoff()));
    for (std::size_t i = 0; i <= n; ++i) {
      std::pair<TowerElement, TowerElement> bb;
      try {
        bb = split(level[i]);
      } catch (const SplittingFailed &e) {
        throw SplittingFailed(std::string(e.what()) + " (level " + std::to_string(n) + ", index " + std::to_string(i) +
                              ")");
      }
      if (!(bb.first.times_p() + bb.second.times_x() == level[i]))
        throw SplittingFailed("splitting does not reproduce a_" + std::to_string(i) + "," + std::to_string(n - i));
      next[i + 1] = next[i + 1] + bb.first;
      next[i] = next[i] + bb.second;
    }
    level = std::move(next);
    tr.level_sums.push_back(level_sum(level));
    if (!(tr.level_sums.back() == tr.level_sums.front())) {
      tr.telescoping = false;
      tr.witness = {{"level", n + 1}, {"sum", tr.level_sums.back().to_string()}};
    }
  }
  tr.a0_in_IK = tr.telescoping && tr.level_sums.back().in_ideal_power(std::min(K, d0.cutoff()));
  return tr;
}

// Nested completion for I = (p, x).

struct NestedCompletion {
  TowerElement b;
  std::map<std::pair<unsigned, unsigned>, TowerElement> a; // a_{n1,n2}
  std::vector<TowerElement> stage1;                        // b1_{n1} = sum_j x^j a_{n1,j}
  std::vector<TowerElement> stage2;                        // b2_k = sum_i p^i b1_{k+i}
  bool staged_systems_hold = true;
  bool limit_holds = true;
  json witness;
};

/// Limit of a Cauchy sequence c_1..c_K in R / I^K. The differences are split
/// into monomials p^n1 x^n2 a_{n1,n2} with n1 + n2 = n; pick chooses n2 inside
/// the admissible range [lo, hi].
inline NestedCompletion nested_completion(const std::vector<TowerElement> &c,
                                          const std::function<unsigned(unsigned, unsigned)> &pick = nullptr) {
  if (c.empty()) throw Error("empty sequence");
  const Int p = c[0].prime();
  const unsigned K = c[0].cutoff();
  const std::size_t len = c.size();
  for (std::size_t n = 1; n < len; ++n) {
    TowerElement d = c[n] - c[n - 1];
    if (!d.in_ideal_power(std::min<unsigned>(static_cast<unsigned>(n), K)))
      throw NotCauchy("c_" + std::to_string(n + 1) + " - c_" + std::to_string(n) + " = " + d.to_string() +
                      " is not in I^" + std::to_string(n));
  }
  NestedCompletion r;
  auto put = [&](unsigned n1, unsigned n2, const TowerElement &x) {
    auto it = r.a.find({n1, n2});
    if (it == r.a.end()) r.a.emplace(std::make_pair(n1, n2), x);
    else it->second = it->second + x;
  };
  put(0, 0, c[0]);
  for (std::size_t n = 1; n < len; ++n) {
    TowerElement d = c[n] - c[n - 1];
    for (unsigned b = 0; b < K; ++b) {
      const Int &cb = d.coeffs()[b];
      if (cb == 0) continue;
      unsigned v = valuation(cb, p);
      unsigned lo = n > v ? static_cast<unsigned>(n) - v : 0, hi = std::min<unsigned>(b, static_cast<unsigned>(n));
      unsigned n2 = pick ? std::clamp(pick(lo, hi), lo, hi) : hi;
      unsigned n1 = static_cast<unsigned>(n) - n2;
      put(n1, n2, TowerElement::monomial(p, K, cb / pow(p, n1), b - n2));
    }
  }
  auto A = [&](unsigned i, unsigned j) {
    auto it = r.a.find({i, j});
    return it == r.a.end() ? TowerElement(p, K) : it->second;
  };
  // Stage 1: for each n1 solve b1_{n1;k} - x b1_{n1;k+1} = a_{n1,k}; keep k = 0.
  const unsigned span = K + static_cast<unsigned>(len);
  for (unsigned n1 = 0; n1 <= span; ++n1) {
    std::vector<TowerElement> row(span + 2, TowerElement(p, K));
    for (unsigned k = span + 1; k-- > 0;) row[k] = A(n1, k) + row[k + 1].times_x();
    for (unsigned k = 0; k <= span; ++k)
      if (!(row[k] - row[k + 1].times_x() == A(n1, k))) r.staged_systems_hold = false;
    r.stage1.push_back(row[0]);
  }
  // Stage 2: b2_k - p b2_{k+1} = b1_k.
  r.stage2.assign(r.stage1.size() + 1, TowerElement(p, K));
  for (std::size_t k = r.stage1.size(); k-- > 0;) r.stage2[k] = r.stage1[k] + r.stage2[k + 1].times_p();
  for (std::size_t k = 0; k < r.stage1.size(); ++k)
    if (!(r.stage2[k] - r.stage2[k + 1].times_p() == r.stage1[k])) r.staged_systems_hold = false;
  r.b = r.stage2[0];
  for (std::size_t n = 1; n <= len; ++n) {
    unsigned lvl = std::min<unsigned>(static_cast<unsigned>(n), K);
    if (!(r.b - c[n - 1]).in_ideal_power(lvl)) {
      r.limit_holds = false;
      r.witness = {{"n", n}, {"b", r.b.to_string()}, {"c_n", c[n - 1].to_string()}};
      break;
    }
  }
  return r;
}

} // namespace contrakit
