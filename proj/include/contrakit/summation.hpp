#pragma once

#include "padic.hpp"
#include "report.hpp"

#include <functional>
#include <random>
#include <string>

namespace contrakit {

// Carriers. Each exposes Elem, zero/add/sub/equal, act (multiplication by s),
// horizon() (a number of steps after which s^n kills everything), random(rng)
// and to_json(Elem). Two-variable carriers add act_t.

/// Z/m with s acting by multiplication; covers Z_p mod p^N and Z/p^k.
struct ResidueCarrier {
  using Elem = Int;
  std::string name;
  Int modulus, s;
  std::size_t nil = 0;

  ResidueCarrier(std::string n, const Int &m, const Int &s_) : name(std::move(n)), modulus(m), s(mod(s_, m)) {
    Int x = 1;
    while (x != 0 && nil <= 4096) {
      x = mod(x * s, modulus);
      ++nil;
    }
    if (x != 0) throw Error("s does not act nilpotently on Z/" + modulus.str());
  }

  Elem zero() const { return 0; }
  Elem add(const Elem &a, const Elem &b) const { return mod(a + b, modulus); }
  Elem sub(const Elem &a, const Elem &b) const { return mod(a - b, modulus); }
  bool equal(const Elem &a, const Elem &b) const { return mod(a - b, modulus) == 0; }
  Elem act(const Elem &a) const { return mod(a * s, modulus); }
  std::size_t horizon() const { return nil; }
  template <class Rng> Elem random(Rng &rng) const {
    std::uniform_int_distribution<unsigned> d(0, 1u << 30);
    Int x = 0;
    for (int i = 0; i < 4; ++i) x = (x << 30) + d(rng);
    return mod(x, modulus);
  }
  json to_json(const Elem &a) const { return jint(a); }
};

inline ResidueCarrier zp_scalar(const Int &p, unsigned N, const Int &unit = 1) {
  return {"ZpScalar", pow(p, N), p * unit};
}
inline ResidueCarrier zp_mod_pk(const Int &p, unsigned k) { return {"ZpModPk", pow(p, k), p}; }

/// prod_{p in P} Z_p mod p^N with s = prod P acting diagonally.
struct FiniteProductCarrier {
  using Elem = std::vector<Int>;
  std::string name = "FiniteProductZp";
  std::vector<Int> primes;
  unsigned N;
  Int s;

  FiniteProductCarrier(std::vector<Int> ps, unsigned n) : primes(std::move(ps)), N(n), s(1) {
    for (auto &p : primes) s *= p;
  }
  Int mod_at(std::size_t i) const { return pow(primes[i], N); }
  Elem zero() const { return Elem(primes.size(), 0); }
  Elem add(const Elem &a, const Elem &b) const {
    Elem c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod(a[i] + b[i], mod_at(i));
    return c;
  }
  Elem sub(const Elem &a, const Elem &b) const {
    Elem c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod(a[i] - b[i], mod_at(i));
    return c;
  }
  bool equal(const Elem &a, const Elem &b) const { return sub(a, b) == zero(); }
  Elem act(const Elem &a) const {
    Elem c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod(a[i] * s, mod_at(i));
    return c;
  }
  std::size_t horizon() const { return N; }
  template <class Rng> Elem random(Rng &rng) const {
    Elem c(primes.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(Int(static_cast<unsigned long long>(rng())), mod_at(i));
    return c;
  }
  json to_json(const Elem &a) const { return jvec(a); }
};

/// Null sequences of p-adic integers (tail model), s = p.
struct NullSeqCarrier {
  using Elem = TailSeq;
  std::string name = "NullSeqC";
  Int p;
  unsigned N;

  Elem zero() const { return TailSeq(p, N); }
  Elem add(const Elem &a, const Elem &b) const { return a + b; }
  Elem sub(const Elem &a, const Elem &b) const { return a - b; }
  bool equal(const Elem &a, const Elem &b) const { return a == b; }
  Elem act(const Elem &a) const { return a.scale(p); }
  std::size_t horizon() const { return N; }
  template <class Rng> Elem random(Rng &rng) const {
    std::vector<Int> pre(rng() % 4);
    Int m = pow(p, N);
    for (auto &x : pre) x = mod(Int(static_cast<unsigned long long>(rng())), m);
    return TailSeq(p, N, pre, Int(static_cast<unsigned long long>(rng() % 64)));
  }
  json to_json(const Elem &a) const { return a.to_json(); }
};

/// C/E: the same representatives, compared modulo E.
struct QuotientCECarrier : NullSeqCarrier {
  QuotientCECarrier(const Int &p_, unsigned N_) : NullSeqCarrier{"QuotientCmodE", p_, N_} {}
  bool equal(const Elem &a, const Elem &b) const { return membership(a - b, SeqSpace::E).member; }
};

/// V[[z]] truncated at z^D with V = Z/m, s = z.
struct PowerSeriesCarrier {
  using Elem = std::vector<Int>;
  std::string name = "PowerSeries";
  Int m;
  std::size_t D;

  Elem zero() const { return Elem(D, 0); }
  Elem add(const Elem &a, const Elem &b) const {
    Elem c(D);
    for (std::size_t i = 0; i < D; ++i) c[i] = mod(a[i] + b[i], m);
    return c;
  }
  Elem sub(const Elem &a, const Elem &b) const {
    Elem c(D);
    for (std::size_t i = 0; i < D; ++i) c[i] = mod(a[i] - b[i], m);
    return c;
  }
  bool equal(const Elem &a, const Elem &b) const { return sub(a, b) == zero(); }
  Elem act(const Elem &a) const {
    Elem c(D, 0);
    for (std::size_t i = 0; i + 1 < D; ++i) c[i + 1] = a[i];
    return c;
  }
  std::size_t horizon() const { return D; }
  template <class Rng> Elem random(Rng &rng) const {
    Elem c(D);
    for (auto &x : c) x = mod(Int(static_cast<unsigned long long>(rng())), m);
    return c;
  }
  json to_json(const Elem &a) const { return jvec(a); }
};

// Summation.

template <class C> using SeqFn = std::function<typename C::Elem(std::size_t)>;

/// sum_{n < H} s^n a_n by Horner's rule. Terms past the carrier horizon vanish,
/// so a horizon below it cannot be trusted.
template <class C> typename C::Elem sum_s_power(const C &c, const SeqFn<C> &a, std::size_t H) {
  if (H < c.horizon())
    throw PrecisionExhausted("horizon " + std::to_string(H) + " below nilpotency index " +
                             std::to_string(c.horizon()));
  typename C::Elem acc = c.zero();
  for (std::size_t n = H; n-- > 0;) acc = c.add(a(n), c.act(acc));
  return acc;
}

template <class C> typename C::Elem sum_s_power(const C &c, const SeqFn<C> &a) {
  return sum_s_power(c, a, c.horizon());
}

/// Additivity, contraunitality and contraassociativity on random arrays, and
/// agreement of the a_1 = x sum with s x.
template <class C, class Rng>
void check_axioms(const C &c, Rng &rng, int trials, Report &out, std::size_t max_side = 8) {
  const std::size_t H = c.horizon();
  int fail_add = 0, fail_unit = 0, fail_assoc = 0, fail_act = 0;
  json w_add, w_unit, w_assoc, w_act;
  for (int t = 0; t < trials; ++t) {
    std::size_t side = 1 + rng() % max_side;
    std::vector<typename C::Elem> a(side), b(side);
    for (auto &x : a) x = c.random(rng);
    for (auto &x : b) x = c.random(rng);
    auto A = [&](std::size_t n) { return n < side ? a[n] : c.zero(); };
    auto B = [&](std::size_t n) { return n < side ? b[n] : c.zero(); };
    auto AB = [&](std::size_t n) { return c.add(A(n), B(n)); };
    auto lhs = sum_s_power<C>(c, AB), rhs = c.add(sum_s_power<C>(c, A), sum_s_power<C>(c, B));
    if (!c.equal(lhs, rhs) && fail_add++ == 0) w_add = {{"trial", t}, {"lhs", c.to_json(lhs)}, {"rhs", c.to_json(rhs)}};

    auto x = a[0];
    auto one = sum_s_power<C>(c, [&](std::size_t n) { return n == 0 ? x : c.zero(); });
    if (!c.equal(one, x) && fail_unit++ == 0) w_unit = {{"trial", t}, {"x", c.to_json(x)}, {"sum", c.to_json(one)}};
    auto sx = sum_s_power<C>(c, [&](std::size_t n) { return n == 1 ? x : c.zero(); });
    if (!c.equal(sx, c.act(x)) && fail_act++ == 0) w_act = {{"trial", t}, {"x", c.to_json(x)}};

    std::size_t rows = 1 + rng() % max_side, cols = 1 + rng() % max_side;
    std::vector<std::vector<typename C::Elem>> arr(rows, std::vector<typename C::Elem>(cols));
    for (auto &r : arr)
      for (auto &e : r) e = c.random(rng);
    auto at = [&](std::size_t i, std::size_t j) { return i < rows && j < cols ? arr[i][j] : c.zero(); };
    auto nested = sum_s_power<C>(c, [&](std::size_t i) {
      return sum_s_power<C>(c, [&](std::size_t j) { return at(i, j); });
    });
    auto diag = sum_s_power<C>(c, [&](std::size_t n) {
      auto acc = c.zero();
      for (std::size_t i = 0; i <= n; ++i) acc = c.add(acc, at(i, n - i));
      return acc;
    }, 2 * H);
    if (!c.equal(nested, diag) && fail_assoc++ == 0)
      w_assoc = {{"trial", t}, {"nested", c.to_json(nested)}, {"diagonal", c.to_json(diag)}};
  }
  out.add(c.name + ": additivity", fail_add == 0, fail_add ? w_add : json::object());
  out.add(c.name + ": contraunitality", fail_unit == 0, fail_unit ? w_unit : json::object());
  out.add(c.name + ": contraassociativity", fail_assoc == 0, fail_assoc ? w_assoc : json::object());
  out.add(c.name + ": a_1 = x gives s x", fail_act == 0, fail_act ? w_act : json::object());
}

template <class C> struct TelescopeSolution {
  std::vector<typename C::Elem> b;
  bool residual_zero = true;
  bool homogeneous_zero = true;
  json witness;
};

/// b_n = sum_i s^i a_{n+i} for n <= N, with the substitution check and the
/// vanishing of s^H on the given probes (which forces homogeneous solutions
/// to be zero: b_0 = s^H b_H).
template <class C>
TelescopeSolution<C> solve_telescope(const C &c, const SeqFn<C> &a, std::size_t N,
                                     const std::vector<typename C::Elem> &probes = {}) {
  TelescopeSolution<C> r;
  for (std::size_t n = 0; n <= N; ++n) r.b.push_back(sum_s_power<C>(c, [&](std::size_t i) { return a(n + i); }));
  for (std::size_t n = 0; n < N; ++n) {
    auto lhs = c.sub(r.b[n], c.act(r.b[n + 1]));
    if (!c.equal(lhs, a(n))) {
      r.residual_zero = false;
      r.witness = {{"index", n}, {"lhs", c.to_json(lhs)}, {"a_n", c.to_json(a(n))}};
      break;
    }
  }
  for (auto &x : probes) {
    auto y = x;
    for (std::size_t i = 0; i < c.horizon(); ++i) y = c.act(y);
    if (!c.equal(y, c.zero())) {
      r.homogeneous_zero = false;
      r.witness = {{"probe", c.to_json(x)}, {"s^H probe", c.to_json(y)}};
    }
  }
  return r;
}

} // namespace contrakit
