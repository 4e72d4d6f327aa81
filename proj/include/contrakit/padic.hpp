#pragma once

#include "error.hpp"
#include "integer.hpp"
#include "mutation.hpp"
#include "report.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

namespace contrakit {

/// An element of Z_p known modulo p^N.
class PadicApprox {
public:
  PadicApprox() = default;
  PadicApprox(const Int &p, unsigned N, const Int &value) : p_(p), N_(N) {
    if (N == 0) throw PrecisionExhausted("precision must be at least 1");
    r_ = mod(value, modulus());
  }

  const Int &prime() const { return p_; }
  unsigned precision() const { return N_; }
  const Int &residue() const { return r_; }
  Int modulus() const { return pow(p_, N_); }

  PadicApprox reduce(unsigned n) const {
    if (n > N_) throw PrecisionExhausted("cannot raise precision from " + std::to_string(N_));
    return {p_, n, r_};
  }

  /// v_p of the residue, capped at N.
  unsigned valuation() const { return r_ == 0 ? N_ : contrakit::valuation(r_, p_); }

  friend PadicApprox operator+(const PadicApprox &a, const PadicApprox &b) {
    check(a, b);
    unsigned n = std::min(a.N_, b.N_);
    return {a.p_, n, a.r_ + b.r_};
  }
  friend PadicApprox operator-(const PadicApprox &a, const PadicApprox &b) {
    check(a, b);
    unsigned n = std::min(a.N_, b.N_);
    return {a.p_, n, a.r_ - b.r_};
  }
  friend PadicApprox operator*(const PadicApprox &a, const PadicApprox &b) {
    check(a, b);
    unsigned n = std::min(a.N_, b.N_);
    return {a.p_, n, a.r_ * b.r_};
  }
  PadicApprox operator-() const { return {p_, N_, -r_}; }

  /// x / p; loses one digit of precision.
  PadicApprox divide_by_p() const {
    if (r_ % p_ != 0) throw Error("residue " + r_.str() + " is not divisible by " + p_.str());
    if (N_ == 1) throw PrecisionExhausted("division by p at precision 1");
    return {p_, N_ - 1, r_ / p_};
  }

  /// Equal at the smaller of the two precisions.
  bool congruent(const PadicApprox &o) const {
    check(*this, o);
    return mod(r_ - o.r_, pow(p_, std::min(N_, o.N_))) == 0;
  }
  bool operator==(const PadicApprox &o) const { return p_ == o.p_ && N_ == o.N_ && r_ == o.r_; }

private:
  Int p_ = 2;
  unsigned N_ = 1;
  Int r_ = 0;

  static void check(const PadicApprox &a, const PadicApprox &b) {
    if (a.p_ != b.p_) throw Error("mixing primes " + a.p_.str() + " and " + b.p_.str());
  }
};

/// A null sequence of p-adic integers: u_n = prefix[n] for n < L and
/// u_n = p^n w for n >= L, every entry known modulo p^N. The tail coefficient
/// w only matters modulo p^(N-L). Kept in the form with the shortest prefix.
class TailSeq {
public:
  TailSeq() = default;
  TailSeq(const Int &p, unsigned N, std::vector<Int> prefix = {}, const Int &w = 0)
      : p_(p), N_(N), prefix_(std::move(prefix)), w_(w) {
    if (N == 0) throw PrecisionExhausted("precision must be at least 1");
    normalize();
  }

  static TailSeq unit(const Int &p, unsigned N, std::size_t n, const Int &value = 1) {
    std::vector<Int> pre(n + 1, 0);
    pre[n] = value;
    return {p, N, pre, 0};
  }

  const Int &prime() const { return p_; }
  unsigned precision() const { return N_; }
  const std::vector<Int> &prefix() const { return prefix_; }
  const Int &tail_coeff() const { return w_; }
  std::size_t prefix_length() const { return prefix_.size(); }

  Int entry(std::size_t n) const {
    Int m = pow(p_, N_);
    if (n < prefix_.size()) return prefix_[n];
    if (n >= N_) return 0;
    return mod(pow(p_, static_cast<unsigned>(n)) * w_, m);
  }

  friend TailSeq operator+(const TailSeq &a, const TailSeq &b) { return combine(a, b, 1); }
  friend TailSeq operator-(const TailSeq &a, const TailSeq &b) { return combine(a, b, -1); }
  TailSeq scale(const Int &k) const {
    std::vector<Int> pre = prefix_;
    for (auto &x : pre) x *= k;
    return {p_, N_, pre, w_ * k};
  }
  bool operator==(const TailSeq &o) const {
    return p_ == o.p_ && N_ == o.N_ && prefix_ == o.prefix_ && w_ == o.w_;
  }
  bool is_zero() const { return prefix_.empty() && w_ == 0; }

  json to_json() const {
    json pre = json::array();
    for (auto &x : prefix_) pre.push_back(jint(x));
    return {{"p", jint(p_)}, {"precision", N_}, {"prefix", pre}, {"tail_coeff", jint(w_)}};
  }

private:
  Int p_ = 2;
  unsigned N_ = 1;
  std::vector<Int> prefix_;
  Int w_ = 0;

  static TailSeq combine(const TailSeq &a, const TailSeq &b, int sign) {
    if (a.p_ != b.p_ || a.N_ != b.N_) throw Error("tail sequences over different p or precision");
    std::size_t L = std::max(a.prefix_.size(), b.prefix_.size());
    std::vector<Int> pre(L);
    for (std::size_t n = 0; n < L; ++n) pre[n] = a.entry(n) + sign * b.entry(n);
    return {a.p_, a.N_, pre, a.w_ + sign * b.w_};
  }

  void normalize() {
    const Int m = pow(p_, N_);
    if (prefix_.size() > N_) prefix_.resize(N_);
    for (auto &x : prefix_) x = mod(x, m);
    auto tail_mod = [&](std::size_t L) { return pow(p_, N_ - static_cast<unsigned>(L)); };
    w_ = mod(w_, tail_mod(prefix_.size()));
    // Absorb the last prefix entry into the tail while it fits the pattern.
    while (!prefix_.empty()) {
      std::size_t L = prefix_.size();
      const Int &u = prefix_.back();
      Int pk = pow(p_, static_cast<unsigned>(L - 1));
      if (u % pk != 0) break;
      Int w2 = u / pk; // defined modulo p^(N-L+1)
      if (mod(w2 - w_, tail_mod(L)) != 0) break;
      prefix_.pop_back();
      w_ = mod(w2, tail_mod(L - 1));
    }
  }
};

// Membership in the subgroups E subset D of C, and in E + p^m C.

enum class SeqSpace { E, D, EPlusPmC };

struct Membership {
  bool member = false;
  json witness;
};

inline Membership membership(const TailSeq &u, SeqSpace space, unsigned m = 0) {
  const Int &p = u.prime();
  const unsigned N = u.precision();
  const std::size_t L = u.prefix_length();
  if (L > N) throw PrecisionTooLow("prefix longer than precision");
  if (space == SeqSpace::EPlusPmC && m > N) throw PrecisionTooLow("depth exceeds precision");
  Membership r{true, json::object()};
  for (std::size_t n = 0; n < L; ++n) {
    unsigned need;
    if (space == SeqSpace::EPlusPmC) need = std::min<unsigned>(static_cast<unsigned>(n), m);
    else need = static_cast<unsigned>(n) + (mutated(Mutation::EMembershipShift) ? 1 : 0);
    need = std::min(need, N);
    if (mod(u.prefix()[n], pow(p, need)) != 0) {
      r.member = false;
      r.witness = {{"position", n}, {"entry", jint(u.prefix()[n])}, {"required_divisor", jint(pow(p, need))}};
      return r;
    }
  }
  if (space == SeqSpace::E && u.tail_coeff() != 0) {
    r.member = false;
    r.witness = {{"tail_coeff", jint(u.tail_coeff())},
                 {"reason", "v_n = w for n past the prefix does not tend to 0"}};
  }
  return r;
}


/// Membership decided from the definitions by searching for witnesses.
/// Entries are read exactly: prefix residues as integers and u_n = p^n w past
/// the prefix. For E the tail forces v_n = w, so v_n -> 0 means w = 0. For
/// E + p^m C the tail splits as (p^n w, 0) below m and (0, p^(n-m) w) from m
/// on, so only prefix positions need a search: u = p^n v + p^m c modulo
/// p^(N+1), which decides solvability in Z_p because u < p^N.
class MembershipOracle {
public:
  bool operator()(const TailSeq &u, SeqSpace space, unsigned m = 0) {
    const Int &p = u.prime();
    const unsigned N = u.precision();
    for (std::size_t n = 0; n < u.prefix_length(); ++n) {
      const Int &x = u.prefix()[n];
      if (space == SeqSpace::EPlusPmC) {
        if (!representable(p, N, static_cast<unsigned>(n), m, x)) return false;
      } else {
        Int pn = pow(p, static_cast<unsigned>(n));
        bool found = false;
        for (Int v = 0; v * pn <= x && !found; ++v) found = v * pn == x;
        if (!found) return false;
      }
    }
    return space != SeqSpace::E || u.tail_coeff() == 0;
  }

private:
  std::map<std::tuple<Int, unsigned, unsigned, unsigned>, std::vector<bool>> table_;

  bool representable(const Int &p, unsigned N, unsigned n, unsigned m, const Int &x) {
    auto key = std::make_tuple(p, N, n, m);
    auto it = table_.find(key);
    if (it == table_.end()) {
      const Int M = pow(p, N + 1);
      const std::size_t size = static_cast<std::size_t>(M);
      std::vector<bool> hit(size, false);
      const Int pn = pow(p, n), pm = pow(p, m);
      for (Int v = 0; v < M; ++v)
        for (Int c = 0; c < M; ++c) hit[static_cast<std::size_t>(mod(pn * v + pm * c, M))] = true;
      it = table_.emplace(key, std::move(hit)).first;
    }
    return it->second[static_cast<std::size_t>(x)];
  }
};

} // namespace contrakit
