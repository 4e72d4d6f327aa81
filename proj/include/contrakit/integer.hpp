#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace contrakit {

using Int = boost::multiprecision::cpp_int;

inline Int abs(const Int &a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Int lcm(const Int &a, const Int &b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Floor division (rounds toward negative infinity).
inline Int floor_div(const Int &a, const Int &b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Least nonnegative residue; m > 0.
inline Int mod(const Int &a, const Int &m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Int pow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

inline Int powmod(Int base, Int e, const Int &m) {
  Int r = 1 % m;
  base = mod(base, m);
  while (e > 0) {
    if ((e & 1) != 0) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

/// Extended gcd: returns g = gcd(a,b) >= 0 with g = x*a + y*b.
inline Int xgcd(const Int &a, const Int &b, Int &x, Int &y) {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Int s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Int t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  x = s0;
  y = t0;
  return r0;
}

/// Inverse of a modulo m, assuming gcd(a, m) = 1.
inline Int inverse_mod(const Int &a, const Int &m) {
  Int x, y;
  xgcd(mod(a, m), m, x, y);
  return mod(x, m);
}

/// Exponent of p in a (a != 0).
inline unsigned valuation(Int a, const Int &p) {
  unsigned v = 0;
  a = abs(a);
  if (a == 0) return 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

/// Trial-division factorization of |a| (a != 0). Fine for the sizes used here.
inline std::map<Int, unsigned> factorize(Int a) {
  std::map<Int, unsigned> out;
  a = abs(a);
  for (Int p = 2; p * p <= a; ++p) {
    while (a % p == 0) {
      ++out[p];
      a /= p;
    }
  }
  if (a > 1) ++out[a];
  return out;
}

inline std::vector<Int> prime_divisors(const Int &a) {
  std::vector<Int> out;
  if (a == 0) return out;
  for (auto &[p, e] : factorize(a)) out.push_back(p);
  return out;
}

inline bool is_prime(const Int &a) {
  if (a < 2) return false;
  auto f = factorize(a);
  return f.size() == 1 && f.begin()->second == 1;
}

/// Part of d built from primes dividing s (d != 0, s not 0/±1).
inline Int s_part(Int d, const Int &s) {
  Int out = 1;
  d = abs(d);
  for (Int g = gcd(d, s); g > 1; g = gcd(d, s)) {
    out *= g;
    d /= g;
  }
  return out;
}

inline Int p_part(const Int &d, const Int &p) { return pow(p, valuation(d, p)); }

inline std::int64_t to_i64(const Int &a) { return static_cast<std::int64_t>(a); }

inline std::string to_string(const Int &a) { return a.str(); }

} // namespace contrakit
