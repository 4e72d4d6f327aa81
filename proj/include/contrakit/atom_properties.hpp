#pragma once

#include "atoms.hpp"
#include "functors.hpp"

#include <array>

namespace contrakit {

namespace detail {

// tf, div, sep, comp, ca, cm
using SixFlags = std::array<bool, 6>;

/// Flags of a single atom for s >= 2. Every flag is inherited by and from
/// direct summands and products, so a sum or product takes the meet.
inline SixFlags atom_six_flags(const Atom &a, const Int &s) {
  auto divides_s = [&](const Int &p) { return s % p == 0; };
  const SixFlags inverted{true, true, false, true, true, false};
  switch (a.kind) {
  case AtomKind::Free: return {true, false, true, false, false, false};
  case AtomKind::Cyclic:
    return divides_s(a.prime()) ? SixFlags{false, false, true, true, true, true} : inverted;
  case AtomKind::Rat:
  case AtomKind::PadicRat: return inverted;
  case AtomKind::PadicInt:
    return divides_s(a.param) ? SixFlags{true, false, true, true, true, true} : inverted;
  case AtomKind::Prufer:
    return divides_s(a.param) ? SixFlags{false, true, false, true, true, false} : inverted;
  case AtomKind::Localized:
    // s is a unit on Z[1/r] exactly when every prime of s divides r.
    for (auto &[q, e] : factorize(s))
      if (a.param % q != 0) return {true, false, true, false, false, false};
    return inverted;
  }
  return {};
}

} // namespace detail

/// Property flags of an atom expression at the scalar s, from the per-atom table.
inline PropertyFlags atom_properties(const AtomExpr &e, const Int &s_in) {
  const Int s = abs(s_in);
  PropertyFlags f;
  Flag *slot[6] = {&f.torsion_free, &f.divisible, &f.separated, &f.complete, &f.contraadjusted, &f.contramodule};
  if (s <= 1) {
    bool z = e.is_zero();
    // s = 0 kills everything; s = 1 is a unit.
    detail::SixFlags v = s == 0 ? detail::SixFlags{z, z, true, true, true, true}
                                : detail::SixFlags{true, true, z, true, true, z};
    for (int i = 0; i < 6; ++i) *slot[i] = {v[i], v[i] ? json::object() : json{{"module", e.to_string()}}};
    return f;
  }
  for (int i = 0; i < 6; ++i) *slot[i] = {true, json::object()};
  auto meet = [&](const detail::SixFlags &v, const std::string &piece) {
    for (int i = 0; i < 6; ++i)
      if (!v[i] && slot[i]->value) *slot[i] = {false, {{"summand", piece}}};
  };
  for (auto &[a, m] : e.terms()) meet(detail::atom_six_flags(a, s), a.to_string());
  for (auto &b : e.blocks()) {
    std::vector<Int> primes = b.primes;
    if (b.all) {
      // One prime dividing s and one not: every kind of factor occurs.
      primes = {factorize(s).begin()->first};
      Int q = 2;
      while (s % q == 0 || !is_prime(q)) ++q;
      primes.push_back(q);
    }
    for (auto &[k, mult] : b.content)
      for (auto &p : primes) meet(detail::atom_six_flags(block_atom(k, p), s), block_atom(k, p).to_string() + " factor");
  }
  return f;
}

} // namespace contrakit
