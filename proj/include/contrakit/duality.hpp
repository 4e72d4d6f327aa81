#pragma once

#include "enumerate.hpp"
#include "fpmod.hpp"

#include <set>

namespace contrakit {

/// The prime of a nonzero finite p-group; throws NotPPrimary otherwise.
inline Int primary_prime(const FPModule &t) {
  if (!t.is_finite()) throw NotPPrimary("module is infinite: " + t.to_string());
  if (t.is_zero()) return 0;
  auto ps = prime_divisors(t.torsion().back());
  if (ps.size() != 1) throw NotPPrimary("module is not primary: " + t.to_string());
  return ps[0];
}

/// Hom(t, Z/p^K) as a submodule of (Z/p^K)^gens: a dual element is the tuple
/// of its values on the generators of t.
struct MatlisDual {
  FPModule module;
  Morphism inclusion;
  Int p;
  unsigned K = 0;
};

inline unsigned exponent_valuation(const FPModule &t, const Int &p) {
  return t.is_zero() ? 0 : valuation(t.torsion().back(), p);
}

inline MatlisDual matlis_dual_full(const FPModule &t, Int p = 0, unsigned K = 0) {
  Int q = primary_prime(t);
  if (p == 0) p = q == 0 ? Int(2) : q;
  if (q != 0 && q != p) throw NotPPrimary("module is " + q.str() + "-primary, expected " + p.str());
  K = std::max(K, exponent_valuation(t, p));
  FPModule E = FPModule::cyclic(pow(p, K));
  if (K == 0) E = FPModule::zero();
  auto k = kernel(detail::hom_resolution_map(t, E));
  return {k.module, k.map, p, K};
}

inline FPModule matlis_dual(const FPModule &t) { return matlis_dual_full(t).module.canonical(); }

namespace detail {

inline IntMatrix lift_rows(const IntMatrix &h, const IntMatrix &inc, const FPModule &ambient) {
  SmithForm sf = smith(IntMatrix::vstack(inc, ambient.presentation()));
  IntMatrix X(h.rows(), inc.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto sol = solve_left(sf, h.row(i));
    if (!sol) throw Error("element does not lie in the submodule");
    for (std::size_t j = 0; j < inc.rows(); ++j) X(i, j) = (*sol)[j];
  }
  return X;
}

} // namespace detail

/// D(f): D(B) -> D(A), precomposition with f. Both duals must use the same K.
inline Morphism dual_morphism(const Morphism &f, const MatlisDual &da, const MatlisDual &db) {
  if (da.K != db.K || da.p != db.p) throw Error("duals taken into different injectives");
  IntMatrix h = db.inclusion.matrix() * f.matrix().transpose();
  return Morphism(db.module, da.module, detail::lift_rows(h, da.inclusion.matrix(), da.inclusion.target()));
}

/// t -> D(D(t)), evaluation of functionals.
inline Morphism evaluation_map(const FPModule &t, const MatlisDual &d, const MatlisDual &dd) {
  IntMatrix h = d.inclusion.matrix().transpose();
  return Morphism(t, dd.module, detail::lift_rows(h, dd.inclusion.matrix(), dd.inclusion.target()));
}

namespace detail {

inline std::int64_t image_index(const Enumeration &src, const Enumeration &dst, const IntMatrix &F,
                                 std::int64_t idx) {
  auto c = src.coords(idx);
  IntVec x(c.begin(), c.end());
  return dst.reduce(vec_mul(x, F));
}

} // namespace detail

/// Bijectivity of a morphism of finite modules by listing every element.
inline bool bijective_by_enumeration(const Morphism &f) {
  Enumeration a(f.source()), b(f.target());
  if (a.size() != b.size()) return false;
  std::set<std::int64_t> seen;
  for (std::int64_t i = 0; i < a.size(); ++i) seen.insert(detail::image_index(a, b, f.matrix(), i));
  return static_cast<std::int64_t>(seen.size()) == b.size();
}

/// 0 -> A -> B -> C -> 0 exact, by listing every element.
inline bool short_exact_by_enumeration(const Morphism &f, const Morphism &g) {
  Enumeration a(f.source()), b(f.target()), c(g.target());
  std::set<std::int64_t> im_f, im_g;
  for (std::int64_t i = 0; i < a.size(); ++i) im_f.insert(detail::image_index(a, b, f.matrix(), i));
  std::int64_t ker_g = 0;
  for (std::int64_t i = 0; i < b.size(); ++i) {
    std::int64_t y = detail::image_index(b, c, g.matrix(), i);
    im_g.insert(y);
    if (y == 0) {
      ++ker_g;
      if (!im_f.count(i)) return false;
    }
  }
  return static_cast<std::int64_t>(im_f.size()) == a.size() && ker_g == static_cast<std::int64_t>(im_f.size()) &&
         static_cast<std::int64_t>(im_g.size()) == c.size();
}

} // namespace contrakit
