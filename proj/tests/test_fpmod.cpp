#include <contrakit/enumerate.hpp>
#include <contrakit/fpmod.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace contrakit;

namespace {

FPModule inv(std::size_t r, IntVec t) { return FPModule::from_invariants(r, t); }

FPModule random_finite(std::mt19937_64 &rng) {
  std::size_t g = 1 + rng() % 3;
  IntMatrix a = oracle::random_matrix(rng, g + rng() % 2, g, -6, 6);
  for (std::size_t i = 0; i < g; ++i) a(i, i) = 1 + rng() % 8;
  FPModule m(a);
  return m.is_finite() ? m : random_finite(rng);
}

} // namespace

TEST(Decompose, Examples) {
  EXPECT_EQ(decompose(FPModule(IntMatrix{{12}})), (Decomposition{0, {12}}));
  EXPECT_EQ(decompose(FPModule(IntMatrix{{2, 0}, {0, 0}})), (Decomposition{1, {2}}));
  EXPECT_EQ(decompose(FPModule(IntMatrix{{4, 2}, {2, 4}})), (Decomposition{0, {2, 6}}));
}

TEST(Decompose, EnumerationOracleForFourTwoMatrix) {
  Enumeration en(IntMatrix{{4, 2}, {2, 4}});
  EXPECT_EQ(en.size(), 12);
  EXPECT_EQ(en.exponent(), 6);
  EXPECT_EQ(en.invariants_by_counting(), (IntVec{2, 6}));
}

TEST(Decompose, PresentationIndependent) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = oracle::random_matrix(rng, r, c, -12, 12);
    IntMatrix b = oracle::random_unimodular(rng, r) * a * oracle::random_unimodular(rng, c);
    EXPECT_EQ(decompose(FPModule(a)), decompose(FPModule(b)));
  }
}

TEST(Canonical, CoordinatesRoundTrip) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    FPModule m(oracle::random_matrix(rng, r, c, -10, 10));
    IntVec x(c);
    for (auto &v : x) v = static_cast<int>(rng() % 21) - 10;
    IntVec y = m.to_canonical(x);
    EXPECT_TRUE(m.equal_elements(m.from_canonical(y), x));
    for (std::size_t i = 0; i < m.presentation().rows(); ++i)
      EXPECT_TRUE(m.is_zero_element(m.presentation().row(i)));
  }
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(Enumeration(inv(0, {6})).size(), 6);
  Enumeration v4(inv(0, {2, 2}));
  EXPECT_EQ(v4.size(), 4);
  EXPECT_EQ(v4.exponent(), 2);
  EXPECT_THROW(Enumeration(inv(1, {})), InfiniteModule);
  EXPECT_THROW(Enumeration(inv(0, {1000, 1000}), 1000), OrderBoundExceeded);
}

TEST(Enumerate, GroupAxioms) {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 40; ++it) {
    FPModule m = random_finite(rng);
    Enumeration en(m);
    std::uniform_int_distribution<std::int64_t> pick(0, en.size() - 1);
    for (int k = 0; k < 30; ++k) {
      auto a = pick(rng), b = pick(rng), c = pick(rng);
      EXPECT_EQ(en.add(a, en.add(b, c)), en.add(en.add(a, b), c));
      EXPECT_EQ(en.add(a, b), en.add(b, a));
      EXPECT_EQ(en.add(a, en.neg(a)), 0);
      EXPECT_EQ(en.add(a, 0), a);
    }
    EXPECT_EQ(Int(en.size()), m.order());
    EXPECT_EQ(en.invariants_by_counting(), m.torsion());
  }
}

TEST(Hom, Examples) {
  EXPECT_TRUE(hom(inv(0, {6}), inv(0, {4})).isomorphic(inv(0, {2})));
  EXPECT_EQ(count_homs_brute(inv(0, {6}), inv(0, {4})), 2);
  FPModule m = inv(2, {3, 6});
  EXPECT_TRUE(hom(FPModule::free(1), m).isomorphic(m));
  EXPECT_TRUE(hom(inv(0, {5}), FPModule::free(1)).is_zero());
}

TEST(Ext, Examples) {
  EXPECT_TRUE(ext1(inv(0, {4}), inv(0, {6})).isomorphic(inv(0, {2})));
  EXPECT_TRUE(ext1(FPModule::free(3), inv(1, {6})).is_zero());
  EXPECT_TRUE(ext1(inv(0, {27}), FPModule::free(1)).isomorphic(inv(0, {27})));
  EXPECT_EQ(count_coker_scalar_brute(inv(0, {6}), 4), 2);
}

TEST(Tor, Examples) {
  EXPECT_TRUE(tor1(inv(0, {4}), inv(0, {6})).isomorphic(inv(0, {2})));
  EXPECT_TRUE(tensor(inv(0, {4}), inv(0, {6})).isomorphic(inv(0, {2})));
  EXPECT_EQ(count_tensor_brute(inv(0, {4}), inv(0, {6})), 2);
  EXPECT_TRUE(tor1(FPModule::free(1), inv(0, {6})).is_zero());
}

TEST(HomExtTor, TwoRoutesAgree) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 60; ++it) {
    std::size_t r1 = 1 + rng() % 3, c1 = 1 + rng() % 3, r2 = 1 + rng() % 3, c2 = 1 + rng() % 3;
    FPModule m(oracle::random_matrix(rng, r1, c1, -8, 8));
    FPModule n(oracle::random_matrix(rng, r2, c2, -8, 8));
    EXPECT_TRUE(hom(m, n).isomorphic(hom_via_resolution(m, n))) << m.to_string() << " | " << n.to_string();
    EXPECT_TRUE(ext1(m, n).isomorphic(ext1_via_resolution(m, n)));
    EXPECT_TRUE(tensor(m, n).isomorphic(tensor_via_resolution(m, n)));
    EXPECT_TRUE(tor1(m, n).isomorphic(tor1_via_resolution(m, n)));
    EXPECT_TRUE(tor1(m, n).isomorphic(tor1(n, m)));
    EXPECT_TRUE(hom(FPModule::free(1), n).isomorphic(n.canonical()));
    EXPECT_TRUE(tensor(FPModule::free(1), n).isomorphic(n.canonical()));
  }
}

TEST(HomExtTor, CountsMatchEnumeration) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int it = 0; it < 80; ++it) {
    FPModule m = random_finite(rng), n = random_finite(rng);
    try {
      EXPECT_EQ(Int(count_homs_brute(m, n, 200000)), hom(m, n).order());
      EXPECT_EQ(Int(count_tensor_brute(m, n)), tensor(m, n).order());
      EXPECT_EQ(Int(count_tor_brute(m, n, 200000)), tor1(m, n).order());
      ++checked;
    } catch (const OrderBoundExceeded &) {
    }
  }
  EXPECT_GT(checked, 30);
  for (std::int64_t a = 1; a <= 12; ++a) {
    FPModule n = random_finite(rng);
    EXPECT_EQ(Int(count_coker_scalar_brute(n, a)), ext1(FPModule::cyclic(a), n).order());
  }
}

TEST(KernelCokernel, Examples) {
  auto z4 = inv(0, {4});
  auto k = kernel(Morphism::scalar(z4, 2));
  EXPECT_TRUE(k.module.isomorphic(inv(0, {2})));
  EXPECT_TRUE(compose(Morphism::scalar(z4, 2), k.map).is_zero());

  auto c = cokernel(Morphism::scalar(FPModule::free(1), 6));
  EXPECT_TRUE(c.module.isomorphic(inv(0, {6})));

  auto z2 = FPModule::free(2);
  auto d = cokernel(Morphism(z2, z2, IntMatrix{{2, 0}, {0, 3}}));
  EXPECT_TRUE(d.module.isomorphic(inv(0, {6})));
}

TEST(KernelCokernel, IllDefinedRejected) {
  // 1 -> 1 from Z/4 to Z/6 does not respect 4 = 0.
  EXPECT_THROW(Morphism(inv(0, {4}), inv(0, {6}), IntMatrix{{1}}), IllDefinedMorphism);
  EXPECT_NO_THROW(Morphism(inv(0, {4}), inv(0, {6}), IntMatrix{{3}}));
}

TEST(KernelCokernel, UniversalAndExact) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 60; ++it) {
    std::size_t g1 = 1 + rng() % 3, g2 = 1 + rng() % 3;
    IntMatrix ra = oracle::random_matrix(rng, 1 + rng() % 3, g1, -6, 6);
    IntMatrix rb = oracle::random_matrix(rng, 1 + rng() % 3, g2, -6, 6);
    IntMatrix mat = oracle::random_matrix(rng, g1, g2, -4, 4);
    // Adding the images of the source relations makes the map well defined.
    FPModule a(ra), b(IntMatrix::vstack(rb, ra * mat));
    Morphism f(a, b, mat);
    auto k = kernel(f);
    auto c = cokernel(f);
    EXPECT_TRUE(compose(f, k.map).is_zero());
    EXPECT_TRUE(compose(c.map, f).is_zero());
    EXPECT_TRUE(is_injective(k.map));
    EXPECT_TRUE(is_surjective(c.map));
    EXPECT_TRUE(is_exact_at(k.map, f));
    EXPECT_TRUE(is_exact_at(f, c.map));
    // Enumeration cross-check of |ker| * |im| = |a| on finite sources.
    if (a.is_finite() && b.is_finite() && a.order() < 5000 && b.order() < 5000) {
      Enumeration ea(a), eb(b);
      std::int64_t zeros = 0;
      for (std::int64_t e = 0; e < ea.size(); ++e) {
        auto x = ea.coords(e);
        IntVec xv(x.begin(), x.end());
        if (eb.reduce(f.apply(xv)) == 0) ++zeros;
      }
      EXPECT_EQ(Int(zeros), k.module.order());
    }
  }
}
