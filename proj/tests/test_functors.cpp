#include <contrakit/enumerate.hpp>
#include <contrakit/functors.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace contrakit;

namespace {

FPModule inv(std::size_t r, IntVec t) { return FPModule::from_invariants(r, t); }

FPModule random_module(std::mt19937_64 &rng) {
  std::size_t g = 1 + rng() % 3;
  IntMatrix a = oracle::random_matrix(rng, g + rng() % 2 - (rng() % 3 == 0 ? 1 : 0), g, -6, 6);
  return FPModule(a);
}

// Number of elements of a finite module killed by a power of s, by enumeration.
std::int64_t count_s_power_torsion(const FPModule &m, const Int &s) {
  Enumeration en(m);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < en.size(); ++x) {
    std::int64_t y = x;
    for (int k = 0; k < 64 && y != 0; ++k) y = en.scale(y, to_i64(s));
    if (y == 0) ++count;
  }
  return count;
}

} // namespace

TEST(Telescope, ShapeAndHomotopyWitness) {
  for (Int s : {Int(2), Int(3), Int(-5), Int(6)})
    for (std::size_t n = 1; n <= 5; ++n) {
      TelescopeComplex t = telescope(s, n);
      EXPECT_TRUE(t.verify()) << s << " " << n;
      EXPECT_EQ(FPModule(t.differential).canonical().to_string(),
                FPModule::cyclic(abs(pow(s, static_cast<unsigned>(n)))).canonical().to_string());
    }
  TelescopeComplex t = telescope(2, 3);
  EXPECT_EQ(t.differential, (IntMatrix{{-2, 0, 0}, {1, -2, 0}, {0, 1, -2}}));
}

TEST(Telescope, DroppedTermBreaksWitness) {
  ScopedMutation mut(Mutation::PsiDropLastTerm);
  EXPECT_FALSE(telescope(2, 3).verify());
}

TEST(Gamma, DroppedTermIsDetected) {
  ScopedMutation mut(Mutation::PsiDropLastTerm);
  EXPECT_FALSE(gamma_s(inv(1, {12}), 2).agree);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma_s(inv(1, {12}), 2).module.to_string(), "Z/4");
  EXPECT_EQ(count_s_power_torsion(inv(0, {12}), 2), 4);
  EXPECT_TRUE(gamma_s(inv(3, {}), 7).module.is_zero());
  FPModule m = inv(1, {12});
  EXPECT_TRUE(gamma_s(m, 0).module.isomorphic(m));
  EXPECT_TRUE(gamma_s(m, 1).module.is_zero());
  EXPECT_TRUE(gamma_s(m, -1).module.is_zero());
  EXPECT_EQ(gamma_s(m, -2).module.to_string(), "Z/4");
}

TEST(Gamma, InclusionIsInjectiveIntoTorsion) {
  FPModule m(IntMatrix{{4, 2}, {2, 4}});
  GammaResult g = gamma_s(m, 2);
  EXPECT_TRUE(is_injective(g.inclusion));
  EXPECT_EQ(g.module.order(), count_s_power_torsion(m, 2));
}

TEST(Gamma, ThreeRoutesAgree) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    FPModule m = random_module(rng);
    for (Int s : {2, 3, 6, 12, 30}) {
      GammaResult g = gamma_s(m, s);
      EXPECT_TRUE(g.agree) << m.to_string() << " s=" << s;
      if (m.is_finite() && m.order() <= 5000) EXPECT_EQ(g.module.order(), count_s_power_torsion(m, s));
    }
  }
}

TEST(Gamma, LeftExactOnShortExactSequences) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 40; ++it) {
    // B = Z^g / rows, A = submodule generated by a random set of rows, C = B / A.
    FPModule B = random_module(rng);
    IntMatrix gens = oracle::random_matrix(rng, 1 + rng() % 2, B.gens(), -4, 4);
    FPModule dummy(IntMatrix(0, gens.rows()));
    auto k = kernel(Morphism(dummy, B, gens));
    FPModule A = image(Morphism(dummy, B, gens));
    Morphism f(A, B, gens);
    auto c = cokernel(f);
    Morphism g = c.map;
    ASSERT_TRUE(is_short_exact(f, g));
    for (Int s : {2, 3, 6}) {
      Morphism gf = gamma_morphism(f, s), gg = gamma_morphism(g, s);
      EXPECT_TRUE(is_injective(gf));
      EXPECT_TRUE(is_exact_at(gf, gg));
      EXPECT_TRUE(kernel(gg).module.isomorphic(gamma_s(A, s).module));
    }
    (void)k;
  }
}

TEST(Lambda, Examples) {
  EXPECT_EQ(lambda_s(inv(1, {}), 6).to_string(), "Zp(2) + Zp(3)");
  EXPECT_EQ(lambda_s(inv(0, {27}), 3).to_string(), "Z/27");
  EXPECT_TRUE(lambda_s(inv(0, {12}), 5).is_zero());
  EXPECT_TRUE(lambda_s(inv(2, {12}), 1).is_zero());
  EXPECT_EQ(lambda_s(inv(1, {12}), 0).to_string(), "Z + Z/4 + Z/3");
}

TEST(Delta, Examples) {
  EXPECT_EQ(delta_s(inv(0, {12}), 6).atoms.to_string(), "Z/4 + Z/3");
  EXPECT_TRUE(delta_s(inv(2, {12}), 1).atoms.is_zero());
  EXPECT_EQ(delta_s(inv(1, {}), 5).atoms.to_string(), "Zp(5)");
  EXPECT_EQ(delta_s(inv(1, {12}), 0).atoms.to_string(), "Z + Z/4 + Z/3");
}

TEST(Delta, AdjunctionDescriptor) {
  DeltaResult d = delta_s(inv(1, {12}), 6);
  ASSERT_EQ(d.adjunction.size(), 2u);
  EXPECT_EQ(d.adjunction[0]["images"].size(), 2u);
  EXPECT_EQ(d.adjunction[1]["images"][0]["summand"], "Zp(2)");
  EXPECT_TRUE(d.certificates["delta_equals_lambda"].get<bool>());
  EXPECT_TRUE(d.certificates["lim1_zero"].get<bool>());
}

TEST(Delta, PrimeDecompositionAndRadicalInvariance) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 100; ++it) {
    FPModule m = random_module(rng);
    AtomExpr d6 = delta_s(m, 6).atoms;
    EXPECT_EQ(d6, delta_s(m, 2).atoms + delta_s(m, 3).atoms) << m.to_string();
    EXPECT_EQ(d6, delta_s(m, 12).atoms);
    for (unsigned k : {2u, 3u}) EXPECT_EQ(d6, delta_s(m, pow(Int(6), k)).atoms);
    EXPECT_EQ(d6, lambda_s(m, 6));
  }
}

TEST(Delta, RightExactAtEveryTruncation) {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 40; ++it) {
    FPModule B = random_module(rng);
    IntMatrix gens = oracle::random_matrix(rng, 1 + rng() % 2, B.gens(), -4, 4);
    FPModule A = image(Morphism(FPModule(IntMatrix(0, gens.rows())), B, gens));
    Morphism f(A, B, gens);
    Morphism g = cokernel(f).map;
    for (Int s : {2, 6})
      for (std::size_t n : {1u, 3u}) {
        Morphism lf = completion_level_morphism(f, s, n), lg = completion_level_morphism(g, s, n);
        EXPECT_TRUE(is_surjective(lg));
        EXPECT_TRUE(is_exact_at(lf, lg));
      }
  }
}

TEST(DeltaMulti, Examples) {
  EXPECT_TRUE(delta_multi(inv(0, {12}), {2, 3}).atoms.is_zero());
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    FPModule m = random_module(rng);
    EXPECT_EQ(delta_multi(m, {6}).atoms, delta_multi(m, {12}).atoms);
    EXPECT_EQ(delta_multi(m, {6}).atoms, delta_s(m, 6).atoms);
  }
  for (Int p : {2, 3, 7}) {
    DeltaMultiResult r = delta_multi(inv(1, {}), {p, p});
    EXPECT_EQ(r.atoms, AtomExpr(Atom::zp(p)));
    EXPECT_TRUE(r.order_independent);
  }
}

TEST(DeltaMulti, OrderIndependentAndIdealGenerator) {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 30; ++it) {
    FPModule m = random_module(rng);
    std::vector<Int> gens{4, 6, 10};
    DeltaMultiResult r = delta_multi(m, gens);
    EXPECT_TRUE(r.order_independent);
    EXPECT_TRUE(r.matches_gcd);
  }
}

TEST(Lim1, Examples) {
  Lim1Data a = lim1_sequence(inv(0, {9}), 3);
  ASSERT_GE(a.tower.size(), 3u);
  EXPECT_EQ(a.tower[0].canonical().to_string(), "Z/3");
  EXPECT_EQ(a.tower[1].canonical().to_string(), "Z/9");
  EXPECT_EQ(a.tower[2].canonical().to_string(), "Z/9");
  EXPECT_TRUE(a.lim1.is_zero());
  EXPECT_TRUE(a.lim.is_zero());
  EXPECT_TRUE(a.certified);

  Lim1Data b = lim1_sequence(inv(1, {}), 5);
  for (auto &t : b.tower) EXPECT_TRUE(t.is_zero());
  EXPECT_TRUE(b.lim1.is_zero());

  Lim1Data c = lim1_sequence(inv(0, {6}), 2);
  for (auto &t : c.tower) EXPECT_EQ(t.canonical().to_string(), "Z/2");
  EXPECT_TRUE(c.lim.is_zero());
  EXPECT_TRUE(c.lim1.is_zero());
}

TEST(Lim1, TransitionsAreMultiplicationByS) {
  FPModule m = inv(1, {8, 24});
  Lim1Data d = lim1_sequence(m, 2);
  ASSERT_EQ(d.transitions.size() + 1, d.tower.size());
  for (std::size_t i = 0; i < d.transitions.size(); ++i) {
    Morphism lo = kernel(Morphism::scalar(m, pow(Int(2), unsigned(i + 1)))).map;
    Morphism hi = kernel(Morphism::scalar(m, pow(Int(2), unsigned(i + 2)))).map;
    EXPECT_TRUE(compose(lo, d.transitions[i]).equals(compose(Morphism::scalar(m, 2), hi)));
  }
  EXPECT_TRUE(d.certified);
}

TEST(Lim1, CertifiedZeroOnRandomModules) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 60; ++it) {
    FPModule m = random_module(rng);
    for (Int s : {0, 1, 2, 6, 12}) {
      Lim1Data d = lim1_sequence(m, s);
      EXPECT_TRUE(d.certified) << m.to_string() << " s=" << s;
      EXPECT_TRUE(d.lim.is_zero() || s == 0);
    }
  }
}

TEST(Properties, IntegersAtAPrime) {
  PropertyFlags f = check_properties(inv(1, {}), 5);
  EXPECT_TRUE(f.torsion_free.value);
  EXPECT_FALSE(f.divisible.value);
  EXPECT_TRUE(f.separated.value);
  EXPECT_FALSE(f.complete.value);
  EXPECT_FALSE(f.contraadjusted.value);
  EXPECT_FALSE(f.contramodule.value);
  EXPECT_EQ(f.contraadjusted.witness["delta"], "Zp(5)");
}

TEST(Properties, PrimePowerCyclic) {
  PropertyFlags f = check_properties(inv(0, {27}), 3);
  EXPECT_TRUE(f.separated.value);
  EXPECT_TRUE(f.complete.value);
  EXPECT_TRUE(f.contraadjusted.value);
  EXPECT_TRUE(f.contramodule.value);
  EXPECT_FALSE(f.torsion_free.value);
}

// 5 acts invertibly on Z/12, so Hom(Z[1/5], Z/12) = Z/12: divisible and
// contraadjusted but not a contramodule.
TEST(Properties, InvertibleScalar) {
  PropertyFlags f = check_properties(inv(0, {12}), 5);
  EXPECT_TRUE(f.divisible.value);
  EXPECT_TRUE(f.contraadjusted.value);
  EXPECT_FALSE(f.contramodule.value);
  EXPECT_FALSE(f.separated.value);
  EXPECT_EQ(f.contramodule.witness["hom_from_localization"], "Z/12");
}

TEST(Properties, ImplicationDiagramOnRandomModules) {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 80; ++it) {
    FPModule m = random_module(rng);
    for (Int s : {-3, -1, 0, 1, 2, 3, 6, 10}) {
      PropertyFlags f = check_properties(m, s);
      EXPECT_TRUE(f.violations().empty()) << m.to_string() << " s=" << s << " " << f.to_json().dump();
      bool expect_ca = m.free_rank() == 0 || abs(s) <= 1;
      EXPECT_EQ(f.contraadjusted.value, expect_ca) << m.to_string() << " s=" << s;
    }
  }
}

TEST(SolveSystem, Examples) {
  PeriodicSeq a;
  a.prefix = {{1}};
  SystemSolution r = solve_system_fp(inv(0, {8}), 2, a, 6);
  EXPECT_TRUE(r.residual_zero);
  EXPECT_TRUE(r.unique);
  EXPECT_EQ(r.b[0], IntVec{1});
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(r.b[n], IntVec{0});

  SystemSolution z = solve_system_fp(inv(0, {8, 8}), 2, PeriodicSeq{}, 5);
  for (auto &b : z.b) EXPECT_EQ(b, (IntVec{0, 0}));

  PeriodicSeq c;
  c.prefix = {{3}, {7}};
  c.cycle = {{1}, {2}};
  SystemSolution w = solve_system_fp(inv(0, {12}), 5, c, 10);
  EXPECT_TRUE(w.residual_zero);
  EXPECT_FALSE(w.unique);

  EXPECT_THROW(solve_system_fp(inv(1, {}), 2, a, 3), InfiniteModule);
}

TEST(SolveSystem, RandomInstancesSatisfyEquations) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 200; ++it) {
    IntVec t;
    for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) t.push_back(2 + rng() % 40);
    FPModule m = inv(0, t).canonical();
    const std::size_t dim = m.torsion().size();
    Int s = static_cast<int>(rng() % 13) - 6;
    PeriodicSeq a;
    auto rand_elem = [&] {
      IntVec v(dim);
      for (auto &x : v) x = static_cast<int>(rng() % 50);
      return v;
    };
    for (std::size_t k = 0, n = rng() % 4; k < n; ++k) a.prefix.push_back(rand_elem());
    for (std::size_t k = 0, n = rng() % 3; k < n; ++k) a.cycle.push_back(rand_elem());
    SystemSolution r = solve_system_fp(m, s, a, 12);
    EXPECT_TRUE(r.residual_zero) << m.to_string() << " s=" << s;
    EXPECT_EQ(r.unique, check_properties(m, s).contramodule.value) << m.to_string() << " s=" << s;
  }
}

TEST(Cech, ComplexTerms) {
  json c = cech_complex({2, 3});
  ASSERT_EQ(c["degrees"].size(), 3u);
  EXPECT_EQ(c["degrees"][0]["terms"][0]["term"], "Z");
  EXPECT_EQ(c["degrees"][1]["terms"][0]["term"], "Zinv(2)");
  EXPECT_EQ(c["degrees"][1]["terms"][1]["term"], "Zinv(3)");
  EXPECT_EQ(c["degrees"][2]["terms"][0]["term"], "Zinv(6)");
  json z = cech_complex({0, 4});
  EXPECT_EQ(z["degrees"][1]["terms"][0]["term"], "0");
  EXPECT_EQ(z["degrees"][1]["terms"][1]["term"], "Zinv(2)");
}

TEST(GammaI, Examples) {
  EXPECT_TRUE(gamma_I(inv(0, {12}), {2, 3}).module.is_zero());
  GammaIResult r = gamma_I(inv(1, {12}), {6});
  EXPECT_EQ(r.module.to_string(), "Z/12");
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(count_s_power_torsion(inv(0, {12}), 6), 12);
  EXPECT_TRUE(gamma_I(inv(0, {25}), {3}).module.is_zero());
}

TEST(GammaI, IteratedMatchesTelescope) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 30; ++it) {
    FPModule m = random_module(rng);
    for (auto gens : std::vector<std::vector<Int>>{{2}, {4, 6}, {6, 10}, {2, 3}})
      EXPECT_TRUE(gamma_I(m, gens).agree) << m.to_string();
  }
}
