#include <contrakit/atom_properties.hpp>
#include <contrakit/atoms.hpp>
#include <contrakit/duality.hpp>
#include <contrakit/envelope.hpp>
#include <contrakit/functors.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace contrakit;

namespace {

AtomExpr A(const std::string &s) { return parse_atoms(s); }

std::string hom_str(const std::string &a, const std::string &b) {
  auto r = hom_atoms(A(a), A(b));
  return r ? r->to_string() : "Unknown";
}

FPModule inv(std::size_t r, IntVec t) { return FPModule::from_invariants(r, t); }

} // namespace

TEST(Grammar, RoundTrip) {
  for (std::string s : {"Z", "Z/8", "Q", "Zp(2)", "Qp(3)", "Prufer(5)", "Zinv(6)", "0", "Z^3 + Z/4 + Z/3",
                        "Z/2^2 + Zp(2)^3", "Prod{2,3}[Zp^1]", "Prod{all}[Zp^2]", "Q^2 + Prufer(2)^3",
                        "Zp(3) + Prod{2,5}[Zp^1 + Qp^2] + Prod{all}[Zp^1]"}) {
    EXPECT_EQ(A(s).to_string(), s);
    EXPECT_EQ(A(A(s).to_string()), A(s));
  }
}

TEST(Grammar, Normalisation) {
  EXPECT_EQ(A("Z/12").to_string(), "Z/4 + Z/3");
  EXPECT_EQ(A("Zinv(12)").to_string(), "Zinv(6)");
  EXPECT_EQ(A("Zinv(-6)").to_string(), "Zinv(6)");
  EXPECT_EQ(A("Adele(2)").to_string(), "Prod{all}[Zp^2]");
  EXPECT_EQ(A("Zp(3) + Z + Zp(2)").to_string(), "Z + Zp(2) + Zp(3)");
  EXPECT_EQ(A("Z + Z").to_string(), "Z^2");
}

TEST(Grammar, ErrorsCarryPosition) {
  for (std::string s : {"", "Zp(4)", "Z/1", "Zinv(1)", "Foo", "Z +", "Prod{2}[Z]", "Z^", "Zp(2"}) {
    EXPECT_THROW(A(s), Error) << s;
  }
  try {
    A("Z + Q + Zq(2)");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.position, 8u);
  }
}

TEST(Grammar, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> atoms{"Z", "Q", "Z/4", "Z/9", "Zp(2)", "Qp(5)", "Prufer(3)", "Zinv(10)"};
  for (int it = 0; it < 200; ++it) {
    AtomExpr e;
    for (std::size_t k = 0, n = rng() % 5; k < n; ++k) {
      e += A(atoms[rng() % atoms.size()]).times(1 + rng() % 3);
    }
    if (rng() % 3 == 0) e += AtomExpr::adele(1 + rng() % 2);
    EXPECT_EQ(A(e.to_string()), e) << e.to_string();
    EXPECT_EQ(A(e.to_string()).to_string(), e.to_string());
  }
}

TEST(Hom, Examples) {
  EXPECT_EQ(hom_str("Zp(2)", "Zp(3)"), "0");
  EXPECT_EQ(hom_str("Zp(5)", "Zp(5)"), "Zp(5)");
  EXPECT_EQ(hom_str("Prufer(7)", "Prufer(7)"), "Zp(7)");
  EXPECT_EQ(hom_str("Q", "Z"), "0");
  EXPECT_EQ(hom_str("Z", "Zp(3)"), "Zp(3)");
  EXPECT_EQ(hom_str("Z/8", "Z/4"), "Z/4");
  EXPECT_EQ(hom_str("Prod{all}[Zp^1]", "Z"), "Unknown");
}

TEST(Hom, ProductRigidity) {
  EXPECT_EQ(hom_str("Prod{2,3}[Zp^1]", "Zp(5)"), "0");
  EXPECT_EQ(hom_str("Prod{2,3}[Zp^1]", "Z/25"), "0");
}

TEST(Hom, AdditiveInSource) {
  const std::vector<std::string> xs{"Z", "Z/4", "Z/3", "Zp(2)", "Zp(3)", "Q", "Prufer(2)", "Prufer(3)", "Qp(2)"};
  for (auto &a : xs)
    for (auto &a2 : xs)
      for (auto &b : xs) {
        auto lhs = hom_atoms(A(a) + A(a2), A(b));
        auto r1 = hom_atoms(A(a), A(b)), r2 = hom_atoms(A(a2), A(b));
        if (!r1 || !r2) {
          EXPECT_FALSE(lhs.has_value());
          continue;
        }
        ASSERT_TRUE(lhs.has_value());
        EXPECT_EQ(*lhs, *r1 + *r2) << a << " + " << a2 << " -> " << b;
      }
}

TEST(Hom, FiniteEntriesMatchFpmod) {
  for (int a : {2, 4, 8, 3, 9, 12})
    for (int b : {2, 4, 3, 27, 6}) {
      auto r = hom_atoms(AtomExpr(Atom::cyclic(a)), AtomExpr(Atom::cyclic(b)));
      ASSERT_TRUE(r);
      AtomExpr expect;
      FPModule h = hom(inv(0, {a}), inv(0, {b}));
      for (auto &d : h.torsion()) expect.add(Atom::cyclic(d));
      EXPECT_EQ(*r, expect);
    }
}

TEST(Flags, Examples) {
  AtomFlags f = flags_atoms(A("Zp(2) + Z/8"));
  EXPECT_TRUE(f.cotorsion);
  EXPECT_TRUE(f.reduced);
  AtomFlags q = flags_atoms(A("Q"));
  EXPECT_TRUE(q.cotorsion && q.divisible && q.flat);
  EXPECT_FALSE(q.reduced);
  EXPECT_FALSE(flags_atoms(A("Zinv(6)")).cotorsion);
  EXPECT_FALSE(flags_atoms(A("Z")).cotorsion);
  AtomFlags pr = flags_atoms(A("Prufer(3)"));
  EXPECT_TRUE(pr.divisible && pr.cotorsion);
  EXPECT_FALSE(pr.flat);
}

// Zinv(6) is not cotorsion: its Delta_5 is Zp(5), which it cannot map onto.
TEST(Flags, LocalizationNotContraadjusted) {
  AtomExpr d = delta_atoms(A("Zinv(6)"), 5);
  EXPECT_EQ(d.to_string(), "Zp(5)");
  EXPECT_TRUE(delta_atoms(A("Zinv(6)"), 3).is_zero());
}

TEST(DeltaAtoms, Rules) {
  EXPECT_EQ(delta_atoms(A("Zp(2)"), 2).to_string(), "Zp(2)");
  EXPECT_EQ(delta_atoms(A("Z + Z/12"), 6).to_string(), "Z/4 + Zp(2) + Z/3 + Zp(3)");
  EXPECT_EQ(delta_atoms(A("Prod{all}[Zp^1]"), 6).to_string(), "Zp(2) + Zp(3)");
  EXPECT_TRUE(delta_atoms(A("Q + Prufer(2)"), 2).is_zero());
  EXPECT_EQ(delta_atoms(A("Z/9"), 0).to_string(), "Z/9");
  EXPECT_TRUE(delta_atoms(A("Z/9"), -1).is_zero());
}

TEST(DeltaAtoms, MatchesFpmodDelta) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    IntVec t;
    for (std::size_t k = 0, n = rng() % 3; k < n; ++k) t.push_back(2 + rng() % 30);
    FPModule m = inv(rng() % 3, t);
    for (Int s : {2, 6, 15}) EXPECT_EQ(delta_atoms(fp_atoms(m), s), delta_s(m, s).atoms);
  }
}

TEST(Classify, Examples) {
  Classification a = classify(A("Q^2 + Prufer(2)^3"));
  EXPECT_EQ(a.verdict, "injective");
  ASSERT_TRUE(a.injective);
  EXPECT_EQ(a.injective->rational, 2);
  EXPECT_EQ(a.injective->prufer.at(2), 3);

  Classification b = classify(A("Zp(2) + Zp(3)^5"));
  EXPECT_EQ(b.verdict, "flat_cotorsion");
  EXPECT_EQ(b.flat_cotorsion->ranks, (std::map<Int, Int>{{2, 1}, {3, 5}}));

  Classification c = classify(A("Z"));
  EXPECT_EQ(c.verdict, "NotInClass");
  EXPECT_EQ(c.failing_flag, "cotorsion");

  Classification d = classify(A("Z/8 + Zp(2) + Z/3"));
  EXPECT_EQ(d.verdict, "reduced_cotorsion");
  EXPECT_EQ(d.reduced_cotorsion->factors.at(2).zp_rank, 1);
  EXPECT_EQ(d.reduced_cotorsion->factors.at(2).cyclic.at(3), 1);

  EXPECT_EQ(classify(A("Qp(3)")).verdict, "NotInClass");
}

TEST(Classify, RoundTripsNormalForms) {
  std::mt19937_64 rng(11);
  const std::vector<Int> primes{2, 3, 5, 7};
  for (int it = 0; it < 100; ++it) {
    InjectiveForm inj;
    inj.rational = rng() % 3;
    for (auto &p : primes)
      if (rng() % 2) inj.prufer[p] = 1 + rng() % 3;
    auto ci = classify(build_injective(inj));
    if (inj.rational == 0 && inj.prufer.empty()) continue;
    ASSERT_TRUE(ci.injective);
    EXPECT_EQ(*ci.injective, inj);

    FlatCotorsionForm fc;
    fc.rational = rng() % 2;
    for (auto &p : primes)
      if (rng() % 2) fc.ranks[p] = 1 + rng() % 3;
    fc.all_rank = rng() % 2;
    auto cf = classify(build_flat_cotorsion(fc));
    ASSERT_TRUE(cf.flat_cotorsion);
    EXPECT_EQ(*cf.flat_cotorsion, fc);

    ReducedCotorsionForm rc;
    for (auto &p : primes)
      if (rng() % 2) {
        auto &loc = rc.factors[p];
        loc.zp_rank = rng() % 2;
        loc.cyclic[1 + rng() % 3] = 1 + rng() % 2;
      }
    rc.all_rank = rng() % 2;
    auto cr = classify(build_reduced_cotorsion(rc));
    ASSERT_TRUE(cr.reduced_cotorsion);
    EXPECT_EQ(*cr.reduced_cotorsion, rc);
  }
}

TEST(Matlis, Examples) {
  for (int pk : {2, 4, 8, 9, 25}) EXPECT_EQ(matlis_dual(inv(0, {pk})).to_string(), "Z/" + std::to_string(pk));
  EXPECT_EQ(matlis_dual(inv(0, {3, 9})).to_string(), "Z/3 + Z/9");
  EXPECT_EQ(count_homs_brute(inv(0, {3, 9}), inv(0, {81})), 27);
  EXPECT_TRUE(matlis_dual(FPModule::zero()).is_zero());
  EXPECT_THROW(matlis_dual(inv(0, {6})), NotPPrimary);
  EXPECT_THROW(matlis_dual(inv(1, {})), NotPPrimary);
}

TEST(Matlis, DoubleDualAndEvaluation) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 60; ++it) {
    Int p = std::vector<int>{2, 3, 5}[rng() % 3];
    IntVec t;
    for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) t.push_back(pow(p, 1 + rng() % 3));
    // Present it non-diagonally.
    FPModule m = inv(0, t);
    IntMatrix P = m.presentation();
    if (P.rows() >= 2) P.add_row(0, 1, 1 + rng() % 4);
    m = FPModule(P);
    MatlisDual d = matlis_dual_full(m);
    MatlisDual dd = matlis_dual_full(d.module, p, d.K);
    EXPECT_EQ(d.module.torsion(), m.torsion());
    EXPECT_EQ(dd.module.torsion(), m.torsion());
    Morphism ev = evaluation_map(m, d, dd);
    EXPECT_TRUE(is_injective(ev) && is_surjective(ev));
    if (m.order() <= 5000) EXPECT_TRUE(bijective_by_enumeration(ev));
    if (pow(pow(p, d.K), static_cast<unsigned>(d.module.gens())) <= 200000) {
      EXPECT_EQ(count_homs_brute(d.module, FPModule::cyclic(pow(p, d.K))), m.order());
    }
  }
}

TEST(Matlis, DualOfShortExactSequenceIsExact) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 40; ++it) {
    Int p = rng() % 2 ? 2 : 3;
    IntVec t;
    for (std::size_t k = 0, n = 1 + rng() % 2; k < n; ++k) t.push_back(pow(p, 1 + rng() % 3));
    FPModule B = inv(0, t);
    IntVec gen(B.gens());
    for (auto &x : gen) x = static_cast<int>(rng() % 5);
    IntMatrix G = IntMatrix::from_rows({gen}, B.gens());
    FPModule A = image(Morphism(FPModule(IntMatrix(0, 1)), B, G));
    Morphism f(A, B, G);
    Morphism g = cokernel(f).map;
    ASSERT_TRUE(short_exact_by_enumeration(f, g));
    unsigned K = exponent_valuation(B, p);
    MatlisDual dA = matlis_dual_full(A, p, K), dB = matlis_dual_full(B, p, K), dC = matlis_dual_full(g.target(), p, K);
    Morphism dg = dual_morphism(g, dB, dC), df = dual_morphism(f, dA, dB);
    EXPECT_TRUE(short_exact_by_enumeration(dg, df));
    EXPECT_TRUE(is_short_exact(dg, df));
  }
}

TEST(Envelope, Examples) {
  Envelope z = cotorsion_envelope(inv(1, {}));
  EXPECT_EQ(z.envelope.to_string(), "Prod{all}[Zp^1]");
  EXPECT_EQ(z.cokernel, "Q-vector space");
  EXPECT_TRUE(z.injective);

  Envelope f = cotorsion_envelope(inv(0, {12}));
  EXPECT_EQ(f.envelope.to_string(), "Z/4 + Z/3");
  EXPECT_EQ(f.cokernel, "0");
  EXPECT_EQ(f.envelope, delta_s(inv(0, {12}), 6).atoms);

  Envelope m = cotorsion_envelope(inv(1, {5}));
  EXPECT_EQ(m.envelope.to_string(), "Z/5 + Prod{all}[Zp^1]");
  EXPECT_EQ(m.map[0]["lands_in"][0]["block"], "5");
}

TEST(Envelope, AlwaysCotorsionAndInjective) {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 40; ++it) {
    IntVec t;
    for (std::size_t k = 0, n = rng() % 3; k < n; ++k) t.push_back(2 + rng() % 40);
    FPModule m(FPModule::from_invariants(rng() % 3, t).presentation());
    Envelope e = cotorsion_envelope(m);
    EXPECT_TRUE(flags_atoms(e.envelope).cotorsion);
    EXPECT_TRUE(e.injective) << e.injectivity.dump();
    // At each prime in play the envelope agrees with Delta_p.
    for (Int p : {2, 3, 5}) EXPECT_EQ(delta_atoms(e.envelope, p), delta_s(m, p).atoms);
  }
}

TEST(Corpus, Entries) {
  auto c = flat_cover_corpus("cyclic(12)");
  EXPECT_EQ(c.terms[0], "Zp(2) + Zp(3)");
  EXPECT_EQ(c.terms[2], "Z/12");
  EXPECT_TRUE(c.verified());
  bool has_enum = false;
  for (auto &l : c.levels) has_enum = has_enum || l.exact_enumeration.has_value();
  EXPECT_TRUE(has_enum);

  auto p = flat_cover_corpus("prufer(3)");
  EXPECT_EQ(p.terms, (std::vector<std::string>{"Zp(3)", "Qp(3)", "Prufer(3)"}));
  EXPECT_TRUE(p.verified());

  EXPECT_TRUE(flat_cover_corpus("Q_mod_Z").verified());
  auto z = flat_cover_corpus("Z_envelope");
  EXPECT_TRUE(z.verified());
  EXPECT_EQ(z.quotient_flag, "Q-vector space");

  EXPECT_THROW(flat_cover_corpus("cyclic(1)"), UnknownCorpusEntry);
  EXPECT_THROW(flat_cover_corpus("prufer(4)"), UnknownCorpusEntry);
  EXPECT_THROW(flat_cover_corpus("nope"), UnknownCorpusEntry);
}

TEST(AtomProperties, Examples) {
  PropertyFlags z = atom_properties(A("Z"), 5);
  EXPECT_TRUE(z.torsion_free.value);
  EXPECT_FALSE(z.complete.value);
  EXPECT_EQ(z.complete.witness["summand"], "Z");
  PropertyFlags zp = atom_properties(A("Zp(3) + Z/9"), 3);
  EXPECT_TRUE(zp.contramodule.value);
  EXPECT_TRUE(zp.separated.value);
  PropertyFlags pr = atom_properties(A("Prufer(2)"), 2);
  EXPECT_TRUE(pr.contraadjusted.value);
  EXPECT_FALSE(pr.contramodule.value);
  EXPECT_FALSE(pr.separated.value);
  // Z[1/6] at s = 2: 2 is a unit there.
  EXPECT_TRUE(atom_properties(A("Zinv(6)"), 2).divisible.value);
  EXPECT_FALSE(atom_properties(A("Zinv(3)"), 2).complete.value);
  // The full product is not separated at s: the factors away from s survive.
  PropertyFlags all = atom_properties(A("Prod{all}[Zp^1]"), 6);
  EXPECT_FALSE(all.separated.value);
  EXPECT_TRUE(all.complete.value);
  EXPECT_TRUE(all.contraadjusted.value);
  EXPECT_FALSE(all.contramodule.value);
  // Degenerate scalars.
  EXPECT_TRUE(atom_properties(A("Z"), 0).contramodule.value);
  EXPECT_FALSE(atom_properties(A("Z"), 0).torsion_free.value);
  EXPECT_FALSE(atom_properties(A("Z/4"), 1).contramodule.value);
  EXPECT_TRUE(atom_properties(A("0"), 1).contramodule.value);
}

TEST(AtomProperties, AgreeWithDecidersOnFiniteModules) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 120; ++it) {
    IntVec t;
    for (std::size_t k = 0, n = rng() % 3; k < n; ++k) t.push_back(2 + rng() % 30);
    FPModule m(FPModule::from_invariants(rng() % 3, t).presentation());
    for (Int s : {-2, -1, 0, 1, 2, 3, 5, 6, 10, 12}) {
      PropertyFlags f = check_properties(m, s), g = atom_properties(fp_atoms(m), s);
      EXPECT_EQ(f.torsion_free.value, g.torsion_free.value) << m.to_string() << " s=" << s;
      EXPECT_EQ(f.divisible.value, g.divisible.value) << m.to_string() << " s=" << s;
      EXPECT_EQ(f.separated.value, g.separated.value) << m.to_string() << " s=" << s;
      EXPECT_EQ(f.complete.value, g.complete.value) << m.to_string() << " s=" << s;
      EXPECT_EQ(f.contraadjusted.value, g.contraadjusted.value) << m.to_string() << " s=" << s;
      EXPECT_EQ(f.contramodule.value, g.contramodule.value) << m.to_string() << " s=" << s;
    }
  }
}

TEST(AtomProperties, ImplicationDiagramOnRandomExpressions) {
  std::mt19937_64 rng(43);
  const std::vector<std::string> pieces{"Z", "Q", "Z/8", "Z/9", "Zp(2)", "Zp(5)", "Qp(3)", "Prufer(2)", "Prufer(7)",
                                        "Zinv(2)", "Zinv(15)", "Prod{all}[Zp^1]", "Prod{all}[Prufer^1]"};
  for (int it = 0; it < 200; ++it) {
    std::string s;
    for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) s += (k ? " + " : "") + pieces[rng() % pieces.size()];
    AtomExpr e = A(s);
    for (Int sc : {0, 1, 2, 3, 6, 7, 10}) {
      auto v = atom_properties(e, sc).violations();
      EXPECT_TRUE(v.empty()) << s << " s=" << sc;
    }
  }
}
