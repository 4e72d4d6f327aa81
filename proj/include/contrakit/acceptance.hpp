#pragma once

#include "atom_properties.hpp"
#include "duality.hpp"
#include "enumerate.hpp"
#include "envelope.hpp"
#include "functors.hpp"
#include "lab.hpp"

#include <chrono>
#include <functional>
#include <random>

namespace contrakit {

enum class Scale { Smoke, Desk };

inline Scale parse_scale(const std::string &s) {
  if (s == "smoke") return Scale::Smoke;
  if (s == "desk") return Scale::Desk;
  throw Error("unknown scale: " + s);
}

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  json witness = json::object();
  json details = json::object();
  double seconds = 0;

  json to_json(bool timing = true) const {
    json j = {{"criterion", index}, {"name", name}, {"pass", pass}, {"witness", witness}, {"details", details}};
    if (timing) j["seconds"] = seconds;
    return j;
  }
};

namespace acc {

struct Ctx {
  Scale scale;
  std::uint64_t seed;
  std::mt19937_64 rng(int salt) const { return std::mt19937_64(seed * 1000003ULL + static_cast<std::uint64_t>(salt)); }
  int n(int desk, int smoke) const { return scale == Scale::Desk ? desk : smoke; }
};

/// Tracks the first failure of a criterion and counts what was checked.
struct Tally {
  bool pass = true;
  json witness = json::object();
  std::size_t checked = 0;
  void check(bool ok, const std::function<json()> &w) {
    ++checked;
    if (!ok && pass) {
      pass = false;
      witness = w();
    }
  }
};

inline FPModule random_fp_module(std::mt19937_64 &rng) {
  std::size_t g = 1 + rng() % 3;
  std::size_t r = g + rng() % 2 - (rng() % 3 == 0 ? 1 : 0);
  IntMatrix a(r, g);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < g; ++j) a(i, j) = static_cast<int>(rng() % 13) - 6;
  return FPModule(a);
}

/// Fixed list of finitely presented modules: Z^r plus a divisibility chain of
/// at most two invariants, and a few non-diagonal presentations.
inline std::vector<FPModule> fp_corpus() {
  const std::vector<Int> ds{2, 3, 4, 5, 6, 8, 9, 12, 27, 30};
  std::vector<IntVec> chains{{}};
  for (auto &a : ds) {
    chains.push_back({a});
    for (auto &b : ds)
      if (b > a && b % a == 0) chains.push_back({a, b});
  }
  std::vector<FPModule> out;
  for (std::size_t r = 0; r <= 2; ++r)
    for (auto &c : chains) out.push_back(FPModule::from_invariants(r, c));
  out.push_back(FPModule(IntMatrix{{4, 2}, {2, 4}}));
  out.push_back(FPModule(IntMatrix{{2, 0}, {0, 0}}));
  out.push_back(FPModule(IntMatrix{{6, 4, 0}, {0, 3, 9}}));
  out.push_back(FPModule(IntMatrix{{0}}));
  return out;
}

inline std::vector<AtomExpr> atom_corpus() {
  std::vector<AtomExpr> out{AtomExpr::zero()};
  for (Int p : {2, 3, 5, 7}) {
    out.emplace_back(Atom::cyclic(p));
    out.emplace_back(Atom::cyclic(p * p * p));
    out.emplace_back(Atom::zp(p));
    out.emplace_back(Atom::qp(p));
    out.emplace_back(Atom::prufer(p));
  }
  out.emplace_back(Atom::free());
  out.emplace_back(Atom::rat());
  for (Int r : {2, 3, 6, 35, 210}) out.emplace_back(Atom::zinv(r));
  for (auto k : {BlockKind::Zp, BlockKind::Qp, BlockKind::Prufer}) {
    AtomExpr all, some;
    all.add_block(ProductBlock{true, {}, {{k, 1}}});
    some.add_block(ProductBlock{false, {2, 5}, {{k, 2}}});
    out.push_back(all);
    out.push_back(some);
  }
  for (auto s : {"Z + Z/4 + Zp(3)", "Q^2 + Prufer(2)^3", "Zp(2) + Zp(3)^5", "Z/8 + Zp(2) + Z/3",
                 "Zinv(6) + Z/5", "Prod{all}[Zp^1] + Z/12", "Qp(3) + Z/9 + Prufer(5)"})
    out.push_back(parse_atoms(s));
  return out;
}

// 1
inline CriterionResult snf_oracle(const Ctx &c) {
  auto rng = c.rng(1);
  Tally t;
  std::size_t enumerated = 0, infinite = 0, too_big = 0;
  const int trials = c.n(200, 40);
  for (int it = 0; it < trials; ++it) {
    std::size_t r = 1 + rng() % 5, k = 1 + rng() % 5;
    IntMatrix a(r, k);
    // Sparse entries keep many cokernels small enough to enumerate.
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j) a(i, j) = rng() % 2 ? static_cast<int>(rng() % 61) - 30 : 0;
    FPModule m(a);
    try {
      Enumeration en(a, 100000);
      ++enumerated;
      IntVec counted = en.invariants_by_counting();
      t.check(m.free_rank() == 0 && counted == m.torsion(), [&] {
        return json{{"matrix", jmatrix(a)}, {"snf_torsion", jvec(m.torsion())}, {"counted", jvec(counted)}};
      });
    } catch (const InfiniteModule &) {
      ++infinite;
      t.check(m.free_rank() > 0, [&] { return json{{"matrix", jmatrix(a)}, {"reason", "enumeration saw an infinite cokernel"}}; });
    } catch (const OrderBoundExceeded &) {
      ++too_big;
      t.check(m.free_rank() == 0 && m.order() > 100000,
              [&] { return json{{"matrix", jmatrix(a)}, {"reason", "order disagrees with the bound"}}; });
    }
  }
  return {1, "SNF oracle equivalence", t.pass, t.witness,
          {{"matrices", trials}, {"enumerated", enumerated}, {"infinite", infinite}, {"over_bound", too_big}}};
}

// 2
inline CriterionResult gamma_three_way(const Ctx &c) {
  auto rng = c.rng(2);
  Tally t;
  const int trials = c.n(100, 20);
  for (int it = 0; it < trials; ++it) {
    FPModule m = random_fp_module(rng);
    for (Int s : {2, 3, 6, 12, 30}) {
      GammaResult g = gamma_s(m, s);
      t.check(g.agree, [&] {
        return json{{"module", module_json(m)}, {"s", jint(s)}, {"via_stabilization", g.via_stabilization.to_string()},
                    {"via_telescope", g.via_telescope.to_string()}, {"via_tor", g.via_tor.to_string()}};
      });
    }
  }
  return {2, "Gamma_s three-way agreement", t.pass, t.witness, {{"modules", trials}, {"checks", t.checked}}};
}

// 3
inline CriterionResult delta_decomposition(const Ctx &c) {
  auto rng = c.rng(3);
  Tally t;
  const int trials = c.n(100, 20);
  for (int it = 0; it < trials; ++it) {
    FPModule m = random_fp_module(rng);
    AtomExpr d6 = delta_s(m, 6).atoms, d2 = delta_s(m, 2).atoms, d3 = delta_s(m, 3).atoms, d12 = delta_s(m, 12).atoms;
    t.check(d6 == d2 + d3 && d6 == d12, [&] {
      return json{{"module", module_json(m)}, {"delta_6", d6.to_string()}, {"delta_2 + delta_3", (d2 + d3).to_string()},
                  {"delta_12", d12.to_string()}};
    });
  }
  return {3, "Delta prime decomposition and radical invariance", t.pass, t.witness, {{"modules", trials}}};
}

// 4
inline CriterionResult lim1_corpus(const Ctx &c) {
  Tally t;
  auto corpus = fp_corpus();
  const std::vector<Int> ss = c.scale == Scale::Desk ? std::vector<Int>{2, 3, 5, 6, 12} : std::vector<Int>{2, 6};
  for (auto &m : corpus)
    for (auto &s : ss) {
      Lim1Data l = lim1_sequence(m, s);
      DeltaResult d = delta_s(m, s);
      AtomExpr lam = lambda_s(m, s);
      t.check(l.certified && l.lim1.is_zero() && d.atoms == lam && d.certificates["delta_equals_lambda"].get<bool>(),
              [&] {
                return json{{"module", module_json(m)}, {"s", jint(s)}, {"certified", l.certified},
                            {"lim1", l.lim1.to_string()}, {"delta", d.atoms.to_string()}, {"lambda", lam.to_string()}};
              });
    }
  return {4, "lim1 vanishes and Delta equals Lambda", t.pass, t.witness,
          {{"modules", corpus.size()}, {"checks", t.checked}}};
}

namespace detail {

inline PropertyFlags nilpotent_carrier_flags(bool axioms, bool telescope, const std::string &name) {
  PropertyFlags f;
  json nil = {{"carrier", name}, {"reason", "s acts nilpotently on a nonzero carrier"}};
  f.torsion_free = {false, nil};
  f.divisible = {false, nil};
  f.separated = {true, {{"reason", "s^H = 0 at truncation"}}};
  f.complete = {true, {{"reason", "s^H = 0 at truncation"}}};
  f.contraadjusted = {telescope, {{"source", "telescope solver residuals"}}};
  f.contramodule = {axioms, {{"source", "summation axioms"}}};
  return f;
}

} // namespace detail

/// Flags of the lab carriers, each computed from the corresponding checks.
inline std::vector<std::pair<std::string, PropertyFlags>> lab_carrier_flags(std::uint64_t seed, int trials) {
  std::vector<std::pair<std::string, PropertyFlags>> out;
  std::mt19937_64 rng(seed);
  auto probe = [&](const auto &car) {
    using C = std::decay_t<decltype(car)>;
    Report r;
    check_axioms(car, rng, trials, r);
    bool tele = true;
    for (int k = 0; k < trials; ++k) {
      std::vector<typename C::Elem> a(1 + rng() % 6);
      for (auto &x : a) x = car.random(rng);
      auto sol = solve_telescope<C>(car, [&](std::size_t n) { return n < a.size() ? a[n] : car.zero(); }, 6,
                                    {car.random(rng)});
      tele = tele && sol.residual_zero;
    }
    out.emplace_back(car.name, detail::nilpotent_carrier_flags(r.all_pass(), tele, car.name));
    return r.all_pass();
  };
  probe(zp_scalar(2, 24));
  probe(zp_mod_pk(3, 8));
  probe(FiniteProductCarrier({2, 3, 5}, 12));
  probe(NullSeqCarrier{"NullSeqC", 2, 16});
  probe(PowerSeriesCarrier{"PowerSeries(Z/4,z)", 4, 12});

  // C/E: the nilpotent picture does not apply, the true module is not separated.
  QuotientCECarrier q(2, 16);
  Report ax;
  check_axioms(q, rng, trials, ax);
  PropertyFlags f;
  f.contramodule = {ax.all_pass(), {{"source", "summation axioms modulo E"}}};
  bool tele = true;
  for (int k = 0; k < trials; ++k) {
    std::vector<TailSeq> a(1 + rng() % 4);
    for (auto &x : a) x = q.random(rng);
    tele = tele && solve_telescope<QuotientCECarrier>(q, [&](std::size_t n) { return n < a.size() ? a[n] : q.zero(); }, 4)
                       .residual_zero;
  }
  f.contraadjusted = {tele, {{"source", "telescope solver modulo E"}}};
  Report ce = counterexample_CE(2, 16, 12);
  f.separated = {!ce.all_pass(), {{"source", "counterexample_CE"}, {"class", ce.result["sum"]}}};
  auto e1 = TailSeq::unit(2, 16, 1);
  bool e1_nonzero = !membership(e1, SeqSpace::E).member, pe1_zero = membership(e1.scale(2), SeqSpace::E).member;
  f.torsion_free = {!(e1_nonzero && pe1_zero), {{"element", e1.to_json()}, {"p_times_element_in_E", pe1_zero}}};
  auto div = membership(e1, SeqSpace::EPlusPmC, 1);
  f.divisible = {div.member, {{"element", e1.to_json()}, {"in_E_plus_pC", div.witness}}};
  f.complete = {true, {{"reason", "C/E -> lim C/(E + p^n C) is onto because C is p-complete"}}};
  out.emplace_back(q.name, f);
  return out;
}

// 5
inline CriterionResult implication_diagram(const Ctx &c) {
  Tally t;
  const std::vector<Int> ss{0, 1, -1, 2, 6, 3, 5, 7};
  std::size_t fp = 0, atoms = 0;
  for (auto &m : fp_corpus())
    for (auto &s : ss) {
      PropertyFlags f = check_properties(m, s);
      auto v = f.violations();
      t.check(v.empty(), [&] { return json{{"module", module_json(m)}, {"s", jint(s)}, {"violated", v}, {"flags", f.to_json()}}; });
      // The atom table must agree with the deciders on finitely generated modules.
      PropertyFlags g = atom_properties(fp_atoms(m), s);
      bool same = f.torsion_free.value == g.torsion_free.value && f.divisible.value == g.divisible.value &&
                  f.separated.value == g.separated.value && f.complete.value == g.complete.value &&
                  f.contraadjusted.value == g.contraadjusted.value && f.contramodule.value == g.contramodule.value;
      t.check(same, [&] {
        return json{{"module", module_json(m)}, {"s", jint(s)}, {"decided", f.to_json()}, {"atom_table", g.to_json()}};
      });
      ++fp;
    }
  for (auto &e : atom_corpus())
    for (auto &s : ss) {
      PropertyFlags f = atom_properties(e, s);
      auto v = f.violations();
      t.check(v.empty(), [&] { return json{{"atoms", e.to_string()}, {"s", jint(s)}, {"violated", v}}; });
      ++atoms;
    }
  std::size_t lab = 0;
  for (auto &[name, f] : lab_carrier_flags(c.seed, c.n(20, 5))) {
    auto v = f.violations();
    t.check(v.empty(), [&] { return json{{"carrier", name}, {"violated", v}, {"flags", f.to_json()}}; });
    ++lab;
  }
  return {5, "Implication diagram", t.pass, t.witness, {{"fp_cases", fp}, {"atom_cases", atoms}, {"lab_carriers", lab}}};
}

inline CriterionResult from_reports(int index, const std::string &name, const std::vector<Report> &rs) {
  CriterionResult r{index, name, true};
  json exps = json::array();
  for (auto &rep : rs) {
    exps.push_back({{"experiment", rep.experiment}, {"checks", rep.checks.size()}, {"pass", rep.all_pass()}});
    if (r.pass && !rep.all_pass()) {
      r.pass = false;
      for (auto &ch : rep.checks)
        if (!ch.pass) {
          r.witness = {{"experiment", rep.experiment}, {"check", ch.name}, {"witness", ch.witness}};
          break;
        }
    }
  }
  r.details = {{"reports", exps}};
  return r;
}

// 6
inline CriterionResult ce_quotient(const Ctx &) {
  return from_reports(6, "Counterexample C/E", {counterexample_CE(2, 16, 12), counterexample_CE(3, 16, 12)});
}

// 7
inline CriterionResult summation_axioms(const Ctx &c) {
  LabParams lp;
  lp.seed = c.seed;
  lp.trials = c.n(100, 10);
  lp.precision = 24;
  std::vector<Report> rs;
  for (Int p : {2, 3}) {
    lp.p = p;
    rs.push_back(lab_axioms(lp));
  }
  lp.p = 2;
  lp.K = c.n(24, 10);
  rs.push_back(lab_two_var(lp));
  return from_reports(7, "Summation axioms", rs);
}

// 8
inline CriterionResult telescope_solver(const Ctx &c) {
  LabParams lp;
  lp.seed = c.seed;
  lp.trials = c.n(100, 20);
  return from_reports(8, "Telescope solver", {lab_telescope(lp)});
}

// 9
inline CriterionResult nested(const Ctx &c) {
  LabParams lp;
  lp.seed = c.seed;
  lp.K = 12;
  lp.trials = c.n(20, 5);
  return from_reports(9, "Nested completion", {lab_nested(lp)});
}

// 10
inline CriterionResult matlis(const Ctx &c) {
  Tally t;
  const std::int64_t enum_cap = c.n(600000, 5000);
  std::size_t groups = 0, enumerated = 0;
  for (Int p : {2, 3}) {
    // Exponent vectors e1 <= e2 <= e3 with entries in 0..4.
    for (unsigned a = 0; a <= 4; ++a)
      for (unsigned b = a; b <= 4; ++b)
        for (unsigned d = b; d <= 4; ++d) {
          IntVec tors;
          for (unsigned e : {a, b, d})
            if (e) tors.push_back(pow(p, e));
          FPModule m = FPModule::from_invariants(0, tors);
          if (m.is_zero()) continue;
          ++groups;
          MatlisDual dl = matlis_dual_full(m);
          MatlisDual dd = matlis_dual_full(dl.module, p, dl.K);
          t.check(dl.module.torsion() == m.torsion() && dd.module.torsion() == m.torsion(), [&] {
            return json{{"group", m.to_string()}, {"dual", dl.module.to_string()}, {"double_dual", dd.module.to_string()}};
          });
          Morphism ev = evaluation_map(m, dl, dd);
          bool by_smith = is_injective(ev) && is_surjective(ev);
          bool by_enum = true;
          if (m.order() <= enum_cap) {
            ++enumerated;
            by_enum = bijective_by_enumeration(ev);
          }
          t.check(by_smith && by_enum, [&] {
            return json{{"group", m.to_string()}, {"injective_and_surjective", by_smith}, {"bijective_by_enumeration", by_enum}};
          });
        }
  }
  auto rng = c.rng(10);
  const int ses = c.n(50, 10);
  for (int it = 0; it < ses; ++it) {
    Int p = rng() % 2 ? 2 : 3;
    IntVec tors;
    for (std::size_t k = 0, n = 1 + rng() % 2; k < n; ++k) tors.push_back(pow(p, 1 + static_cast<unsigned>(rng() % 3)));
    std::sort(tors.begin(), tors.end());
    FPModule B = FPModule::from_invariants(0, tors);
    IntVec gen(B.gens());
    for (auto &x : gen) x = static_cast<int>(rng() % 5);
    IntMatrix G = IntMatrix::from_rows({gen}, B.gens());
    FPModule A = image(Morphism(FPModule(IntMatrix(0, 1)), B, G));
    Morphism f(A, B, G);
    Morphism g = cokernel(f).map;
    unsigned K = exponent_valuation(B, p);
    MatlisDual dA = matlis_dual_full(A, p, K), dB = matlis_dual_full(B, p, K), dC = matlis_dual_full(g.target(), p, K);
    Morphism dg = dual_morphism(g, dB, dC), df = dual_morphism(f, dA, dB);
    bool exact = is_short_exact(dg, df) && short_exact_by_enumeration(dg, df);
    t.check(exact, [&] {
      return json{{"B", B.to_string()}, {"generator", jvec(gen)}, {"dual_g", jmatrix(dg.matrix())}, {"dual_f", jmatrix(df.matrix())}};
    });
  }
  return {10, "Matlis duality", t.pass, t.witness,
          {{"groups", groups}, {"enumerated_evaluations", enumerated}, {"short_exact_sequences", ses}}};
}

// 11
inline CriterionResult corpus(const Ctx &c) {
  Tally t;
  json entries = json::array();
  std::vector<std::string> names{"cyclic(12)", "cyclic(30)", "cyclic(8)", "prufer(2)", "prufer(3)", "Q_mod_Z", "Z_envelope"};
  for (auto &n : names) {
    CorpusSequence s = flat_cover_corpus(n, c.n(12, 4));
    entries.push_back(n);
    t.check(s.verified(), [&] { return s.to_json(); });
  }
  Envelope e12 = cotorsion_envelope(FPModule::cyclic(12));
  t.check(e12.envelope.to_string() == "Z/4 + Z/3", [&] { return json{{"envelope_Z/12", e12.envelope.to_string()}}; });
  Envelope ez = cotorsion_envelope(FPModule::free(1));
  t.check(ez.cokernel == "Q-vector space" && ez.envelope.to_string() == "Prod{all}[Zp^1]",
          [&] { return json{{"envelope_Z", ez.envelope.to_string()}, {"cokernel", ez.cokernel}}; });
  auto rng = c.rng(11);
  const int trials = c.n(50, 10);
  for (int it = 0; it < trials; ++it) {
    FPModule m = random_fp_module(rng);
    Envelope e = cotorsion_envelope(m);
    bool flag_ok = e.cokernel == (m.free_rank() > 0 ? "Q-vector space" : "0");
    t.check(e.injective && flag_ok && flags_atoms(e.envelope).cotorsion, [&] {
      return json{{"module", module_json(m)}, {"envelope", e.envelope.to_string()}, {"injectivity", e.injectivity},
                  {"cokernel", e.cokernel}};
    });
  }
  return {11, "Flat cover and envelope corpus", t.pass, t.witness, {{"entries", entries}, {"random_envelopes", trials}}};
}

// 12
inline CriterionResult classification(const Ctx &c) {
  auto rng = c.rng(12);
  Tally t;
  const std::vector<Int> primes{2, 3, 5, 7};
  const int trials = c.n(100, 20);
  for (int it = 0; it < trials; ++it) {
    InjectiveForm inj;
    do {
      inj.rational = rng() % 3;
      inj.prufer.clear();
      for (auto &p : primes)
        if (rng() % 2) inj.prufer[p] = 1 + rng() % 3;
    } while (inj.rational == 0 && inj.prufer.empty());
    AtomExpr ei = build_injective(inj);
    auto ci = classify(ei);
    t.check(ci.injective && *ci.injective == inj, [&] { return json{{"form", "injective"}, {"built", ei.to_string()}, {"verdict", ci.verdict}}; });

    FlatCotorsionForm fc;
    fc.rational = rng() % 2;
    for (auto &p : primes)
      if (rng() % 2) fc.ranks[p] = 1 + rng() % 3;
    fc.all_rank = rng() % 2;
    if (fc.rational == 0 && fc.ranks.empty() && fc.all_rank == 0) fc.all_rank = 1;
    AtomExpr ef = build_flat_cotorsion(fc);
    auto cf = classify(ef);
    t.check(cf.flat_cotorsion && *cf.flat_cotorsion == fc,
            [&] { return json{{"form", "flat_cotorsion"}, {"built", ef.to_string()}, {"verdict", cf.verdict}}; });

    ReducedCotorsionForm rc;
    for (auto &p : primes)
      if (rng() % 2) {
        auto &loc = rc.factors[p];
        loc.zp_rank = rng() % 2;
        loc.cyclic[1 + static_cast<unsigned>(rng() % 3)] = 1 + rng() % 2;
      }
    rc.all_rank = rng() % 2;
    if (rc.factors.empty() && rc.all_rank == 0) rc.all_rank = 1;
    AtomExpr er = build_reduced_cotorsion(rc);
    auto cr = classify(er);
    t.check(cr.reduced_cotorsion && *cr.reduced_cotorsion == rc,
            [&] { return json{{"form", "reduced_cotorsion"}, {"built", er.to_string()}, {"verdict", cr.verdict}}; });
  }
  return {12, "Classification round trips", t.pass, t.witness, {{"vectors_per_form", trials}}};
}

using CriterionFn = std::function<CriterionResult(const Ctx &)>;

inline const std::vector<CriterionFn> &criteria() {
  static const std::vector<CriterionFn> fns{snf_oracle,       gamma_three_way, delta_decomposition, lim1_corpus,
                                            implication_diagram, ce_quotient, summation_axioms,  telescope_solver,
                                            nested,           matlis,          corpus,              classification};
  return fns;
}

inline CriterionResult run_guarded(int index, const Ctx &c) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = criteria()[static_cast<std::size_t>(index - 1)](c);
  } catch (const std::exception &e) {
    r = {index, "criterion " + std::to_string(index), false, {{"exception", e.what()}}};
  }
  r.index = index;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// 13
inline CriterionResult mutation_sensitivity(const Ctx &c) {
  Tally t;
  json caught = json::array();
  Ctx smoke{Scale::Smoke, c.seed};
  for (Mutation m : {Mutation::PsiDropLastTerm, Mutation::BinomialOffByOne, Mutation::EMembershipShift}) {
    ScopedMutation guard(m);
    json hit = nullptr;
    for (int i = 1; i <= 12 && hit.is_null(); ++i) {
      CriterionResult r = run_guarded(i, smoke);
      if (!r.pass && !r.witness.empty()) hit = {{"mutation", mutation_name(m)}, {"criterion", i}, {"witness", r.witness}};
    }
    t.check(!hit.is_null(), [&] { return json{{"mutation", mutation_name(m)}, {"reason", "no criterion failed"}}; });
    if (!hit.is_null()) caught.push_back(hit);
  }
  return {13, "Mutation sensitivity", t.pass, t.witness, {{"caught", caught}}};
}

} // namespace acc

inline const std::vector<std::string> &criterion_names() {
  static const std::vector<std::string> names{"SNF oracle equivalence",
                                              "Gamma_s three-way agreement",
                                              "Delta prime decomposition and radical invariance",
                                              "lim1 vanishes and Delta equals Lambda",
                                              "Implication diagram",
                                              "Counterexample C/E",
                                              "Summation axioms",
                                              "Telescope solver",
                                              "Nested completion",
                                              "Matlis duality",
                                              "Flat cover and envelope corpus",
                                              "Classification round trips",
                                              "Mutation sensitivity"};
  return names;
}

/// Runs the selected criteria (all when empty) in index order. Smoke scale
/// shrinks the trial counts and skips criterion 13, which reruns the others.
inline std::vector<CriterionResult> run_acceptance(Scale scale, std::uint64_t seed, std::vector<int> only = {},
                                                   const std::function<void(const CriterionResult &)> &on_result = nullptr) {
  acc::Ctx c{scale, seed};
  if (only.empty()) {
    for (int i = 1; i <= 13; ++i)
      if (scale == Scale::Desk || i != 13) only.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int i : only) {
    if (i < 1 || i > 13) throw Error("no criterion " + std::to_string(i));
    CriterionResult r;
    if (i == 13) {
      auto t0 = std::chrono::steady_clock::now();
      r = acc::mutation_sensitivity(c);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } else {
      r = acc::run_guarded(i, c);
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string criterion_line(const CriterionResult &r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
  std::string line = std::string(r.pass ? "PASS" : "FAIL") + "  " + std::to_string(r.index) + ". " + r.name + buf;
  if (!r.pass) line += "\n      witness: " + r.witness.dump();
  return line;
}

} // namespace contrakit
