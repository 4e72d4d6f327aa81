#pragma once

#include "padic.hpp"
#include "report.hpp"
#include "summation.hpp"
#include "tower.hpp"

#include <random>

namespace contrakit {

struct LabParams {
  Int p = 2;
  unsigned precision = 24;
  unsigned M = 12;
  unsigned K = 12;
  std::uint64_t seed = 0;
  int trials = 100;
};

inline Report lab_report(const std::string &name, const LabParams &lp) {
  Report r;
  r.experiment = name;
  r.params = {{"p", jint(lp.p)}, {"precision", lp.precision}, {"seed", lp.seed}};
  return r;
}

/// Exhaustive comparison of the membership closed forms with the
/// definition-level search, over every tail sequence with precision <= maxN.
inline Check membership_gate(const Int &p, unsigned maxN) {
  MembershipOracle oracle;
  std::size_t tested = 0;
  for (unsigned N = 1; N <= maxN; ++N) {
    const Int m = pow(p, N);
    for (unsigned L = 0; L <= std::min(N, 4u); ++L) {
      const Int wm = pow(p, N - L);
      std::vector<Int> pre(L, 0);
      for (;;) {
        for (Int w = 0; w < wm; ++w) {
          TailSeq u(p, N, pre, w);
          ++tested;
          std::vector<std::pair<SeqSpace, unsigned>> spaces{{SeqSpace::E, 0}, {SeqSpace::D, 0}};
          for (unsigned d = 0; d <= N; ++d) spaces.push_back({SeqSpace::EPlusPmC, d});
          for (auto [sp, d] : spaces)
            if (membership(u, sp, d).member != oracle(u, sp, d))
              return {"membership closed forms match definitions", false,
                      {{"sequence", u.to_json()},
                       {"space", sp == SeqSpace::E ? "E" : sp == SeqSpace::D ? "D" : "E+p^mC"},
                       {"m", d},
                       {"closed_form", membership(u, sp, d).member}}};
        }
        std::size_t i = 0;
        while (i < L && ++pre[i] == m) pre[i++] = 0;
        if (i == L) break;
      }
    }
  }
  return {"membership closed forms match definitions", true, {{"sequences", tested}, {"max_precision", maxN}}};
}

/// C/E is not p-separated: the class of sum p^n e_n is nonzero yet lies in
/// p^m(C/E) for every tested m, while each p^n e_n already lies in E.
inline Report counterexample_CE(const Int &p, unsigned N, unsigned M) {
  LabParams lp;
  lp.p = p;
  lp.precision = N;
  Report r = lab_report("ce-quotient", lp);
  r.params["M"] = M;
  if (N <= M) throw PrecisionTooLow("need N > M");
  Check gate = membership_gate(p, p == 2 ? 4 : 3);
  r.checks.push_back(gate);

  bool terms_ok = true;
  json tw = json::object();
  const unsigned top = std::min(M, N - 2);
  for (unsigned n = 0; n <= top; ++n) {
    TailSeq t = TailSeq::unit(p, N, n, pow(p, n));
    auto mem = membership(t, SeqSpace::E);
    if (!mem.member && terms_ok) {
      terms_ok = false;
      tw = {{"n", n}, {"witness", mem.witness}};
    }
  }
  r.add("p^n e_n lies in E for n <= " + std::to_string(top), terms_ok, tw);

  NullSeqCarrier C{"NullSeqC", p, N};
  TailSeq sum = sum_s_power<NullSeqCarrier>(C, [&](std::size_t n) { return TailSeq::unit(p, N, n); });
  TailSeq expect(p, N, {}, 1);
  r.add("sum p^n e_n has representative (p^n)_n", sum == expect, {{"sum", sum.to_json()}});

  auto inE = membership(sum, SeqSpace::E);
  r.add("class of the sum is nonzero in C/E", !inE.member, inE.witness);
  auto inD = membership(sum, SeqSpace::D);
  r.add("sum lies in D", inD.member, inD.witness);

  bool deep = true;
  json dw = json::object();
  for (unsigned m = 0; m <= M; ++m) {
    auto mm = membership(sum, SeqSpace::EPlusPmC, m);
    if (!mm.member && deep) {
      deep = false;
      dw = {{"m", m}, {"witness", mm.witness}};
    }
  }
  r.add("sum lies in E + p^m C for all m <= " + std::to_string(M), deep, dw);

  QuotientCECarrier Q(p, N);
  bool vanish = true;
  for (unsigned n = 0; n <= top; ++n)
    vanish = vanish && Q.equal(TailSeq::unit(p, N, n, pow(p, n)), Q.zero());
  r.add("p^n b_n = 0 in C/E", vanish);

  r.result = {{"sum", sum.to_json()},
              {"note", "nonzeroness is certified in the tail model (tail coefficient 1, so v_n = 1 does not tend to 0) "
                       "and membership in p^m(C/E) only for the finitely many tested m; no finite procedure decides "
                       "it in the full group C/E"}};
  return r;
}

inline Report lab_axioms(const LabParams &lp) {
  Report r = lab_report("axioms", lp);
  r.params["trials"] = lp.trials;
  std::mt19937_64 rng(lp.seed);
  const unsigned N = lp.precision;
  check_axioms(zp_scalar(lp.p, N), rng, lp.trials, r);
  check_axioms(zp_scalar(lp.p, N, 5), rng, lp.trials, r);
  check_axioms(zp_mod_pk(lp.p, std::max(1u, N / 3)), rng, lp.trials, r);
  check_axioms(FiniteProductCarrier({2, 3, 5}, N), rng, lp.trials, r);
  check_axioms(NullSeqCarrier{"NullSeqC", lp.p, N}, rng, lp.trials, r);
  check_axioms(QuotientCECarrier(lp.p, N), rng, lp.trials, r);
  check_axioms(PowerSeriesCarrier{"PowerSeries(Z/4,z)", 4, N}, rng, lp.trials, r);

  // Geometric series and precision monotonicity on Z_p.
  auto zp = zp_scalar(lp.p, N);
  Int g = sum_s_power<ResidueCarrier>(zp, [](std::size_t) { return Int(1); });
  r.add("sum p^n = 1/(1-p)", mod(g * (1 - lp.p), zp.modulus) == 1, {{"sum", jint(g)}});
  bool mono = true;
  json mw = json::object();
  for (int t = 0; t < 20 && mono; ++t) {
    std::vector<Int> a(8);
    for (auto &x : a) x = zp.random(rng);
    auto A = [&](std::size_t n) { return n < a.size() ? a[n] : Int(0); };
    for (unsigned n2 : {N / 2, N / 3 + 1}) {
      auto lo = zp_scalar(lp.p, n2);
      Int hi = sum_s_power<ResidueCarrier>(zp, A);
      Int low = sum_s_power<ResidueCarrier>(lo, [&](std::size_t n) { return mod(A(n), lo.modulus); });
      if (mod(hi - low, lo.modulus) != 0) {
        mono = false;
        mw = {{"precision", n2}, {"high", jint(hi)}, {"low", jint(low)}};
      }
    }
    // Longer horizons change nothing.
    if (sum_s_power<ResidueCarrier>(zp, A, 3 * N) != sum_s_power<ResidueCarrier>(zp, A)) mono = false;
  }
  r.add("precision monotonicity and horizon stability", mono, mw);
  return r;
}

inline Report lab_telescope(const LabParams &lp) {
  Report r = lab_report("telescope", lp);
  r.params["trials"] = lp.trials;
  std::mt19937_64 rng(lp.seed);
  auto zp = zp_scalar(lp.p, std::min(lp.precision, 8u));
  {
    auto sol = solve_telescope<ResidueCarrier>(zp, [](std::size_t n) { return Int(n == 0 ? 1 : 0); }, 6);
    bool ok = sol.residual_zero && sol.b[0] == 1;
    for (std::size_t n = 1; n < sol.b.size(); ++n) ok = ok && sol.b[n] == 0;
    r.add("a = (1, 0, 0, ...) gives b = a", ok);
    auto ones = solve_telescope<ResidueCarrier>(zp, [](std::size_t) { return Int(1); }, 6);
    bool all = ones.residual_zero;
    for (auto &b : ones.b) all = all && mod(b * (1 - lp.p), zp.modulus) == 1;
    r.add("a = (1, 1, ...) gives b_n = 1/(1-p)", all, {{"b0", jint(ones.b[0])}});
  }
  int residual_fail = 0, unique_fail = 0;
  json w = json::object();
  auto run = [&](const auto &c) {
    using C = std::decay_t<decltype(c)>;
    for (int t = 0; t < lp.trials; ++t) {
      std::vector<typename C::Elem> a(1 + rng() % 12);
      for (auto &x : a) x = c.random(rng);
      std::vector<typename C::Elem> probes{c.random(rng), c.random(rng)};
      auto sol = solve_telescope<C>(c, [&](std::size_t n) { return n < a.size() ? a[n] : c.zero(); }, 16, probes);
      if (!sol.residual_zero && residual_fail++ == 0) w = {{"carrier", c.name}, {"witness", sol.witness}};
      if (!sol.homogeneous_zero && unique_fail++ == 0) w = {{"carrier", c.name}, {"witness", sol.witness}};
    }
  };
  run(zp_mod_pk(5, 6));
  run(zp_scalar(lp.p, lp.precision));
  run(PowerSeriesCarrier{"PowerSeries(Z/4,z)", 4, 10});
  r.add("residuals vanish on random instances", residual_fail == 0, residual_fail ? w : json::object());
  r.add("homogeneous solutions vanish", unique_fail == 0, unique_fail ? w : json::object());
  return r;
}

inline Report lab_two_var(const LabParams &lp) {
  Report r = lab_report("two-var", lp);
  r.params["K"] = lp.K;
  r.params["trials"] = lp.trials;
  std::mt19937_64 rng(lp.seed);
  TowerCarrier tower{"Tower", lp.p, lp.K};
  check_two_var(tower, rng, lp.trials, r);
  check_two_var(ScalarPairCarrier(lp.p, lp.precision, 3), rng, lp.trials, r);
  {
    auto [a, b] = sum_s_plus_t<TowerCarrier>(tower, [&](std::size_t n) {
      return n == 0 ? TowerElement(lp.p, lp.K, {1}) : tower.zero();
    });
    r.add("(s+t)-sum of (1, 0, ...) is 1", a == TowerElement(lp.p, lp.K, {1}) && b == a);
  }
  MatrixPairCarrier bad{"MatrixPair", 8, {2, 2, 0, 0}, {0, 0, 2, 0}, 3};
  bool thrown = false;
  try {
    two_var_sum<MatrixPairCarrier>(bad, [&](std::size_t, std::size_t) { return bad.zero(); }, {{1, 0}, {0, 1}});
  } catch (const NonCommuting &) {
    thrown = true;
  }
  r.add("non-commuting pair is rejected", thrown);
  return r;
}

/// A random element of I^n in the tower ring.
template <class Rng> TowerElement random_in_ideal_power(const Int &p, unsigned K, unsigned n, Rng &rng) {
  std::vector<Int> c(K, 0);
  for (unsigned b = 0; b < K; ++b) c[b] = Int(static_cast<unsigned long long>(rng() % 1000)) * pow(p, n > b ? n - b : 0);
  return TowerElement(p, K, c);
}

inline Report lab_nakayama(const LabParams &lp) {
  Report r = lab_report("nakayama", lp);
  r.params["K"] = lp.K;
  std::mt19937_64 rng(lp.seed);
  const unsigned K = lp.K, cutoff = 2 * lp.K;
  auto run = [&](const std::string &name, const TowerElement &d0, unsigned depth) {
    try {
      NakayamaTrace t = nakayama_trace(d0, depth);
      r.add(name, t.telescoping && t.a0_in_IK,
            {{"d0", d0.to_string()}, {"depth", depth}, {"final_level_sum", t.level_sums.back().to_string()}});
    } catch (const SplittingFailed &e) {
      r.add(name, false, {{"d0", d0.to_string()}, {"error", e.what()}});
    }
  };
  run("d0 in I^K replays to depth K", random_in_ideal_power(lp.p, cutoff, K, rng), K);
  run("d0 = 0", TowerElement(lp.p, cutoff), K);
  run("d0 = p x at depth 2", TowerElement::monomial(lp.p, cutoff, lp.p, 1), 2);
  // An element of I \ I^2 cannot be split twice inside I: the construction
  // needs sD + tD = D, which fails for D = I.
  bool failed = false;
  std::string msg;
  try {
    nakayama_trace(TowerElement::monomial(lp.p, cutoff, lp.p, 0) + TowerElement::monomial(lp.p, cutoff, 1, 1), K);
  } catch (const SplittingFailed &e) {
    failed = true;
    msg = e.what();
  }
  r.add("p + x cannot be traced to depth K", failed, {{"error", msg}});
  return r;
}

inline Report lab_nested(const LabParams &lp) {
  Report r = lab_report("nested-completion", lp);
  r.params["K"] = lp.K;
  r.params["trials"] = lp.trials;
  std::mt19937_64 rng(lp.seed);
  const Int p = lp.p;
  const unsigned K = lp.K;
  {
    TowerElement c = random_in_ideal_power(p, K, 0, rng);
    auto nc = nested_completion(std::vector<TowerElement>(K, c));
    r.add("constant sequence", nc.b == c && nc.limit_holds);
  }
  {
    std::vector<TowerElement> cs;
    TowerElement px = TowerElement::monomial(p, K, p, 1), acc(p, K), full(p, K), pw(p, K, {1});
    for (unsigned n = 1; n <= K; ++n) {
      TowerElement cn(p, K), q(p, K, {1});
      for (unsigned k = 0; 2 * k < n; ++k, q = q * px) cn = cn + q;
      cs.push_back(cn);
    }
    for (unsigned k = 0; 2 * k < 2 * K; ++k, pw = pw * px) full = full + pw;
    auto nc = nested_completion(cs);
    r.add("partial sums of (p x)^k", nc.b == full && nc.limit_holds, {{"b", nc.b.to_string()}});
  }
  int fails = 0, dep = 0;
  json w = json::object();
  for (int t = 0; t < lp.trials; ++t) {
    std::vector<TowerElement> cs{random_in_ideal_power(p, K, 0, rng)};
    for (unsigned n = 1; n < K; ++n) cs.push_back(cs.back() + random_in_ideal_power(p, K, n, rng));
    auto nc = nested_completion(cs);
    if ((!nc.limit_holds || !nc.staged_systems_hold) && fails++ == 0)
      w = {{"trial", t}, {"witness", nc.witness}};
    // Other admissible decompositions of the differences.
    for (int k = 0; k < 3; ++k) {
      std::mt19937_64 pr(lp.seed + 1000 * t + k);
      auto alt = nested_completion(cs, [&](unsigned lo, unsigned hi) { return lo + static_cast<unsigned>(pr() % (hi - lo + 1)); });
      if (!(alt.b == nc.b)) ++dep;
    }
  }
  r.add("b = c_n mod I^n for every n on random Cauchy data", fails == 0, w);
  r.add("limit independent of the decomposition", dep == 0, {{"disagreements", dep}});
  bool caught = false;
  try {
    nested_completion({TowerElement(p, K, {0}), TowerElement(p, K, {1})});
  } catch (const NotCauchy &) {
    caught = true;
  }
  r.add("non-Cauchy input is rejected", caught);
  return r;
}

inline std::vector<std::string> lab_scenarios() {
  return {"axioms", "telescope", "two-var", "nakayama", "ce-quotient", "nested-completion"};
}

inline Report run_lab(const std::string &name, const LabParams &lp) {
  if (name == "axioms") return lab_axioms(lp);
  if (name == "telescope") return lab_telescope(lp);
  if (name == "two-var") return lab_two_var(lp);
  if (name == "nakayama") return lab_nakayama(lp);
  if (name == "ce-quotient") return counterexample_CE(lp.p, lp.precision, lp.M);
  if (name == "nested-completion") return lab_nested(lp);
  throw Error("unknown lab scenario: " + name);
}

} // namespace contrakit
