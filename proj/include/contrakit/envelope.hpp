#pragma once

#include "atoms.hpp"
#include "duality.hpp"
#include "fpmod.hpp"
#include "report.hpp"

#include <regex>

namespace contrakit {

struct Envelope {
  AtomExpr envelope;
  json map = json::array();  // per canonical generator of m
  std::string cokernel;       // "0" or "Q-vector space"
  json injectivity;           // finite-level certificate
  bool injective = true;
};

/// Cotorsion envelope of a finitely generated group: the adele block of rank
/// r plus the primary parts of the torsion.
inline Envelope cotorsion_envelope(const FPModule &m, std::size_t level = 6) {
  Envelope e;
  e.envelope = AtomExpr::adele(m.free_rank());
  for (auto &d : m.torsion()) e.envelope.add(Atom::cyclic(d));
  e.cokernel = m.free_rank() > 0 ? "Q-vector space" : "0";

  for (std::size_t c = 0; c < m.canonical_dim(); ++c) {
    if (c < m.torsion().size()) {
      json parts = json::array();
      for (auto &[p, k] : factorize(m.torsion()[c]))
        parts.push_back({{"block", p.str()}, {"summand", Atom::cyclic(pow(p, k)).to_string()}});
      e.map.push_back({{"generator", c}, {"order", jint(m.torsion()[c])}, {"lands_in", parts}});
    } else {
      e.map.push_back({{"generator", c}, {"order", 0}, {"lands_in", "diagonal of Prod{all}[Zp]"}});
    }
  }

  // The kernel of m -> prod_{p in S} m / p^N m has no torsion and lies in 2^N m,
  // so the intersection over N is zero.
  std::vector<Int> S{2};
  if (!m.torsion().empty())
    for (auto &p : prime_divisors(m.torsion().back()))
      if (p != 2) S.push_back(p);
  json levels = json::array();
  for (std::size_t N : {level, level + 1}) {
    IntMatrix big(m.gens(), 0);
    std::vector<FPModule> targets;
    FPModule tgt = FPModule::zero();
    for (auto &p : S) {
      auto q = cokernel(Morphism::scalar(m, pow(p, static_cast<unsigned>(N))));
      tgt = direct_sum(tgt, q.module);
      big = IntMatrix::hstack(big, q.map.matrix());
    }
    auto k = kernel(Morphism(m, tgt, big));
    bool torsion_free = k.module.torsion().empty();
    bool deep = true;
    IntMatrix lat = IntMatrix::vstack(pow(Int(2), static_cast<unsigned>(N)) * IntMatrix::identity(m.gens()),
                                      m.presentation());
    for (std::size_t i = 0; i < k.map.matrix().rows(); ++i)
      if (!solve_left(lat, k.map.matrix().row(i))) deep = false;
    e.injective = e.injective && torsion_free && deep;
    levels.push_back({{"N", N}, {"kernel", k.module.canonical().to_string()},
                      {"kernel_torsion_free", torsion_free}, {"kernel_in_2^N_m", deep}});
  }
  e.injectivity = {{"primes", jvec(S)}, {"levels", levels}};
  return e;
}

// Flat cover and envelope corpus.

struct LevelCheck {
  Int p;
  std::size_t N;
  bool exact_fpmod = false;
  std::optional<bool> exact_enumeration;
};

struct CorpusSequence {
  std::string name;
  std::vector<std::string> terms; // 0 -> terms[0] -> terms[1] -> terms[2] -> 0
  std::string first_map;
  std::vector<LevelCheck> levels;
  std::string quotient_flag;
  json minimality;

  bool verified() const {
    for (auto &l : levels)
      if (!l.exact_fpmod || (l.exact_enumeration && !*l.exact_enumeration)) return false;
    return !levels.empty();
  }

  json to_json() const {
    json lv = json::array();
    for (auto &l : levels) {
      json x = {{"p", jint(l.p)}, {"N", l.N}, {"exact", l.exact_fpmod}};
      if (l.exact_enumeration) x["exact_by_enumeration"] = *l.exact_enumeration;
      lv.push_back(x);
    }
    json j = {{"name", name}, {"sequence", terms}, {"first_map", first_map}, {"levels", lv},
              {"verified", verified()}, {"minimality", minimality}};
    if (!quotient_flag.empty()) j["quotient"] = quotient_flag;
    return j;
  }
};

namespace detail {

inline void check_level(CorpusSequence &seq, const Int &p, std::size_t N, const Morphism &f, const Morphism &g,
                        std::int64_t enum_limit) {
  LevelCheck l{p, N, is_short_exact(f, g), std::nullopt};
  if (f.target().is_finite() && f.target().order() <= enum_limit)
    l.exact_enumeration = short_exact_by_enumeration(f, g);
  seq.levels.push_back(l);
}

/// 0 -> Z/p^(N-v) --m--> Z/p^N -> Z/p^v -> 0: the cover of Z/m truncated mod p^N.
inline void cyclic_level(CorpusSequence &seq, const Int &m, const Int &p, std::size_t N, std::int64_t lim) {
  unsigned v = valuation(m, p);
  FPModule A = FPModule::cyclic(pow(p, static_cast<unsigned>(N) - v));
  FPModule B = FPModule::cyclic(pow(p, static_cast<unsigned>(N)));
  FPModule C = FPModule::cyclic(pow(p, v));
  check_level(seq, p, N, Morphism(A, B, IntMatrix::from_rows({{m}}, 1)), Morphism(B, C, IntMatrix{{1}}), lim);
}

/// 0 -> Z/p^N --p^N--> Z/p^2N -> Z/p^N -> 0: p^-N Zp / p^N Zp inside the Qp term.
inline void prufer_level(CorpusSequence &seq, const Int &p, std::size_t N, std::int64_t lim) {
  Int pn = pow(p, static_cast<unsigned>(N));
  FPModule A = FPModule::cyclic(pn), B = FPModule::cyclic(pn * pn), C = FPModule::cyclic(pn);
  check_level(seq, p, N, Morphism(A, B, IntMatrix::from_rows({{pn}}, 1)), Morphism(B, C, IntMatrix{{1}}), lim);
}

} // namespace detail

inline std::vector<std::string> corpus_names() {
  return {"cyclic(m)", "prufer(p)", "Q_mod_Z", "Z_envelope"};
}

/// Builds and verifies a corpus entry at levels 1..max_level.
inline CorpusSequence flat_cover_corpus(const std::string &name, std::size_t max_level = 12,
                                        std::int64_t enum_limit = 20000) {
  static const std::regex cyc(R"(cyclic\((-?\d+)\))"), pru(R"(prufer\((\d+)\))");
  std::smatch mt;
  CorpusSequence seq;
  seq.name = name;
  const json rigidity = {{"kind", "cited"},
                         {"fact", "Hom(Zp, Zq) = 0 for p != q and Hom(Zp, Zp) = Zp; endomorphisms of the cover "
                                  "restricting to the identity on the kernel side are automorphisms"}};
  if (std::regex_match(name, mt, cyc)) {
    Int m(mt[1].str());
    m = abs(m);
    if (m < 2) throw UnknownCorpusEntry("cyclic cover needs |m| >= 2: " + name);
    AtomExpr flat;
    for (auto &p : prime_divisors(m)) flat.add(Atom::zp(p));
    seq.terms = {flat.to_string(), flat.to_string(), Atom::cyclic(m).to_string()};
    seq.first_map = "multiplication by " + m.str();
    for (auto &p : prime_divisors(m))
      for (std::size_t N = valuation(m, p); N <= max_level; ++N)
        if (N > 0) detail::cyclic_level(seq, m, p, N, enum_limit);
    seq.minimality = rigidity;
  } else if (std::regex_match(name, mt, pru)) {
    Int p(mt[1].str());
    if (!is_prime(p)) throw UnknownCorpusEntry("prufer cover needs a prime: " + name);
    seq.terms = {Atom::zp(p).to_string(), Atom::qp(p).to_string(), Atom::prufer(p).to_string()};
    seq.first_map = "inclusion";
    for (std::size_t N = 1; N <= max_level; ++N) detail::prufer_level(seq, p, N, enum_limit);
    seq.minimality = rigidity;
  } else if (name == "Q_mod_Z") {
    seq.terms = {"Prod{all}[Zp^1]", "restricted product of Qp over Zp", "Q/Z"};
    seq.first_map = "inclusion, one prime at a time";
    for (Int p : {2, 3, 5, 7})
      for (std::size_t N = 1; N <= max_level; ++N) detail::prufer_level(seq, p, N, enum_limit);
    seq.minimality = rigidity;
  } else if (name == "Z_envelope") {
    seq.terms = {"Z", "Prod{all}[Zp^1]", "(Prod{all}[Zp^1])/Z"};
    seq.first_map = "diagonal";
    seq.quotient_flag = "Q-vector space";
    // Z/M -> sum_p Z/p^N is the Chinese remainder isomorphism, M = prod_p p^N.
    const std::vector<Int> S{2, 3, 5, 7};
    for (std::size_t N = 1; N <= max_level; ++N) {
      Int M = 1;
      FPModule B = FPModule::zero();
      IntMatrix row(1, 0);
      for (auto &p : S) {
        M *= pow(p, static_cast<unsigned>(N));
        B = direct_sum(B, FPModule::cyclic(pow(p, static_cast<unsigned>(N))));
        row = IntMatrix::hstack(row, IntMatrix{{1}});
      }
      Morphism f(FPModule::cyclic(M), B, row);
      detail::check_level(seq, M, N, f, cokernel(f).map, enum_limit);
    }
    seq.minimality = {{"kind", "cited"},
                      {"fact", "the quotient is torsion-free and divisible, and Ext(Q-vector space, cotorsion) = 0"}};
  } else {
    throw UnknownCorpusEntry("unknown corpus entry: " + name);
  }
  return seq;
}

} // namespace contrakit
