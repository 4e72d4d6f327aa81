#pragma once

#include "error.hpp"
#include "integer.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace contrakit {

enum class AtomKind { Free, Cyclic, Rat, PadicInt, PadicRat, Prufer, Localized };

/// Z, Z/d, Q, Z_p, Q_p, Q_p/Z_p or Z[1/s]. In normal form Cyclic carries a
/// prime power and Localized carries a squarefree s >= 2.
struct Atom {
  AtomKind kind = AtomKind::Free;
  Int param = 0;

  static Atom free() { return {AtomKind::Free, 0}; }
  static Atom rat() { return {AtomKind::Rat, 0}; }
  static Atom cyclic(const Int &d) { return {AtomKind::Cyclic, d}; }
  static Atom zp(const Int &p) { return {AtomKind::PadicInt, p}; }
  static Atom qp(const Int &p) { return {AtomKind::PadicRat, p}; }
  static Atom prufer(const Int &p) { return {AtomKind::Prufer, p}; }
  static Atom zinv(const Int &s) { return {AtomKind::Localized, s}; }

  /// Prime the atom lives at, or 0.
  Int prime() const {
    switch (kind) {
    case AtomKind::Cyclic: return factorize(param).begin()->first;
    case AtomKind::PadicInt:
    case AtomKind::PadicRat:
    case AtomKind::Prufer: return param;
    default: return 0;
    }
  }

  /// Z, Q, then per prime [Z/p^k by k, Zp, Qp, Prufer], then Zinv(s).
  auto sort_key() const {
    int cls = 0, sub = 0;
    Int p = 0, par = param;
    switch (kind) {
    case AtomKind::Free: cls = 0; break;
    case AtomKind::Rat: cls = 1; break;
    case AtomKind::Cyclic: cls = 2; p = prime(); sub = 0; break;
    case AtomKind::PadicInt: cls = 2; p = param; sub = 1; break;
    case AtomKind::PadicRat: cls = 2; p = param; sub = 2; break;
    case AtomKind::Prufer: cls = 2; p = param; sub = 3; break;
    case AtomKind::Localized: cls = 3; break;
    }
    return std::make_tuple(cls, p, sub, par);
  }
  friend bool operator<(const Atom &a, const Atom &b) { return a.sort_key() < b.sort_key(); }
  friend bool operator==(const Atom &a, const Atom &b) { return a.kind == b.kind && a.param == b.param; }

  std::string to_string() const {
    switch (kind) {
    case AtomKind::Free: return "Z";
    case AtomKind::Rat: return "Q";
    case AtomKind::Cyclic: return "Z/" + param.str();
    case AtomKind::PadicInt: return "Zp(" + param.str() + ")";
    case AtomKind::PadicRat: return "Qp(" + param.str() + ")";
    case AtomKind::Prufer: return "Prufer(" + param.str() + ")";
    case AtomKind::Localized: return "Zinv(" + param.str() + ")";
    }
    return "?";
  }
};

/// Per-prime content of a product block.
enum class BlockKind { Zp, Qp, Prufer };

inline const char *block_kind_name(BlockKind k) {
  switch (k) {
  case BlockKind::Zp: return "Zp";
  case BlockKind::Qp: return "Qp";
  case BlockKind::Prufer: return "Prufer";
  }
  return "?";
}

inline Atom block_atom(BlockKind k, const Int &p) {
  switch (k) {
  case BlockKind::Zp: return Atom::zp(p);
  case BlockKind::Qp: return Atom::qp(p);
  case BlockKind::Prufer: return Atom::prufer(p);
  }
  return Atom::free();
}

/// prod over p in primes (or over all primes) of the per-prime content.
struct ProductBlock {
  bool all = false;
  std::vector<Int> primes;
  std::map<BlockKind, Int> content;

  friend bool operator==(const ProductBlock &, const ProductBlock &) = default;
};

inline Int radical(const Int &s) {
  Int r = 1;
  for (auto &[p, e] : factorize(s)) r *= p;
  return r;
}

/// Finite direct sum of atoms with multiplicities, plus product blocks.
/// Always held in normal form, so == is structural equality of normal forms.
class AtomExpr {
public:
  AtomExpr() = default;
  explicit AtomExpr(const Atom &a, const Int &mult = 1) { add(a, mult); }

  static AtomExpr zero() { return {}; }
  static AtomExpr adele(const Int &rank) {
    AtomExpr e;
    e.add_block(ProductBlock{true, {}, {{BlockKind::Zp, rank}}});
    return e;
  }

  void add(const Atom &a, const Int &mult = 1) {
    if (mult == 0) return;
    if (mult < 0) throw Error("negative multiplicity");
    switch (a.kind) {
    case AtomKind::Cyclic: {
      if (a.param < 2) throw Error("cyclic modulus must be >= 2");
      for (auto &[p, e] : factorize(a.param)) terms_[Atom::cyclic(pow(p, e))] += mult;
      return;
    }
    case AtomKind::Localized: {
      Int s = abs(a.param);
      if (s < 2) throw Error("Zinv(s) needs s not in {0, 1, -1}");
      terms_[Atom::zinv(radical(s))] += mult;
      return;
    }
    case AtomKind::PadicInt:
    case AtomKind::PadicRat:
    case AtomKind::Prufer:
      if (!is_prime(a.param)) throw Error(a.param.str() + " is not prime");
      [[fallthrough]];
    default: terms_[a] += mult;
    }
  }

  void add_block(ProductBlock b) {
    std::set<Int> ps(b.primes.begin(), b.primes.end());
    for (auto &p : ps)
      if (!is_prime(p)) throw Error(p.str() + " is not prime");
    b.primes.assign(ps.begin(), ps.end());
    for (auto it = b.content.begin(); it != b.content.end();)
      it = it->second == 0 ? b.content.erase(it) : std::next(it);
    if (b.content.empty() || (!b.all && b.primes.empty())) return;
    if (b.all) b.primes.clear();
    for (auto &x : blocks_)
      if (x.all == b.all && x.primes == b.primes) {
        for (auto &[k, m] : b.content) x.content[k] += m;
        return;
      }
    blocks_.push_back(std::move(b));
    std::sort(blocks_.begin(), blocks_.end(), [](const ProductBlock &x, const ProductBlock &y) {
      return std::make_tuple(x.all, x.primes) < std::make_tuple(y.all, y.primes);
    });
  }

  AtomExpr &operator+=(const AtomExpr &o) {
    for (auto &[a, m] : o.terms_) terms_[a] += m;
    for (auto &b : o.blocks_) add_block(b);
    return *this;
  }
  friend AtomExpr operator+(AtomExpr a, const AtomExpr &b) { return a += b; }
  AtomExpr times(const Int &k) const {
    AtomExpr out;
    if (k == 0) return out;
    for (auto &[a, m] : terms_) out.terms_[a] = m * k;
    for (auto b : blocks_) {
      for (auto &[kind, m] : b.content) m *= k;
      out.add_block(b);
    }
    return out;
  }

  const std::map<Atom, Int> &terms() const { return terms_; }
  const std::vector<ProductBlock> &blocks() const { return blocks_; }
  bool is_zero() const { return terms_.empty() && blocks_.empty(); }

  /// Finite product blocks expanded into sum terms; only all-prime blocks remain.
  AtomExpr expanded() const {
    AtomExpr out;
    out.terms_ = terms_;
    for (auto &b : blocks_) {
      if (b.all) {
        out.add_block(b);
        continue;
      }
      for (auto &p : b.primes)
        for (auto &[k, m] : b.content) out.add(block_atom(k, p), m);
    }
    return out;
  }
  bool isomorphic(const AtomExpr &o) const { return expanded() == o.expanded(); }

  friend bool operator==(const AtomExpr &, const AtomExpr &) = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto &[a, m] : terms_) {
      os << (first ? "" : " + ") << a.to_string();
      if (m != 1) os << '^' << m;
      first = false;
    }
    for (auto &b : blocks_) {
      os << (first ? "" : " + ") << "Prod{";
      if (b.all) os << "all";
      for (std::size_t i = 0; i < b.primes.size(); ++i) os << (i ? "," : "") << b.primes[i];
      os << "}[";
      bool f2 = true;
      for (auto &[k, m] : b.content) {
        os << (f2 ? "" : " + ") << block_kind_name(k) << '^' << m;
        f2 = false;
      }
      os << ']';
      first = false;
    }
    return os.str();
  }

private:
  std::map<Atom, Int> terms_;
  std::vector<ProductBlock> blocks_;
};

// Grammar: Z, Z/8, Q, Zp(2), Qp(3), Prufer(5), Zinv(6), Adele(r), terms joined
// by '+', '^n' multiplicities, Prod{2,3}[Zp^1 + Qp^2], Prod{all}[...], and 0.

namespace detail {

class AtomParser {
public:
  explicit AtomParser(const std::string &s) : s_(s) {}

  AtomExpr parse() {
    AtomExpr e;
    skip();
    if (peek() == '0' && rest_is_blank(pos_ + 1)) return e;
    for (;;) {
      item(e);
      skip();
      if (pos_ == s_.size()) break;
      expect('+');
    }
    return e;
  }

private:
  const std::string &s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, pos_); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool rest_is_blank(std::size_t i) const {
    for (; i < s_.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(s_[i]))) return false;
    return true;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool eat(const std::string &tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  Int integer(bool allow_sign = false) {
    skip();
    std::size_t start = pos_;
    if (allow_sign && (peek() == '-' || peek() == '+')) ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start || (allow_sign && pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      fail("expected integer");
    return Int(s_.substr(start, pos_ - start));
  }
  Int prime_arg() {
    expect('(');
    std::size_t at = pos_;
    Int p = integer();
    if (!is_prime(p)) throw ParseError(p.str() + " is not prime", at);
    expect(')');
    return p;
  }
  Int multiplicity() {
    skip();
    if (peek() != '^') return 1;
    ++pos_;
    return integer();
  }

  void item(AtomExpr &e) {
    skip();
    std::size_t at = pos_;
    try {
      if (eat("Prod{")) return block(e);
      if (eat("Adele(")) {
        Int r = integer();
        expect(')');
        e += AtomExpr::adele(r);
        return;
      }
      Atom a;
      if (eat("Zinv(")) {
        Int s = integer(true);
        expect(')');
        if (abs(s) < 2) throw ParseError("Zinv needs |s| >= 2", at);
        a = Atom::zinv(s);
      } else if (eat("Zp")) {
        a = Atom::zp(prime_arg());
      } else if (eat("Z/")) {
        Int d = integer();
        if (d < 2) throw ParseError("cyclic modulus must be >= 2", at);
        a = Atom::cyclic(d);
      } else if (eat("Z")) {
        a = Atom::free();
      } else if (eat("Qp")) {
        a = Atom::qp(prime_arg());
      } else if (eat("Q")) {
        a = Atom::rat();
      } else if (eat("Prufer")) {
        a = Atom::prufer(prime_arg());
      } else {
        fail("unknown atom");
      }
      if (std::isalnum(static_cast<unsigned char>(peek()))) throw ParseError("unknown atom", at);
      e.add(a, multiplicity());
    } catch (const ParseError &) {
      throw;
    } catch (const Error &err) {
      throw ParseError(err.what(), at);
    }
  }

  void block(AtomExpr &e) {
    ProductBlock b;
    if (eat("all")) {
      b.all = true;
    } else {
      for (;;) {
        std::size_t at = pos_;
        Int p = integer();
        if (!is_prime(p)) throw ParseError(p.str() + " is not prime", at);
        b.primes.push_back(p);
        if (!eat(",")) break;
      }
    }
    expect('}');
    expect('[');
    for (;;) {
      BlockKind k;
      if (eat("Zp")) k = BlockKind::Zp;
      else if (eat("Qp")) k = BlockKind::Qp;
      else if (eat("Prufer")) k = BlockKind::Prufer;
      else fail("expected Zp, Qp or Prufer inside product block");
      b.content[k] += multiplicity();
      if (!eat("+")) break;
    }
    expect(']');
    e.add_block(std::move(b));
  }
};

} // namespace detail

inline std::ostream &operator<<(std::ostream &os, const AtomExpr &e) { return os << e.to_string(); }

inline AtomExpr parse_atoms(const std::string &s) { return detail::AtomParser(s).parse(); }

// Flags.

struct AtomFlags {
  bool flat = true, reduced = true, cotorsion = true, divisible = true;
};

inline AtomFlags atom_flags(const Atom &a) {
  switch (a.kind) {
  case AtomKind::Free: return {true, true, false, false};
  case AtomKind::Cyclic: return {false, true, true, false};
  case AtomKind::Rat: return {true, false, true, true};
  case AtomKind::PadicInt: return {true, true, true, false};
  case AtomKind::PadicRat: return {true, false, true, true};
  case AtomKind::Prufer: return {false, false, true, true};
  case AtomKind::Localized: return {true, true, false, false};
  }
  return {};
}

inline AtomFlags block_flags(BlockKind k) {
  switch (k) {
  case BlockKind::Zp: return {true, true, true, false};
  case BlockKind::Qp: return {true, false, true, true};
  case BlockKind::Prufer: return {false, false, true, true};
  }
  return {};
}

/// Flags of a finite sum or product: each flag holds iff it holds for every piece.
inline AtomFlags flags_atoms(const AtomExpr &e) {
  AtomFlags f;
  auto meet = [&](const AtomFlags &g) {
    f.flat = f.flat && g.flat;
    f.reduced = f.reduced && g.reduced;
    f.cotorsion = f.cotorsion && g.cotorsion;
    f.divisible = f.divisible && g.divisible;
  };
  for (auto &[a, m] : e.terms()) meet(atom_flags(a));
  for (auto &b : e.blocks())
    for (auto &[k, m] : b.content) meet(block_flags(k));
  return f;
}

// Rule tables. An empty optional is the explicit Unknown value.

using RuleValue = std::optional<AtomExpr>;

/// One summand of an expanded expression: an atom, or an all-prime block kind.
struct Piece {
  bool all = false;
  BlockKind block = BlockKind::Zp;
  Atom atom;
};

namespace detail {

inline bool piece_reduced(const Piece &y) {
  return y.all ? block_flags(y.block).reduced : atom_flags(y.atom).reduced;
}

inline AtomExpr all_block(BlockKind k) {
  AtomExpr e;
  e.add_block(ProductBlock{true, {}, {{k, 1}}});
  return e;
}

inline RuleValue hom_piece(const Piece &x, const Piece &y) {
  const AtomExpr zero;
  const Atom &a = x.atom, &b = y.atom;
  auto Y = [&]() -> AtomExpr { return y.all ? all_block(y.block) : AtomExpr(b); };

  if (x.all) {
    // Sources prod_p Z_p, prod_p Q_p, prod_p Q_p/Z_p.
    if (x.block != BlockKind::Zp) {
      if (piece_reduced(y)) return zero; // divisible into reduced
      return std::nullopt;
    }
    if (y.all) return y.block == BlockKind::Zp ? RuleValue(all_block(BlockKind::Zp)) : std::nullopt;
    if (b.kind == AtomKind::Cyclic) return AtomExpr(b); // only the p-adic factor survives
    if (b.kind == AtomKind::PadicInt) return AtomExpr(b);
    return std::nullopt; // e.g. into Z: no rule
  }

  switch (a.kind) {
  case AtomKind::Free: return Y();

  case AtomKind::Cyclic: {
    const Int p = a.prime();
    if (y.all) return y.block == BlockKind::Prufer ? RuleValue(AtomExpr(a)) : RuleValue(zero);
    switch (b.kind) {
    case AtomKind::Cyclic: return b.prime() == p ? AtomExpr(Atom::cyclic(gcd(a.param, b.param))) : zero;
    case AtomKind::Prufer: return b.param == p ? AtomExpr(a) : zero;
    default: return zero; // torsion into torsion-free
    }
  }

  case AtomKind::Rat:
    if (y.all) {
      if (y.block == BlockKind::Zp) return zero;
      return all_block(BlockKind::Qp);
    }
    switch (b.kind) {
    case AtomKind::Rat: return AtomExpr(b);
    case AtomKind::PadicRat: return AtomExpr(b);
    case AtomKind::Prufer: return AtomExpr(Atom::qp(b.param));
    default: return zero; // divisible into reduced
    }

  case AtomKind::PadicInt: {
    const Int p = a.param;
    if (y.all) return y.block == BlockKind::Zp ? RuleValue(AtomExpr(a)) : std::nullopt;
    switch (b.kind) {
    case AtomKind::Free: return zero;
    case AtomKind::Cyclic: return b.prime() == p ? AtomExpr(b) : zero;
    case AtomKind::PadicInt: return b.param == p ? AtomExpr(a) : zero;
    case AtomKind::Localized: return zero;
    default: return std::nullopt;
    }
  }

  case AtomKind::PadicRat:
    if (piece_reduced(y)) return zero;
    return std::nullopt;

  case AtomKind::Prufer: {
    const Int p = a.param;
    if (y.all) return y.block == BlockKind::Prufer ? AtomExpr(Atom::zp(p)) : zero;
    if (b.kind == AtomKind::Prufer) return b.param == p ? AtomExpr(Atom::zp(p)) : zero;
    return zero; // divisible into reduced, or torsion into torsion-free
  }

  case AtomKind::Localized: {
    const Int s = a.param;
    auto divides_s = [&](const Int &q) { return s % q == 0; };
    if (y.all) return y.block == BlockKind::Qp ? RuleValue(all_block(BlockKind::Qp)) : std::nullopt;
    switch (b.kind) {
    case AtomKind::Free: return zero;
    case AtomKind::Cyclic: return divides_s(b.prime()) ? zero : AtomExpr(b);
    case AtomKind::Rat: return AtomExpr(b);
    case AtomKind::PadicInt: return divides_s(b.param) ? zero : AtomExpr(b);
    case AtomKind::PadicRat: return AtomExpr(b);
    case AtomKind::Prufer: return divides_s(b.param) ? std::nullopt : RuleValue(AtomExpr(b));
    case AtomKind::Localized: return b.param % s == 0 ? AtomExpr(b) : zero;
    }
  }
  }
  return std::nullopt;
}

inline std::vector<std::pair<Piece, Int>> pieces(const AtomExpr &e) {
  std::vector<std::pair<Piece, Int>> out;
  AtomExpr x = e.expanded();
  for (auto &[a, m] : x.terms()) out.push_back({Piece{false, BlockKind::Zp, a}, m});
  for (auto &b : x.blocks())
    for (auto &[k, m] : b.content) out.push_back({Piece{true, k, Atom::free()}, m});
  return out;
}

} // namespace detail

/// Hom between atom expressions, expanded bilinearly. Unknown propagates.
inline RuleValue hom_atoms(const AtomExpr &a, const AtomExpr &b) {
  AtomExpr out;
  for (auto &[x, m] : detail::pieces(a))
    for (auto &[y, n] : detail::pieces(b)) {
      auto v = detail::hom_piece(x, y);
      if (!v) return std::nullopt;
      out += v->times(m * n);
    }
  return out;
}

/// Delta_p of one piece; the empty optional marks a missing table entry.
inline RuleValue delta_p_piece(const Piece &x, const Int &p) {
  if (x.all) return x.block == BlockKind::Zp ? AtomExpr(Atom::zp(p)) : AtomExpr();
  const Atom &a = x.atom;
  switch (a.kind) {
  case AtomKind::Free: return AtomExpr(Atom::zp(p));
  case AtomKind::Cyclic: return a.prime() == p ? AtomExpr(a) : AtomExpr();
  case AtomKind::Rat:
  case AtomKind::PadicRat:
  case AtomKind::Prufer: return AtomExpr(); // divisible
  case AtomKind::PadicInt: return a.param == p ? AtomExpr(a) : AtomExpr();
  case AtomKind::Localized: return a.param % p == 0 ? AtomExpr() : AtomExpr(Atom::zp(p));
  }
  return std::nullopt;
}

/// Delta_s on atom expressions: sum of Delta_p over primes p | s, identity
/// for s = 0 and zero for s = +-1.
inline AtomExpr delta_atoms(const AtomExpr &e, const Int &s) {
  if (s == 0) return e;
  if (abs(s) == 1) return {};
  AtomExpr out;
  for (auto &p : prime_divisors(s))
    for (auto &[x, m] : detail::pieces(e)) {
      auto v = delta_p_piece(x, p);
      if (!v) throw AtomRuleMissing("no Delta_" + p.str() + " rule");
      out += v->times(m);
    }
  return out;
}

// Classification normal forms (finite multiplicities).

struct InjectiveForm {
  Int rational = 0;          // multiplicity X of Q
  std::map<Int, Int> prufer; // X_p
  friend bool operator==(const InjectiveForm &, const InjectiveForm &) = default;
};

struct FlatCotorsionForm {
  Int rational = 0;         // multiplicity of Q
  std::map<Int, Int> ranks; // rank of the Z_p block at p
  Int all_rank = 0;         // rank of the prod over all primes
  friend bool operator==(const FlatCotorsionForm &, const FlatCotorsionForm &) = default;
};

struct ReducedCotorsionForm {
  struct Local {
    std::map<unsigned, Int> cyclic; // k -> multiplicity of Z/p^k
    Int zp_rank = 0;
    friend bool operator==(const Local &, const Local &) = default;
  };
  std::map<Int, Local> factors; // per prime p-contramodule factor
  Int all_rank = 0;
  friend bool operator==(const ReducedCotorsionForm &, const ReducedCotorsionForm &) = default;
};

struct Classification {
  std::string verdict; // injective | flat_cotorsion | reduced_cotorsion | NotInClass
  std::string failing_flag;
  AtomFlags flags;
  std::optional<InjectiveForm> injective;
  std::optional<FlatCotorsionForm> flat_cotorsion;
  std::optional<ReducedCotorsionForm> reduced_cotorsion;
};

inline AtomExpr build_injective(const InjectiveForm &f) {
  AtomExpr e(Atom::rat(), f.rational);
  for (auto &[p, m] : f.prufer) e.add(Atom::prufer(p), m);
  return e;
}

inline AtomExpr build_flat_cotorsion(const FlatCotorsionForm &f) {
  AtomExpr e(Atom::rat(), f.rational);
  for (auto &[p, r] : f.ranks) e.add(Atom::zp(p), r);
  if (f.all_rank > 0) e += AtomExpr::adele(f.all_rank);
  return e;
}

inline AtomExpr build_reduced_cotorsion(const ReducedCotorsionForm &f) {
  AtomExpr e;
  for (auto &[p, loc] : f.factors) {
    for (auto &[k, m] : loc.cyclic) e.add(Atom::cyclic(pow(p, k)), m);
    e.add(Atom::zp(p), loc.zp_rank);
  }
  if (f.all_rank > 0) e += AtomExpr::adele(f.all_rank);
  return e;
}

/// Reads off each normal form the expression belongs to; the verdict names
/// the first of divisible, flat cotorsion, reduced cotorsion that applies.
inline Classification classify(const AtomExpr &expr) {
  Classification c;
  AtomExpr e = expr.expanded();
  c.flags = flags_atoms(e);
  bool has_qp = false;
  for (auto &[a, m] : e.terms())
    if (a.kind == AtomKind::PadicRat) has_qp = true;
  for (auto &b : e.blocks())
    if (b.content.count(BlockKind::Qp) || b.content.count(BlockKind::Prufer)) has_qp = true;

  if (c.flags.divisible && !has_qp) {
    InjectiveForm f;
    for (auto &[a, m] : e.terms()) {
      if (a.kind == AtomKind::Rat) f.rational += m;
      else f.prufer[a.param] += m;
    }
    c.injective = f;
  }
  if (c.flags.flat && c.flags.cotorsion && !has_qp) {
    FlatCotorsionForm f;
    for (auto &[a, m] : e.terms()) {
      if (a.kind == AtomKind::Rat) f.rational += m;
      else f.ranks[a.param] += m;
    }
    for (auto &b : e.blocks()) f.all_rank += b.content.at(BlockKind::Zp);
    c.flat_cotorsion = f;
  }
  if (c.flags.reduced && c.flags.cotorsion) {
    ReducedCotorsionForm f;
    for (auto &[a, m] : e.terms()) {
      auto &loc = f.factors[a.prime()];
      if (a.kind == AtomKind::Cyclic) loc.cyclic[valuation(a.param, a.prime())] += m;
      else loc.zp_rank += m;
    }
    for (auto &b : e.blocks()) f.all_rank += b.content.at(BlockKind::Zp);
    c.reduced_cotorsion = f;
  }
  if (c.injective) c.verdict = "injective";
  else if (c.flat_cotorsion) c.verdict = "flat_cotorsion";
  else if (c.reduced_cotorsion) c.verdict = "reduced_cotorsion";
  else {
    c.verdict = "NotInClass";
    if (has_qp) c.failing_flag = "finite multiplicity (Qp is a Q-vector space of infinite dimension)";
    else if (!c.flags.cotorsion) c.failing_flag = "cotorsion";
    else c.failing_flag = "reduced";
  }
  return c;
}

} // namespace contrakit
