#pragma once

#include "error.hpp"
#include "smith.hpp"

#include <memory>
#include <sstream>
#include <string>

namespace contrakit {

/// Finitely presented abelian group Z^gens / rowspace(presentation).
/// Rows are relations, columns are generators. Canonical data is computed
/// once at construction and never mutated.
class FPModule {
public:
  FPModule() : FPModule(IntMatrix(0, 0)) {}
  explicit FPModule(IntMatrix presentation)
      : pres_(std::move(presentation)), snf_(std::make_shared<SmithForm>(smith(pres_))) {
    for (std::size_t i = 0; i < snf_->rank; ++i)
      if (snf_->diag[i] != 1) {
        torsion_.push_back(snf_->diag[i]);
        coord_col_.push_back(i);
      }
    for (std::size_t j = snf_->rank; j < pres_.cols(); ++j) coord_col_.push_back(j);
    free_rank_ = pres_.cols() - snf_->rank;
  }

  /// Z^rank + sum Z/d_i with a diagonal presentation (entries d_i in the given order).
  static FPModule from_invariants(std::size_t rank, const IntVec &torsion) {
    IntMatrix p(torsion.size(), torsion.size() + rank);
    for (std::size_t i = 0; i < torsion.size(); ++i) p(i, i) = torsion[i];
    return FPModule(std::move(p));
  }
  static FPModule zero() { return FPModule(IntMatrix(0, 0)); }
  static FPModule free(std::size_t r) { return from_invariants(r, {}); }
  static FPModule cyclic(const Int &d) { return d == 0 ? free(1) : from_invariants(0, {abs(d)}); }

  const IntMatrix &presentation() const { return pres_; }
  const SmithForm &smith_form() const { return *snf_; }
  std::size_t gens() const { return pres_.cols(); }
  std::size_t free_rank() const { return free_rank_; }
  /// Invariant factors >= 2, ascending along the divisibility chain.
  const IntVec &torsion() const { return torsion_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }

  Int order() const {
    if (!is_finite()) throw InfiniteModule();
    Int o = 1;
    for (auto &d : torsion_) o *= d;
    return o;
  }
  /// Exponent of the torsion part.
  Int torsion_exponent() const { return torsion_.empty() ? Int(1) : torsion_.back(); }

  /// Canonical presentation: torsion coordinates first, then free ones.
  FPModule canonical() const { return from_invariants(free_rank_, torsion_); }
  std::size_t canonical_dim() const { return coord_col_.size(); }
  /// Modulus of canonical coordinate c (0 for a free coordinate).
  Int coord_modulus(std::size_t c) const { return c < torsion_.size() ? torsion_[c] : Int(0); }

  /// Generator coordinates -> canonical coordinates (torsion ones reduced).
  IntVec to_canonical(const IntVec &x) const {
    IntVec y = vec_mul(x, snf_->right);
    IntVec out(coord_col_.size());
    for (std::size_t c = 0; c < coord_col_.size(); ++c) {
      out[c] = y[coord_col_[c]];
      if (c < torsion_.size()) out[c] = mod(out[c], torsion_[c]);
    }
    return out;
  }
  /// Canonical coordinates -> a representative in generator coordinates.
  IntVec from_canonical(const IntVec &y) const {
    IntVec x(gens());
    for (std::size_t c = 0; c < coord_col_.size(); ++c) {
      if (y[c] == 0) continue;
      for (std::size_t j = 0; j < gens(); ++j) x[j] += y[c] * snf_->right_inv(coord_col_[c], j);
    }
    return x;
  }
  /// The canonical generator c in generator coordinates.
  IntVec canonical_generator(std::size_t c) const {
    IntVec y(canonical_dim());
    y[c] = 1;
    return from_canonical(y);
  }

  bool is_zero_element(const IntVec &x) const { return contrakit::is_zero(to_canonical(x)); }
  bool equal_elements(const IntVec &x, const IntVec &y) const {
    IntVec d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return is_zero_element(d);
  }

  bool isomorphic(const FPModule &o) const {
    return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_) {
      os << "Z";
      if (free_rank_ > 1) os << '^' << free_rank_;
      first = false;
    }
    for (auto &d : torsion_) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    return os.str();
  }

private:
  IntMatrix pres_;
  std::shared_ptr<const SmithForm> snf_;
  IntVec torsion_;
  std::vector<std::size_t> coord_col_;
  std::size_t free_rank_ = 0;
};

inline FPModule direct_sum(const FPModule &a, const FPModule &b) {
  return FPModule(IntMatrix::block_diag(a.presentation(), b.presentation()));
}

inline FPModule direct_power(const FPModule &a, std::size_t k) {
  IntMatrix p(0, 0);
  for (std::size_t i = 0; i < k; ++i) p = IntMatrix::block_diag(p, a.presentation());
  return FPModule(p);
}

/// Homomorphism given on generators: row i of matrix is the image of generator i.
class Morphism {
public:
  Morphism(FPModule source, FPModule target, IntMatrix matrix)
      : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
    if (mat_.rows() != src_.gens() || mat_.cols() != tgt_.gens())
      throw IllDefinedMorphism("matrix shape does not match generator counts");
    const IntMatrix &rel = src_.presentation();
    for (std::size_t i = 0; i < rel.rows(); ++i)
      if (!tgt_.is_zero_element(vec_mul(rel.row(i), mat_)))
        throw IllDefinedMorphism("relation " + std::to_string(i) + " does not map into target relations");
  }

  static Morphism identity(const FPModule &m) {
    return Morphism(m, m, IntMatrix::identity(m.gens()));
  }
  static Morphism scalar(const FPModule &m, const Int &k) {
    return Morphism(m, m, k * IntMatrix::identity(m.gens()));
  }
  static Morphism zero(const FPModule &a, const FPModule &b) {
    return Morphism(a, b, IntMatrix(a.gens(), b.gens()));
  }

  const FPModule &source() const { return src_; }
  const FPModule &target() const { return tgt_; }
  const IntMatrix &matrix() const { return mat_; }

  IntVec apply(const IntVec &x) const { return vec_mul(x, mat_); }

  bool is_zero() const {
    for (std::size_t i = 0; i < mat_.rows(); ++i)
      if (!tgt_.is_zero_element(mat_.row(i))) return false;
    return true;
  }

  bool equals(const Morphism &o) const {
    if (mat_.rows() != o.mat_.rows() || mat_.cols() != o.mat_.cols()) return false;
    for (std::size_t i = 0; i < mat_.rows(); ++i) {
      IntVec a = mat_.row(i), b = o.mat_.row(i);
      if (!tgt_.equal_elements(a, b)) return false;
    }
    return true;
  }

private:
  FPModule src_, tgt_;
  IntMatrix mat_;
};

/// g after f.
inline Morphism compose(const Morphism &g, const Morphism &f) {
  return Morphism(f.source(), g.target(), f.matrix() * g.matrix());
}

inline Morphism direct_sum(const Morphism &f, const Morphism &g) {
  return Morphism(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                  IntMatrix::block_diag(f.matrix(), g.matrix()));
}

namespace detail {

/// Basis of { x in Z^src : x M lies in the target relation lattice }.
inline IntMatrix preimage_basis(const Morphism &f) {
  const IntMatrix stacked = IntMatrix::vstack(f.matrix(), f.target().presentation());
  const std::size_t gs = f.source().gens();
  if (stacked.cols() == 0) return IntMatrix::identity(gs);
  IntMatrix K = left_kernel(smith(stacked));
  IntMatrix Y = K.submatrix(0, K.rows(), 0, gs);
  return row_lattice_basis(smith(Y));
}

} // namespace detail

struct SubmoduleResult {
  FPModule module;
  Morphism map;
};

/// Kernel with its inclusion into the source.
inline SubmoduleResult kernel(const Morphism &f) {
  IntMatrix P = detail::preimage_basis(f);
  SmithForm psf = smith(P);
  const IntMatrix &rel = f.source().presentation();
  IntMatrix kp(rel.rows(), P.rows());
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    auto c = solve_left(psf, rel.row(i));
    if (!c) throw Error("kernel: source relation outside preimage lattice");
    kp.set_row(i, *c);
  }
  FPModule k(kp);
  return {k, Morphism(k, f.source(), P)};
}

/// Cokernel with its projection from the target.
inline SubmoduleResult cokernel(const Morphism &f) {
  FPModule c(IntMatrix::vstack(f.target().presentation(), f.matrix()));
  if (f.target().gens() == 0) c = FPModule::zero();
  return {c, Morphism(f.target(), c, IntMatrix::identity(f.target().gens()))};
}

/// Image presented on the source generators.
inline FPModule image(const Morphism &f) {
  return FPModule(detail::preimage_basis(f));
}

inline bool is_injective(const Morphism &f) { return kernel(f).module.is_zero(); }
inline bool is_surjective(const Morphism &f) { return cokernel(f).module.is_zero(); }

/// ker g == im f, assuming both compose.
inline bool is_exact_at(const Morphism &f, const Morphism &g) {
  if (!compose(g, f).is_zero()) return false;
  auto k = kernel(g);
  SmithForm lat = smith(IntMatrix::vstack(f.matrix(), f.target().presentation()));
  const IntMatrix &inc = k.map.matrix();
  for (std::size_t i = 0; i < inc.rows(); ++i)
    if (!in_row_lattice(lat, inc.row(i))) return false;
  return true;
}

/// 0 -> A -f-> B -g-> C -> 0
inline bool is_short_exact(const Morphism &f, const Morphism &g) {
  return is_injective(f) && is_surjective(g) && is_exact_at(f, g);
}

// Hom, Ext, Tor and tensor by the pairwise rules on canonical summands.

inline FPModule hom(const FPModule &m, const FPModule &n) {
  IntVec t;
  std::size_t r = m.free_rank() * n.free_rank();
  for (std::size_t i = 0; i < m.free_rank(); ++i)
    for (auto &b : n.torsion()) t.push_back(b);
  for (auto &a : m.torsion())
    for (auto &b : n.torsion()) t.push_back(gcd(a, b));
  return FPModule::from_invariants(r, t).canonical();
}

inline FPModule tensor(const FPModule &m, const FPModule &n) {
  IntVec t;
  std::size_t r = m.free_rank() * n.free_rank();
  for (std::size_t i = 0; i < m.free_rank(); ++i)
    for (auto &b : n.torsion()) t.push_back(b);
  for (std::size_t i = 0; i < n.free_rank(); ++i)
    for (auto &a : m.torsion()) t.push_back(a);
  for (auto &a : m.torsion())
    for (auto &b : n.torsion()) t.push_back(gcd(a, b));
  return FPModule::from_invariants(r, t).canonical();
}

inline FPModule tor1(const FPModule &m, const FPModule &n) {
  IntVec t;
  for (auto &a : m.torsion())
    for (auto &b : n.torsion()) t.push_back(gcd(a, b));
  return FPModule::from_invariants(0, t).canonical();
}

inline FPModule ext1(const FPModule &m, const FPModule &n) {
  IntVec t;
  for (auto &a : m.torsion()) {
    for (std::size_t i = 0; i < n.free_rank(); ++i) t.push_back(a);
    for (auto &b : n.torsion()) t.push_back(gcd(a, b));
  }
  return FPModule::from_invariants(0, t).canonical();
}

// Second route: a length-one free resolution 0 -> Z^k -> Z^g -> m -> 0.

namespace detail {

/// The map N^g -> N^k induced by the resolution, i.e. Hom(F0,N) -> Hom(F1,N).
inline Morphism hom_resolution_map(const FPModule &m, const FPModule &n) {
  IntMatrix F1 = row_lattice_basis(m.smith_form());
  const std::size_t g = m.gens(), k = F1.rows(), gn = n.gens();
  IntMatrix M(g * gn, k * gn);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t l = 0; l < gn; ++l) M(j * gn + l, i * gn + l) = F1(i, j);
  return Morphism(direct_power(n, g), direct_power(n, k), M);
}

/// F1 (x) N -> F0 (x) N.
inline Morphism tensor_resolution_map(const FPModule &m, const FPModule &n) {
  IntMatrix F1 = row_lattice_basis(m.smith_form());
  const std::size_t g = m.gens(), k = F1.rows(), gn = n.gens();
  IntMatrix M(k * gn, g * gn);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t l = 0; l < gn; ++l) M(i * gn + l, j * gn + l) = F1(i, j);
  return Morphism(direct_power(n, k), direct_power(n, g), M);
}

} // namespace detail

inline FPModule hom_via_resolution(const FPModule &m, const FPModule &n) {
  return kernel(detail::hom_resolution_map(m, n)).module.canonical();
}
inline FPModule ext1_via_resolution(const FPModule &m, const FPModule &n) {
  return cokernel(detail::hom_resolution_map(m, n)).module.canonical();
}
inline FPModule tensor_via_resolution(const FPModule &m, const FPModule &n) {
  return cokernel(detail::tensor_resolution_map(m, n)).module.canonical();
}
inline FPModule tor1_via_resolution(const FPModule &m, const FPModule &n) {
  return kernel(detail::tensor_resolution_map(m, n)).module.canonical();
}

/// Free rank and torsion invariant factors.
struct Decomposition {
  std::size_t free_rank;
  IntVec torsion;
  bool operator==(const Decomposition &) const = default;
};

inline Decomposition decompose(const FPModule &m) { return {m.free_rank(), m.torsion()}; }

} // namespace contrakit
