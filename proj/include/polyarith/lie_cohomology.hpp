#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "polyarith/jordan.hpp"
#include "polyarith/linear_algebra.hpp"

namespace polyarith {

/// Largest Lie algebra dimension accepted; POLYARITH_MAX_DIM overrides 14.
inline std::size_t max_lie_dimension() {
  if (const char* env = std::getenv("POLYARITH_MAX_DIM")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 14;
}

/// [e_i, e_j] = sum_k c(i, j, k) e_k.
struct StructureConstant {
  std::size_t i, j, k;  // 0-based, i < j
  Rational c;
};

class LieAlgebraQ {
public:
  LieAlgebraQ(std::size_t dim, const std::vector<StructureConstant>& entries)
      : n_(dim), c_(dim * dim * dim, Rational(0)) {
    for (const auto& e : entries) {
      if (e.i >= n_ || e.j >= n_ || e.k >= n_)
        throw PreconditionError("structure constant index out of range");
      if (e.i >= e.j) throw PreconditionError("structure constants must be given with i < j");
      if (at(e.i, e.j, e.k) != 0)
        throw PreconditionError("structure constant (" + std::to_string(e.i + 1) + "," +
                                std::to_string(e.j + 1) + "," + std::to_string(e.k + 1) +
                                ") given twice");
      at(e.i, e.j, e.k) = e.c;
      at(e.j, e.i, e.k) = -e.c;
    }
    check_jacobi();
  }

  std::size_t dim() const { return n_; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }

  /// Nonzero constants with i < j, ordered by (i, j, k).
  std::vector<StructureConstant> entries() const {
    std::vector<StructureConstant> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (c(i, j, k) != 0) out.push_back({i, j, k, c(i, j, k)});
    return out;
  }

  RatVector bracket(const RatVector& x, const RatVector& y) const {
    RatVector out(n_, Rational(0));
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (y[j] == 0 || i == j) continue;
        Rational xy = x[i] * y[j];
        for (std::size_t k = 0; k < n_; ++k)
          if (c(i, j, k) != 0) out[k] += xy * c(i, j, k);
      }
    }
    return out;
  }

  RatVector basis_vector(std::size_t i) const {
    RatVector e(n_, Rational(0));
    e[i] = 1;
    return e;
  }

  /// ad(x) with columns as images: column j = [x, e_j].
  RationalMatrix ad(const RatVector& x) const {
    RationalMatrix m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      RatVector col = bracket(x, basis_vector(j));
      for (std::size_t k = 0; k < n_; ++k) m(k, j) = col[k];
    }
    return m;
  }

  friend bool operator==(const LieAlgebraQ& a, const LieAlgebraQ& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

private:
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }

  void check_jacobi() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k) {
          RatVector ei = basis_vector(i), ej = basis_vector(j), ek = basis_vector(k);
          RatVector s = bracket(ei, bracket(ej, ek));
          RatVector t = bracket(ej, bracket(ek, ei));
          RatVector u = bracket(ek, bracket(ei, ej));
          for (std::size_t m = 0; m < n_; ++m)
            if (s[m] + t[m] + u[m] != 0)
              throw PreconditionError("Jacobi identity fails for (e" + std::to_string(i + 1) + ", e" +
                                      std::to_string(j + 1) + ", e" + std::to_string(k + 1) + ")");
        }
  }

  std::size_t n_;
  std::vector<Rational> c_;
};

// ---------------------------------------------------------------------------
// Koszul complex

using WedgeIndex = std::vector<std::size_t>;  // increasing

/// Exterior algebra of the dual with d dual to the bracket:
/// (d xi^k)(e_i ^ e_j) = -c_ij^k, extended as an antiderivation.
struct KoszulComplex {
  std::size_t dim = 0;
  std::vector<std::vector<WedgeIndex>> basis;  // basis[p], lexicographic
  std::vector<RationalMatrix> d;               // d[p]: Lambda^p -> Lambda^{p+1}, columns are images

  std::size_t degree_dim(std::size_t p) const { return basis[p].size(); }
};

namespace detail {

inline std::uint64_t mask_of(const WedgeIndex& w) {
  std::uint64_t m = 0;
  for (auto i : w) m |= std::uint64_t{1} << i;
  return m;
}

inline std::vector<WedgeIndex> wedge_basis(std::size_t n, std::size_t p) {
  std::vector<WedgeIndex> out;
  WedgeIndex idx(p);
  for (std::size_t i = 0; i < p; ++i) idx[i] = i;
  if (p > n) return out;
  for (;;) {
    out.push_back(idx);
    std::size_t i = p;
    while (i > 0 && idx[i - 1] == n - p + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Sign of the permutation sorting seq, or 0 with a repeated index.
inline int sort_sign(WedgeIndex& seq) {
  int sign = 1;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b) {
      if (seq[a] == seq[b]) return 0;
      if (seq[a] > seq[b]) sign = -sign;
    }
  std::sort(seq.begin(), seq.end());
  return sign;
}

struct WedgeLookup {
  std::unordered_map<std::uint64_t, std::size_t> index;
  explicit WedgeLookup(const std::vector<WedgeIndex>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(mask_of(basis[i]), i);
  }
  std::size_t operator()(const WedgeIndex& w) const { return index.at(mask_of(w)); }
};

}  // namespace detail

inline KoszulComplex build_koszul(const LieAlgebraQ& lie) {
  const std::size_t n = lie.dim();
  if (n > max_lie_dimension())
    throw PreconditionError("Lie algebra dimension " + std::to_string(n) + " exceeds the cap " +
                            std::to_string(max_lie_dimension()) + " (set POLYARITH_MAX_DIM)");
  if (n > 62) throw PreconditionError("Lie algebra dimension above 62 is not supported");
  KoszulComplex k;
  k.dim = n;
  for (std::size_t p = 0; p <= n + 1; ++p) k.basis.push_back(detail::wedge_basis(n, p));

  // d xi^m = sum_{i<j} (-c_ij^m) xi^i ^ xi^j
  std::vector<std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>>> d1(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (lie.c(i, j, m) != 0) d1[m].push_back({{i, j}, -lie.c(i, j, m)});

  for (std::size_t p = 0; p <= n; ++p) {
    const auto& src = k.basis[p];
    const auto& dst = k.basis[p + 1];
    RationalMatrix dp(dst.size(), src.size());
    if (p + 1 <= n) {
      detail::WedgeLookup lookup(dst);
      for (std::size_t col = 0; col < src.size(); ++col) {
        const WedgeIndex& w = src[col];
        for (std::size_t r = 0; r < w.size(); ++r) {
          const int outer = r % 2 ? -1 : 1;
          for (const auto& [pair, coeff] : d1[w[r]]) {
            WedgeIndex seq;
            seq.reserve(p + 1);
            seq.insert(seq.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
            seq.push_back(pair.first);
            seq.push_back(pair.second);
            seq.insert(seq.end(), w.begin() + static_cast<std::ptrdiff_t>(r + 1), w.end());
            int s = detail::sort_sign(seq);
            if (s == 0) continue;
            dp(lookup(seq), col) += coeff * (outer * s);
          }
        }
      }
    }
    k.d.push_back(std::move(dp));
  }
  for (std::size_t p = 0; p + 1 <= n; ++p)
    if (!(k.d[p + 1] * k.d[p]).is_zero())
      throw ConsistencyError("Koszul differential does not square to zero in degree " + std::to_string(p));
  return k;
}

/// Betti numbers and, per degree, cocycles completing a basis of the
/// coboundaries to one of the cocycles (in Lambda^p coordinates).
struct GradedCohomology {
  std::vector<std::size_t> betti;
  std::vector<std::vector<RatVector>> representatives;
};

namespace detail {
inline RationalMatrix columns(const std::vector<RatVector>& vs, std::size_t height) {
  RationalMatrix m(height, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < height; ++i) m(i, j) = vs[j][i];
  return m;
}

inline std::vector<RatVector> coboundary_basis(const KoszulComplex& k, std::size_t p) {
  if (p == 0) return {};
  return column_space_basis(k.d[p - 1]);
}
}  // namespace detail

inline GradedCohomology cohomology(const KoszulComplex& k) {
  GradedCohomology out;
  for (std::size_t p = 0; p <= k.dim; ++p) {
    const std::size_t height = k.degree_dim(p);
    std::vector<RatVector> span = detail::coboundary_basis(k, p);
    std::vector<RatVector> reps;
    for (const auto& z : nullspace(k.d[p])) {
      span.push_back(z);
      if (rank(detail::columns(span, height)) == span.size())
        reps.push_back(z);
      else
        span.pop_back();
    }
    out.betti.push_back(reps.size());
    out.representatives.push_back(std::move(reps));
  }
  return out;
}

inline std::vector<std::size_t> betti(const LieAlgebraQ& lie) {
  KoszulComplex k = build_koszul(lie);
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p <= k.dim; ++p) {
    std::size_t kernel = k.degree_dim(p) - rank(k.d[p]);
    std::size_t image = p == 0 ? 0 : rank(k.d[p - 1]);
    out.push_back(kernel - image);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Central series

namespace detail {
inline std::vector<RatVector> span_basis(const std::vector<RatVector>& vs, std::size_t n) {
  if (vs.empty()) return {};
  // rref rows give a canonical basis
  RationalMatrix m = columns(vs, n).transpose();
  RowEchelon e = rref(m);
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.reduced.row_vector(i));
  return out;
}
}  // namespace detail

struct LowerCentralSeries {
  std::vector<std::vector<RatVector>> terms;  // g^0 = g, g^{i+1} = [g, g^i]; ends at 0 or where it stalls
  std::optional<std::size_t> nilpotency_class;
};

inline LowerCentralSeries lower_central_series(const LieAlgebraQ& lie) {
  const std::size_t n = lie.dim();
  LowerCentralSeries out;
  std::vector<RatVector> current;
  for (std::size_t i = 0; i < n; ++i) current.push_back(lie.basis_vector(i));
  out.terms.push_back(current);
  if (n == 0) {
    out.nilpotency_class = 0;
    return out;
  }
  for (std::size_t step = 1;; ++step) {
    std::vector<RatVector> brackets;
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& v : current) brackets.push_back(lie.bracket(lie.basis_vector(a), v));
    std::vector<RatVector> next = detail::span_basis(brackets, n);
    if (next.size() == current.size()) return out;  // stalls at a nonzero ideal
    out.terms.push_back(next);
    if (next.empty()) {
      out.nilpotency_class = step;
      return out;
    }
    current = std::move(next);
  }
}

struct H1Check {
  bool ok = false;
  std::size_t h1_dim = 0;
  std::size_t derived_dim = 0;
};

/// H^1 = Z^1 = [g, g]^perp: dimensions agree and every 1-cocycle kills [g, g].
inline H1Check h1_annihilator_check(const LieAlgebraQ& lie) {
  KoszulComplex k = build_koszul(lie);
  LowerCentralSeries lcs = lower_central_series(lie);
  std::vector<RatVector> derived = lcs.terms.size() > 1 ? lcs.terms[1] : lcs.terms[0];
  std::vector<RatVector> cocycles = k.dim == 0 ? std::vector<RatVector>{} : nullspace(k.d[1]);
  H1Check out;
  out.h1_dim = cocycles.size();
  out.derived_dim = derived.size();
  out.ok = out.h1_dim + out.derived_dim == lie.dim();
  for (const auto& xi : cocycles)
    for (const auto& v : derived) {
      Rational s = 0;
      for (std::size_t i = 0; i < v.size(); ++i) s += xi[i] * v[i];
      if (s != 0) out.ok = false;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms

/// A linear automorphism of L preserving the bracket; columns are images.
class LieAutomorphism {
public:
  LieAutomorphism(const LieAlgebraQ& lie, RationalMatrix m) : m_(std::move(m)) {
    const std::size_t n = lie.dim();
    if (m_.rows() != n || m_.cols() != n) throw PreconditionError("automorphism matrix has wrong shape");
    if (determinant(m_) == 0) throw PreconditionError("automorphism matrix is singular");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        RatVector lhs = m_ * lie.bracket(lie.basis_vector(i), lie.basis_vector(j));
        RatVector rhs = lie.bracket(m_.column(i), m_.column(j));
        if (lhs != rhs)
          throw PreconditionError("matrix does not preserve the bracket [e" + std::to_string(i + 1) + ", e" +
                                  std::to_string(j + 1) + "]");
      }
  }
  const RationalMatrix& matrix() const { return m_; }

private:
  RationalMatrix m_;
};

/// exp(ad x); requires ad x nilpotent.
inline LieAutomorphism inner_automorphism(const LieAlgebraQ& lie, const RatVector& x) {
  return LieAutomorphism(lie, nilpotent_exp(lie.ad(x)));
}

/// p-th exterior power of m on the lexicographic wedge basis (entries are p x p minors).
inline RationalMatrix exterior_power(const RationalMatrix& m, const std::vector<WedgeIndex>& basis) {
  const std::size_t b = basis.size();
  RationalMatrix out(b, b);
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t c = 0; c < b; ++c) {
      const std::size_t p = basis[r].size();
      RationalMatrix sub(p, p);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) sub(i, j) = m(basis[r][i], basis[c][j]);
      out(r, c) = p == 0 ? Rational(1) : determinant(sub);
    }
  return out;
}

/// Action of phi on Lambda^p of the dual: wedge power of phi^{-T}.
inline RationalMatrix cochain_action(const KoszulComplex& k, const LieAutomorphism& phi, std::size_t p) {
  return exterior_power(inverse(phi.matrix()).transpose(), k.basis[p]);
}

namespace detail {
// Coordinates of a cocycle on the representatives, modulo coboundaries.
inline RatVector project_to_representatives(const KoszulComplex& k, const GradedCohomology& h, std::size_t p,
                                            const RatVector& z) {
  std::vector<RatVector> cols = h.representatives[p];
  const std::size_t r = cols.size();
  for (auto& b : coboundary_basis(k, p)) cols.push_back(std::move(b));
  auto sol = solve(columns(cols, k.degree_dim(p)), z);
  if (!sol) throw ConsistencyError("image of a cocycle is not a cocycle");
  return RatVector(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(r));
}
}  // namespace detail

/// Induced map on H^p in the representative basis; columns are images, so
/// matrix(phi psi) = matrix(phi) matrix(psi).
inline RationalMatrix action_on_cohomology(const KoszulComplex& k, const GradedCohomology& h,
                                           const LieAutomorphism& phi, std::size_t p) {
  RationalMatrix a = cochain_action(k, phi, p);
  RationalMatrix a_next = cochain_action(k, phi, p + 1);
  if (k.d[p] * a != a_next * k.d[p])
    throw ConsistencyError("induced cochain map does not commute with d in degree " + std::to_string(p));
  const auto& reps = h.representatives[p];
  RationalMatrix out(reps.size(), reps.size());
  for (std::size_t j = 0; j < reps.size(); ++j) {
    RatVector c = detail::project_to_representatives(k, h, p, a * reps[j]);
    for (std::size_t i = 0; i < reps.size(); ++i) out(i, j) = c[i];
  }
  return out;
}

inline RationalMatrix action_on_cohomology(const LieAlgebraQ& lie, const LieAutomorphism& phi, std::size_t p) {
  KoszulComplex k = build_koszul(lie);
  if (p > k.dim) throw PreconditionError("cohomological degree exceeds the dimension");
  return action_on_cohomology(k, cohomology(k), phi, p);
}

struct RigidityResult {
  bool hypothesis_holds = false;  // phi acts trivially on H^1
  bool ok = true;                 // false only for a counterexample phi != id
};

/// For nilpotent L and semisimple phi: trivial on H^1 forces phi = id.
inline RigidityResult semisimple_rigidity_check(const LieAlgebraQ& lie, const LieAutomorphism& phi) {
  if (!lower_central_series(lie).nilpotency_class)
    throw PreconditionError("semisimple rigidity: the Lie algebra is not nilpotent");
  if (!is_semisimple(phi.matrix())) throw PreconditionError("semisimple rigidity: automorphism is not semisimple");
  RationalMatrix on_h1 = action_on_cohomology(lie, phi, 1);
  RigidityResult out;
  out.hypothesis_holds = on_h1.is_identity();
  out.ok = !out.hypothesis_holds || phi.matrix().is_identity();
  return out;
}

/// Cochains fixed by every generator of S, and the cohomology they carry.
struct InvariantCohomology {
  std::vector<std::vector<RatVector>> cochains;  // basis of (Lambda^p)^S per degree
  std::vector<std::size_t> betti;                 // dim H^p(K^S)
  std::vector<std::size_t> cohomology_invariants; // dim H^p(K)^S
};

namespace detail {
inline std::vector<RatVector> common_fixed_space(const std::vector<RationalMatrix>& actions, std::size_t dim) {
  if (actions.empty()) {
    std::vector<RatVector> all;
    for (std::size_t i = 0; i < dim; ++i) {
      RatVector e(dim, Rational(0));
      e[i] = 1;
      all.push_back(std::move(e));
    }
    return all;
  }
  RationalMatrix stacked(actions.size() * dim, dim);
  for (std::size_t a = 0; a < actions.size(); ++a)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        stacked(a * dim + i, j) = actions[a](i, j) - (i == j ? Rational(1) : Rational(0));
  return nullspace(stacked);
}
}  // namespace detail

inline InvariantCohomology invariant_subcomplex(const LieAlgebraQ& lie, const std::vector<LieAutomorphism>& gens) {
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (!is_semisimple(gens[a].matrix()))
      throw PreconditionError("invariant subcomplex: generator " + std::to_string(a) + " is not semisimple");
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (!commutes(gens[a].matrix(), gens[b].matrix()))
        throw PreconditionError("invariant subcomplex: generators " + std::to_string(a) + " and " +
                                std::to_string(b) + " do not commute");
  }
  KoszulComplex k = build_koszul(lie);
  GradedCohomology h = cohomology(k);
  InvariantCohomology out;
  std::vector<RationalMatrix> restricted;  // d^p on the invariant cochains, columns are images
  for (std::size_t p = 0; p <= k.dim; ++p) {
    std::vector<RationalMatrix> acts;
    for (const auto& g : gens) acts.push_back(cochain_action(k, g, p));
    out.cochains.push_back(detail::common_fixed_space(acts, k.degree_dim(p)));
    restricted.push_back(k.d[p] * detail::columns(out.cochains[p], k.degree_dim(p)));
  }
  for (std::size_t p = 0; p < k.dim; ++p)
    for (std::size_t j = 0; j < out.cochains[p].size(); ++j) {
      RatVector img = restricted[p].column(j);
      std::vector<RatVector> span = out.cochains[p + 1];
      std::size_t before = rank(detail::columns(span, k.degree_dim(p + 1)));
      span.push_back(img);
      if (rank(detail::columns(span, k.degree_dim(p + 1))) != before)
        throw ConsistencyError("d does not preserve the invariant cochains in degree " + std::to_string(p));
    }
  for (std::size_t p = 0; p <= k.dim; ++p) {
    std::size_t kernel = out.cochains[p].size() - rank(restricted[p]);
    std::size_t image = p == 0 ? 0 : rank(restricted[p - 1]);
    out.betti.push_back(kernel - image);

    std::vector<RationalMatrix> on_h;
    for (const auto& g : gens) on_h.push_back(action_on_cohomology(k, h, g, p));
    out.cohomology_invariants.push_back(detail::common_fixed_space(on_h, h.betti[p]).size());
    if (out.betti[p] != out.cohomology_invariants[p])
      throw ConsistencyError("invariant cohomology and cohomology of invariants differ in degree " +
                             std::to_string(p));
  }
  return out;
}

}  // namespace polyarith
