#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "polyarith/normal_forms.hpp"
#include "polyarith/presentation.hpp"

namespace polyarith {

/// A 1-cocycle d: D -> F, stored by its values on the generators of D.
/// d(h1 h2) = d(h1) + h1 . d(h2).
struct Derivation {
  std::vector<IntVector> values;
  friend bool operator==(const Derivation&, const Derivation&) = default;
};

inline Derivation zero_derivation(std::size_t num_gens, std::size_t rank) {
  return {std::vector<IntVector>(num_gens, IntVector(rank, Integer(0)))};
}

inline IntVector flatten(const Derivation& d) {
  IntVector out;
  for (const auto& v : d.values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline Derivation unflatten(const IntVector& flat, std::size_t num_gens, std::size_t rank) {
  if (flat.size() != num_gens * rank) throw PreconditionError("derivation vector has wrong length");
  Derivation d;
  for (std::size_t g = 0; g < num_gens; ++g)
    d.values.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(g * rank),
                          flat.begin() + static_cast<std::ptrdiff_t>((g + 1) * rank));
  return d;
}

inline Derivation operator+(const Derivation& a, const Derivation& b) {
  Derivation out = a;
  for (std::size_t g = 0; g < out.values.size(); ++g)
    for (std::size_t i = 0; i < out.values[g].size(); ++i) out.values[g][i] += b.values[g][i];
  return out;
}

inline Derivation operator*(const Integer& k, const Derivation& a) {
  Derivation out = a;
  for (auto& v : out.values)
    for (auto& x : v) x *= k;
  return out;
}

/// Extends d along a word: d(x1...xm) = sum_i (x1...x_{i-1}) . delta(x_i), with
/// delta(g) = d(g) and delta(g^-1) = -g^-1 . d(g).
inline IntVector evaluate(const ModuleAction& m, const Derivation& d, const Word& w) {
  const std::size_t n = m.rank();
  IntVector acc(n, Integer(0));
  IntegerMatrix prefix = IntegerMatrix::identity(n);
  for (const auto& l : w) {
    IntVector delta = d.values.at(l.gen);
    if (l.sign < 0) {
      delta = m.inverse_matrix(l.gen) * delta;
      for (auto& x : delta) x = -x;
    }
    IntVector term = prefix * delta;
    for (std::size_t i = 0; i < n; ++i) acc[i] += term[i];
    prefix = prefix * m.letter_matrix(l);
  }
  return acc;
}

/// Whether the generator values extend consistently over every relator.
inline bool is_derivation(const Presentation& p, const ModuleAction& m, const Derivation& d) {
  if (d.values.size() != p.num_generators()) return false;
  for (const auto& v : d.values)
    if (v.size() != m.rank()) return false;
  for (const auto& r : p.relators())
    if (!is_zero(evaluate(m, d, r))) return false;
  return true;
}

/// Fox-derivative system: row block per relator, column block per generator.
/// Its integer kernel is the set of derivations.
inline IntegerMatrix fox_matrix(const Presentation& p, const ModuleAction& m) {
  const std::size_t n = m.rank(), gens = p.num_generators();
  IntegerMatrix sys(p.relators().size() * n, gens * n);
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    IntegerMatrix prefix = IntegerMatrix::identity(n);
    for (const auto& l : p.relators()[r]) {
      IntegerMatrix coeff = l.sign > 0 ? prefix : -(prefix * m.inverse_matrix(l.gen));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sys(r * n + i, l.gen * n + j) += coeff(i, j);
      prefix = prefix * m.letter_matrix(l);
    }
  }
  return sys;
}

/// A lattice of derivations given by basis rows of flattened generator values.
class DerivationLattice {
public:
  DerivationLattice(std::size_t num_gens, std::size_t rank, IntegerMatrix basis)
      : gens_(num_gens), rank_(rank), basis_(std::move(basis)) {
    if (basis_.rows() > 0 && basis_.cols() != gens_ * rank_)
      throw PreconditionError("derivation lattice basis has wrong width");
    if (basis_.rows() == 0) basis_ = IntegerMatrix(0, gens_ * rank_);
  }

  std::size_t size() const { return basis_.rows(); }
  std::size_t num_generators() const { return gens_; }
  std::size_t module_rank() const { return rank_; }
  const IntegerMatrix& basis() const { return basis_; }
  Derivation element(std::size_t i) const { return unflatten(basis_.row_vector(i), gens_, rank_); }

  std::optional<IntVector> coordinates(const Derivation& d) const {
    if (size() == 0) {
      if (is_zero(flatten(d))) return IntVector{};
      return std::nullopt;
    }
    return lattice_coordinates(basis_, flatten(d));
  }

  Derivation combination(const IntVector& coords) const {
    Derivation d = zero_derivation(gens_, rank_);
    for (std::size_t i = 0; i < coords.size(); ++i) d = d + coords[i] * element(i);
    return d;
  }

private:
  std::size_t gens_, rank_;
  IntegerMatrix basis_;
};

/// Z-basis of Der(D, F): the saturated integer kernel of the Fox system.
inline DerivationLattice derivation_space(const Presentation& p, const ModuleAction& m) {
  if (m.num_generators() != p.num_generators())
    throw PreconditionError("derivation_space: action and presentation disagree on generators");
  const std::size_t width = p.num_generators() * m.rank();
  if (width == 0) return {p.num_generators(), m.rank(), IntegerMatrix(0, 0)};
  IntegerMatrix sys = fox_matrix(p, m);
  IntegerMatrix basis = sys.rows() == 0 ? IntegerMatrix::identity(width) : kernel_lattice(sys);
  return {p.num_generators(), m.rank(), basis};
}

/// Principal derivation d_f(g) = g.f - f.
inline Derivation principal_derivation(const ModuleAction& m, const IntVector& f) {
  Derivation d;
  for (std::size_t g = 0; g < m.num_generators(); ++g) {
    IntVector v = m.matrix(g) * f;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f[i];
    d.values.push_back(std::move(v));
  }
  return d;
}

/// Generators d_{e_k} of B^1, one row per standard basis vector of Z^n.
inline IntegerMatrix coboundary_generators(const ModuleAction& m) {
  const std::size_t n = m.rank();
  IntegerMatrix gens(n, m.num_generators() * n);
  for (std::size_t k = 0; k < n; ++k) {
    IntVector e(n, Integer(0));
    e[k] = 1;
    IntVector flat = flatten(principal_derivation(m, e));
    for (std::size_t j = 0; j < flat.size(); ++j) gens(k, j) = flat[j];
  }
  return gens;
}

/// The lattice B^1 of principal derivations, in Hermite basis.
inline DerivationLattice principal_derivations(const ModuleAction& m) {
  return {m.num_generators(), m.rank(), lattice_basis(coboundary_generators(m))};
}

/// A finitely generated abelian group Z^free_rank + sum Z/t_i.
struct CohomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

/// H^1 = Z^1 / B^1, read off the Smith form of B^1 in Z^1 coordinates.
inline CohomologyGroup h1(const Presentation& p, const ModuleAction& m) {
  DerivationLattice z = derivation_space(p, m);
  IntegerMatrix b = coboundary_generators(m);
  const std::size_t k = z.size();
  IntegerMatrix coords(b.rows(), k);
  for (std::size_t r = 0; r < b.rows(); ++r) {
    auto c = z.coordinates(unflatten(b.row_vector(r), m.num_generators(), m.rank()));
    if (!c) throw ConsistencyError("h1: a principal derivation is not in the derivation lattice");
    for (std::size_t j = 0; j < k; ++j) coords(r, j) = (*c)[j];
  }
  CohomologyGroup out;
  std::size_t rnk = 0;
  if (coords.rows() > 0 && k > 0) {
    for (const auto& f : snf(coords).invariant_factors()) {
      if (f == 0) continue;
      ++rnk;
      if (f > 1) out.torsion.push_back(f);
    }
  }
  out.free_rank = k - rnk;
  return out;
}

/// For a fixed g in D: the words g^-1 h_j g for each generator h_j.
struct RewritingTable {
  Word element;
  std::vector<Word> conjugates;
};

inline RewritingTable make_rewriting_table(const Presentation& p, const Word& g,
                                           const NormalFormEngine* engine = nullptr) {
  RewritingTable t{g, {}};
  for (std::size_t j = 0; j < p.num_generators(); ++j) {
    Word w = concat(inverse(g), p.generator(j), g);
    t.conjugates.push_back(engine ? engine->normalize(w) : free_reduce(w));
  }
  return t;
}

/// Whether each table entry equals g^-1 h_j g in the engine.
inline bool validate_rewriting_table(const Presentation& p, const RewritingTable& t,
                                     const NormalFormEngine& engine) {
  if (t.conjugates.size() != p.num_generators()) return false;
  for (std::size_t j = 0; j < p.num_generators(); ++j)
    if (!engine.equal(t.conjugates[j], concat(inverse(t.element), p.generator(j), t.element)))
      return false;
  return true;
}

/// (g * d)(h) = g . d(g^-1 h g), evaluated on the generators.
inline Derivation conjugate(const ModuleAction& m, const RewritingTable& t, const Derivation& d) {
  Derivation out;
  for (const auto& w : t.conjugates) out.values.push_back(act(m, t.element, evaluate(m, d, w)));
  return out;
}

/// Matrix of d -> g * d on the basis of L; row i holds the coordinates of g * d_i.
inline IntegerMatrix conjugation_action(const ModuleAction& m, const RewritingTable& t,
                                        const DerivationLattice& lattice) {
  const std::size_t k = lattice.size();
  IntegerMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto c = lattice.coordinates(conjugate(m, t, lattice.element(i)));
    if (!c) throw ConsistencyError("conjugation_action: g * d left the derivation lattice");
    for (std::size_t j = 0; j < k; ++j) out(i, j) = (*c)[j];
  }
  if (k > 0 && abs(determinant(out)) != 1)
    throw ConsistencyError("conjugation_action: action matrix is not unimodular");
  return out;
}

inline IntegerMatrix conjugation_action(const Presentation& p, const ModuleAction& m, const Word& g,
                                        const DerivationLattice& lattice,
                                        const NormalFormEngine* engine = nullptr) {
  return conjugation_action(m, make_rewriting_table(p, g, engine), lattice);
}

/// Z-basis (rows of flattened n x n matrices) of {X : X G = G X for all generators}.
inline IntegerMatrix commutant_lattice(const ModuleAction& m) {
  const std::size_t n = m.rank();
  IntegerMatrix sys(m.num_generators() * n * n, n * n);
  for (std::size_t g = 0; g < m.num_generators(); ++g) {
    const IntegerMatrix& a = m.matrix(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t row = g * n * n + i * n + j;
        for (std::size_t k = 0; k < n; ++k) {
          sys(row, i * n + k) += a(k, j);  // (X G)_ij
          sys(row, k * n + j) -= a(i, k);  // (G X)_ij
        }
      }
  }
  if (sys.rows() == 0) return IntegerMatrix::identity(n * n);
  return kernel_lattice(sys);
}

/// All X in GL(n, Z) commuting with every generator matrix and with
/// |X_ij| <= bound, sorted lexicographically.
inline std::vector<IntegerMatrix> equivariant_units(const ModuleAction& m, const Integer& bound) {
  if (bound < 1) throw PreconditionError("equivariant_units: bound must be at least 1");
  const std::size_t n = m.rank();
  IntegerMatrix basis = commutant_lattice(m);  // Hermite form: echelon rows
  const std::size_t r = basis.rows();
  std::vector<std::size_t> pivot(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t p = 0;
    while (basis(i, p) == 0) ++p;
    pivot[i] = p;
  }

  std::vector<IntegerMatrix> out;
  IntVector current(n * n, Integer(0));
  auto recurse = [&](auto&& self, std::size_t j) -> void {
    if (j == r) {
      for (const auto& x : current)
        if (abs(x) > bound) return;
      IntegerMatrix xm(n, n, current);
      if (abs(determinant(xm)) == 1) out.push_back(std::move(xm));
      return;
    }
    // Rows after j vanish at pivot[j], so this entry is fixed once c_j is chosen.
    const Integer& h = basis(j, pivot[j]);
    Integer partial = current[pivot[j]];
    Integer lo = -floor_div(bound + partial, h);
    Integer hi = floor_div(bound - partial, h);
    for (Integer c = lo; c <= hi; ++c) {
      for (std::size_t e = 0; e < n * n; ++e) current[e] += c * basis(j, e);
      self(self, j + 1);
      for (std::size_t e = 0; e < n * n; ++e) current[e] -= c * basis(j, e);
    }
  };
  if (n > 0) recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polyarith
