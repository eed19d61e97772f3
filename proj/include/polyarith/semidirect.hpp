#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "polyarith/group_cohomology.hpp"
#include "polyarith/quadratic.hpp"

namespace polyarith {

/// (f, g) in F x| D with g in canonical form.
struct SemidirectElement {
  IntVector f;
  Word g;
  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// Gamma = F x| D with (f1, g1)(f2, g2) = (f1 + g1.f2, g1 g2).
class SemidirectGroup {
public:
  SemidirectGroup(Presentation p, ModuleAction m, NormalFormEngine engine)
      : presentation_(std::move(p)), action_(std::move(m)), engine_(std::move(engine)) {
    if (action_.num_generators() != presentation_.num_generators())
      throw PreconditionError("semidirect group: action and presentation disagree on generators");
  }

  const Presentation& presentation() const { return presentation_; }
  const ModuleAction& action() const { return action_; }
  const NormalFormEngine& engine() const { return engine_; }
  std::size_t rank() const { return action_.rank(); }

  SemidirectElement make(IntVector f, const Word& g) const {
    if (f.size() != rank()) throw PreconditionError("semidirect element: module part has wrong rank");
    return {std::move(f), engine_.normalize(g)};
  }
  SemidirectElement identity() const { return {IntVector(rank(), Integer(0)), Word{}}; }
  SemidirectElement module_element(IntVector f) const { return make(std::move(f), Word{}); }
  SemidirectElement group_element(const Word& g) const { return make(IntVector(rank(), Integer(0)), g); }

  SemidirectElement multiply(const SemidirectElement& a, const SemidirectElement& b) const {
    require_member(a);
    require_member(b);
    IntVector f = act(action_, a.g, b.f);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += a.f[i];
    return {std::move(f), engine_.normalize(concat(a.g, b.g))};
  }

  /// (f, g)^-1 = (-g^-1 . f, g^-1)
  SemidirectElement invert(const SemidirectElement& a) const {
    require_member(a);
    Word gi = inverse(a.g);
    IntVector f = act(action_, gi, a.f);
    for (auto& x : f) x = -x;
    return {std::move(f), engine_.normalize(gi)};
  }

  /// Module basis vectors (e_k, 1) followed by (0, h_j).
  std::vector<SemidirectElement> generators() const {
    std::vector<SemidirectElement> out;
    for (std::size_t k = 0; k < rank(); ++k) {
      IntVector e(rank(), Integer(0));
      e[k] = 1;
      out.push_back(module_element(std::move(e)));
    }
    for (std::size_t j = 0; j < presentation_.num_generators(); ++j)
      out.push_back(group_element(presentation_.generator(j)));
    return out;
  }

private:
  void require_member(const SemidirectElement& a) const {
    if (a.f.size() != rank() || engine_.normalize(a.g) != a.g)
      throw PreconditionError("semidirect element does not belong to this group");
  }

  Presentation presentation_;
  ModuleAction action_;
  NormalFormEngine engine_;
};

// ---------------------------------------------------------------------------
// Automorphisms in Inn_Gamma . A_{Gamma|F}

/// phi_d(m, g) = (m + d(g), g)
struct FromDerivation {
  Derivation d;
};
/// phi_rho(m, g) = (rho m, g), rho a D-equivariant automorphism of F
struct FromEquivariant {
  IntegerMatrix rho;
};
/// x -> by x by^-1
struct Inner {
  SemidirectElement by;
};

using AutomorphismAtom = std::variant<FromDerivation, FromEquivariant, Inner>;

/// Composite of atoms, applied first to last.
struct AutomorphismSpec {
  std::vector<AutomorphismAtom> atoms;
};

namespace detail {

inline SemidirectElement apply_atom(const SemidirectGroup& grp, const AutomorphismAtom& atom,
                                    const SemidirectElement& x) {
  return std::visit(
      [&](const auto& a) -> SemidirectElement {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, FromDerivation>) {
          IntVector f = evaluate(grp.action(), a.d, x.g);
          for (std::size_t i = 0; i < f.size(); ++i) f[i] += x.f[i];
          return {std::move(f), x.g};
        } else if constexpr (std::is_same_v<A, FromEquivariant>) {
          return {a.rho * x.f, x.g};
        } else {
          return grp.multiply(grp.multiply(a.by, x), grp.invert(a.by));
        }
      },
      atom);
}

inline SemidirectElement apply_unchecked(const SemidirectGroup& grp, const AutomorphismSpec& spec,
                                         SemidirectElement x) {
  for (const auto& atom : spec.atoms) x = apply_atom(grp, atom, x);
  return x;
}

}  // namespace detail

/// Empty string when the atom is well formed for the group, else the reason.
inline std::string atom_problem(const SemidirectGroup& grp, const AutomorphismAtom& atom) {
  return std::visit(
      [&](const auto& a) -> std::string {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, FromDerivation>) {
          if (!is_derivation(grp.presentation(), grp.action(), a.d))
            return "derivation values do not satisfy the cocycle condition on every relator";
          return {};
        } else if constexpr (std::is_same_v<A, FromEquivariant>) {
          const std::size_t n = grp.rank();
          if (a.rho.rows() != n || a.rho.cols() != n) return "equivariant matrix has wrong shape";
          if (abs(determinant(a.rho)) != 1) return "equivariant matrix is not unimodular";
          for (const auto& g : grp.action().matrices())
            if (!commutes(a.rho, g)) return "matrix does not commute with the D-action";
          return {};
        } else {
          if (a.by.f.size() != grp.rank() || grp.engine().normalize(a.by.g) != a.by.g)
            return "conjugating element does not belong to the group";
          return {};
        }
      },
      atom);
}

inline void validate_spec(const SemidirectGroup& grp, const AutomorphismSpec& spec) {
  for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
    std::string why = atom_problem(grp, spec.atoms[i]);
    if (!why.empty()) throw PreconditionError("automorphism atom " + std::to_string(i) + ": " + why);
  }
}

inline SemidirectElement apply(const SemidirectGroup& grp, const AutomorphismSpec& spec,
                               const SemidirectElement& x) {
  validate_spec(grp, spec);
  return detail::apply_unchecked(grp, spec, x);
}

/// Inverse composite; nullopt when some equivariant matrix is not invertible over Z.
inline std::optional<AutomorphismSpec> inverse_spec(const SemidirectGroup& grp, const AutomorphismSpec& spec) {
  AutomorphismSpec inv;
  for (auto it = spec.atoms.rbegin(); it != spec.atoms.rend(); ++it) {
    if (auto* d = std::get_if<FromDerivation>(&*it)) {
      inv.atoms.emplace_back(FromDerivation{Integer(-1) * d->d});
    } else if (auto* r = std::get_if<FromEquivariant>(&*it)) {
      if (!r->rho.is_square() || abs(determinant(r->rho)) != 1) return std::nullopt;
      inv.atoms.emplace_back(FromEquivariant{unimodular_inverse(r->rho)});
    } else {
      inv.atoms.emplace_back(Inner{grp.invert(std::get<Inner>(*it).by)});
    }
  }
  return inv;
}

struct AutomorphismCheck {
  bool ok = true;
  std::string counterexample;
};

namespace detail {
inline std::string describe(const SemidirectGroup& grp, const SemidirectElement& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.f.size(); ++i) s += (i ? "," : "") + to_string(x.f[i]);
  return s + "; " + grp.presentation().format(x.g) + ")";
}
}  // namespace detail

/// Checks the homomorphism property on all pairs of generators and their
/// inverses, the defining relations of Gamma on the generator images, and that
/// the explicit inverse composite undoes the map on generators.
inline AutomorphismCheck verify_automorphism(const SemidirectGroup& grp, const AutomorphismSpec& spec) {
  auto phi = [&](const SemidirectElement& x) { return detail::apply_unchecked(grp, spec, x); };
  std::vector<SemidirectElement> gens = grp.generators();
  std::vector<SemidirectElement> letters = gens;
  for (const auto& g : gens) letters.push_back(grp.invert(g));

  for (const auto& x : letters)
    for (const auto& y : letters) {
      if (phi(grp.multiply(x, y)) != grp.multiply(phi(x), phi(y)))
        return {false, "phi(xy) != phi(x)phi(y) for x = " + detail::describe(grp, x) +
                           ", y = " + detail::describe(grp, y)};
    }

  // Relations of Gamma: module commutators, the action rule, relators of D.
  const std::size_t n = grp.rank();
  std::vector<SemidirectElement> img;
  for (const auto& g : gens) img.push_back(phi(g));
  for (std::size_t j = 0; j < grp.presentation().num_generators(); ++j)
    for (std::size_t k = 0; k < n; ++k) {
      SemidirectElement lhs = grp.multiply(grp.multiply(img[n + j], img[k]), grp.invert(img[n + j]));
      SemidirectElement rhs = grp.identity();
      for (std::size_t i = 0; i < n; ++i) {
        Integer c = grp.action().matrix(j)(i, k);
        SemidirectElement p = c >= 0 ? img[i] : grp.invert(img[i]);
        for (Integer t = 0; t < abs(c); ++t) rhs = grp.multiply(rhs, p);
      }
      if (lhs != rhs)
        return {false, "image of the action relation fails for generator " +
                           grp.presentation().generator_names()[j] + " on e_" + std::to_string(k)};
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (grp.multiply(img[a], img[b]) != grp.multiply(img[b], img[a]))
        return {false, "images of module generators do not commute"};
  for (const auto& r : grp.presentation().relators()) {
    SemidirectElement acc = grp.identity();
    for (const auto& l : r) acc = grp.multiply(acc, l.sign > 0 ? img[n + l.gen] : grp.invert(img[n + l.gen]));
    if (acc != grp.identity())
      return {false, "relator " + grp.presentation().format(r) + " is not preserved"};
  }

  auto inv = inverse_spec(grp, spec);
  if (!inv) return {false, "an equivariant matrix is not invertible over Z"};
  for (const auto& g : gens) {
    if (detail::apply_unchecked(grp, *inv, phi(g)) != g || phi(detail::apply_unchecked(grp, *inv, g)) != g)
      return {false, "inverse composite does not undo the map on " + detail::describe(grp, g)};
  }
  return {};
}

/// Whether two composites agree on every generator of Gamma.
inline bool agree_on_generators(const SemidirectGroup& grp, const AutomorphismSpec& a,
                                const AutomorphismSpec& b) {
  for (const auto& g : grp.generators())
    if (detail::apply_unchecked(grp, a, g) != detail::apply_unchecked(grp, b, g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Gamma(epsilon) = (O x Z) x| D_inf

/// F = O x Z with coordinates (1, omega, e); A acts by multiplication with
/// epsilon on O and trivially on Z, tau by Galois conjugation and by -1.
struct GammaEpsilon {
  QuadElem epsilon;
  Integer l;  // gcd(a + 1, b d)
  SemidirectGroup group;
};

inline GammaEpsilon build_gamma_epsilon(const Integer& d) {
  QuadOrder order(d);
  QuadElem eps = fundamental_pell(order);
  IntegerMatrix a_mat = block_diagonal<Integer>({mult_matrix(eps), IntegerMatrix{{1}}});
  IntegerMatrix t_mat = block_diagonal<Integer>({galois_matrix(), IntegerMatrix{{-1}}});
  Presentation p = dinf_presentation();
  ModuleAction m(p, {a_mat, t_mat});
  Integer l = gcd(eps.x + 1, eps.y * d);
  return {eps, l, SemidirectGroup(p, std::move(m), dinf_engine())};
}

/// d1..d4: d1(A) = (0,1), d2(tau) = (0,1), d3(A) = d3(tau) = (omega,0),
/// d4(A) = ((epsilon+1) omega / l, 0); unlisted values are zero.
inline std::vector<Derivation> gamma_epsilon_reference_derivations(const GammaEpsilon& ge) {
  const Integer& d = ge.epsilon.parent.d();
  const Integer& a = ge.epsilon.x;
  const Integer& b = ge.epsilon.y;
  auto vec = [](Integer x, Integer y, Integer z) { return IntVector{x, y, z}; };
  IntVector zero = vec(0, 0, 0);
  return {
      Derivation{{vec(0, 0, 1), zero}},
      Derivation{{zero, vec(0, 0, 1)}},
      Derivation{{vec(0, 1, 0), vec(0, 1, 0)}},
      Derivation{{vec(b * d / ge.l, (a + 1) / ge.l, 0), zero}},
  };
}

inline DerivationLattice gamma_epsilon_reference_lattice(const GammaEpsilon& ge) {
  std::vector<IntVector> rows;
  for (const auto& d : gamma_epsilon_reference_derivations(ge)) rows.push_back(flatten(d));
  return {2, 3, IntegerMatrix::from_rows(rows)};
}

/// Random element of Gamma(epsilon): module coordinates in [-box, box], A^k tau^t with |k| <= span.
inline SemidirectElement random_gamma_element(const SemidirectGroup& grp, std::mt19937_64& rng, int box = 5,
                                              long long span = 4) {
  std::uniform_int_distribution<int> coord(-box, box);
  std::uniform_int_distribution<long long> k(-span, span);
  std::uniform_int_distribution<int> t(0, 1);
  IntVector f(grp.rank());
  for (auto& x : f) x = coord(rng);
  return grp.make(std::move(f), to_word(DihedralElement{k(rng), t(rng)}));
}

struct CompatibilitySample {
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Checks Inn_g o phi_d o Inn_g^-1 == phi_{g*d} on `samples` random elements, for g in
/// {A, tau, A tau} and d over the basis of Der. g*d comes from conjugation_action.
inline CompatibilitySample conjugation_compatibility(const GammaEpsilon& ge, std::uint64_t seed,
                                                     std::size_t samples = 50) {
  const auto& grp = ge.group;
  const auto& p = grp.presentation();
  DerivationLattice der = derivation_space(p, grp.action());
  std::mt19937_64 rng(seed);
  std::vector<SemidirectElement> xs;
  for (std::size_t s = 0; s < samples; ++s) xs.push_back(random_gamma_element(grp, rng));

  CompatibilitySample out;
  out.seed = seed;
  for (const char* g : {"A", "t", "A t"}) {
    Word gw = p.parse_word(g);
    SemidirectElement gelem = grp.group_element(gw);
    IntegerMatrix m = conjugation_action(p, grp.action(), gw, der, &grp.engine());
    for (std::size_t i = 0; i < der.size(); ++i) {
      AutomorphismSpec lhs{{Inner{grp.invert(gelem)}, FromDerivation{der.element(i)}, Inner{gelem}}};
      AutomorphismSpec rhs{{FromDerivation{der.combination(m.row_vector(i))}}};
      validate_spec(grp, lhs);
      validate_spec(grp, rhs);
      for (const auto& x : xs) {
        ++out.checks;
        if (detail::apply_unchecked(grp, lhs, x) != detail::apply_unchecked(grp, rhs, x)) {
          if (out.failures++ == 0)
            out.first_failure = std::string("g = ") + g + ", d_" + std::to_string(i + 1) + ", x = " + detail::describe(grp, x);
        }
      }
    }
  }
  return out;
}

}  // namespace polyarith
