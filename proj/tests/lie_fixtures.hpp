#pragma once

// Nilpotent test algebras and random automorphisms built from generator images.

#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "polyarith/lie_cohomology.hpp"
#include "polyarith/normal_forms.hpp"

namespace polyarith::fixtures {

struct NamedAlgebra {
  std::string name;
  LieAlgebraQ lie;
  // For algebras generated by a few basis vectors: the generators and how the
  // remaining basis vectors arise, e_k = [e_i, e_j] as (k, i, j), in order.
  std::vector<std::size_t> generators;
  std::vector<std::array<std::size_t, 3>> recipe;
};

/// 1-based triples to keep the tables readable.
inline LieAlgebraQ algebra(std::size_t n, const std::vector<std::array<long, 4>>& table) {
  std::vector<StructureConstant> entries;
  for (const auto& t : table)
    entries.push_back({static_cast<std::size_t>(t[0] - 1), static_cast<std::size_t>(t[1] - 1),
                       static_cast<std::size_t>(t[2] - 1), Rational(t[3])});
  return LieAlgebraQ(n, entries);
}

inline LieAlgebraQ abelian(std::size_t n) { return LieAlgebraQ(n, {}); }

/// h_{2m+1}: [e_{2i-1}, e_{2i}] = e_{2m+1}.
inline NamedAlgebra heisenberg(std::size_t m) {
  std::vector<std::array<long, 4>> t;
  std::vector<std::size_t> gens;
  const long top = static_cast<long>(2 * m + 1);
  for (long i = 1; i <= static_cast<long>(m); ++i) t.push_back({2 * i - 1, 2 * i, top, 1});
  for (std::size_t i = 0; i < 2 * m; ++i) gens.push_back(i);
  return {"h" + std::to_string(2 * m + 1), algebra(2 * m + 1, t), gens,
          {{static_cast<std::size_t>(top - 1), 0, 1}}};
}

/// L_n: [e1, e_i] = e_{i+1} for 2 <= i < n.
inline NamedAlgebra filiform(std::size_t n) {
  std::vector<std::array<long, 4>> t;
  std::vector<std::array<std::size_t, 3>> recipe;
  for (long i = 2; i < static_cast<long>(n); ++i) {
    t.push_back({1, i, i + 1, 1});
    recipe.push_back({static_cast<std::size_t>(i), 0, static_cast<std::size_t>(i - 1)});
  }
  return {"L" + std::to_string(n), algebra(n, t), {0, 1}, recipe};
}

/// At least ten nilpotent algebras of dimension at most 7.
inline std::vector<NamedAlgebra> nilpotent_suite() {
  std::vector<NamedAlgebra> out;
  out.push_back(heisenberg(1));
  out.push_back(heisenberg(2));
  out.push_back(heisenberg(3));
  for (std::size_t n = 4; n <= 7; ++n) out.push_back(filiform(n));
  out.push_back({"h3+Q", algebra(4, {{1, 2, 3, 1}}), {}, {}});
  out.push_back({"h3+h3", algebra(6, {{1, 2, 3, 1}, {4, 5, 6, 1}}), {}, {}});
  out.push_back({"free 2-step on 3", algebra(6, {{1, 2, 4, 1}, {1, 3, 5, 1}, {2, 3, 6, 1}}), {}, {}});
  // strictly upper triangular 4x4: e1=E12 e2=E23 e3=E34 e4=E13 e5=E24 e6=E14
  out.push_back({"n4 upper triangular",
                 algebra(6, {{1, 2, 4, 1}, {2, 3, 5, 1}, {1, 5, 6, 1}, {3, 4, 6, -1}}), {}, {}});
  out.push_back({"Q6", algebra(6, {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {1, 5, 6, 1}, {2, 5, 6, 1}, {3, 4, 6, -1}}),
                 {}, {}});
  out.push_back({"free 3-step on 2", algebra(5, {{1, 2, 3, 1}, {1, 3, 4, 1}, {2, 3, 5, 1}}), {0, 1},
                 {{2, 0, 1}, {3, 0, 2}, {4, 1, 2}}});
  out.push_back({"abelian 5", abelian(5), {}, {}});
  return out;
}

/// Linear map sending each generator to the given image and extending
/// through the recipe; columns are images. Not necessarily an automorphism.
inline RationalMatrix extend_from_generators(const NamedAlgebra& a, const std::vector<RatVector>& images) {
  const std::size_t n = a.lie.dim();
  std::vector<RatVector> img(n);
  for (std::size_t g = 0; g < a.generators.size(); ++g) img[a.generators[g]] = images[g];
  for (const auto& [k, i, j] : a.recipe) img[k] = a.lie.bracket(img[i], img[j]);
  RationalMatrix m(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = img[c][r];
  return m;
}

/// Semisimple automorphisms P T P^-1 with T a torus element scaling the
/// generators by powers drawn from {-1, 1/2, 1, 2, 3} (the identity scaling
/// is drawn often) and P unipotent, fixing generators modulo the derived algebra.
struct RigidityTrial {
  RationalMatrix phi;
  bool torus_trivial;
};

inline RigidityTrial random_semisimple_automorphism(const NamedAlgebra& a, std::mt19937_64& rng) {
  const std::size_t n = a.lie.dim();
  const std::vector<Rational> scalars{Rational(-1), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  std::uniform_int_distribution<std::size_t> pick(0, scalars.size() - 1);
  std::uniform_int_distribution<int> coin(0, 2), small(-2, 2);

  const bool force_trivial = coin(rng) == 0;
  bool trivial = true;
  std::vector<RatVector> t_images;
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    RatVector v = a.lie.basis_vector(a.generators[g]);
    Rational s = force_trivial ? Rational(1) : scalars[pick(rng)];
    if (s != 1) trivial = false;
    for (auto& x : v) x *= s;
    t_images.push_back(v);
  }
  RationalMatrix t = extend_from_generators(a, t_images);

  std::vector<bool> is_generator(n, false);
  for (auto g : a.generators) is_generator[g] = true;
  for (int attempt = 0;; ++attempt) {
    std::vector<RatVector> p_images;
    for (std::size_t g = 0; g < a.generators.size(); ++g) {
      RatVector v = a.lie.basis_vector(a.generators[g]);
      if (attempt < 20)
        for (std::size_t k = 0; k < n; ++k)
          if (!is_generator[k]) v[k] += small(rng);
      p_images.push_back(v);
    }
    RationalMatrix p = extend_from_generators(a, p_images);
    RationalMatrix phi = p * t * inverse(p);
    try {
      LieAutomorphism check(a.lie, phi);
      LieAutomorphism check_t(a.lie, t);
      return {phi, trivial};
    } catch (const PreconditionError&) {
      if (attempt >= 20) throw;
    }
  }
}

/// Diagonal automorphisms diag(2^w) for a Z-basis of the gradings w, i.e. the
/// integer solutions of w_i + w_j = w_k over all nonzero c_ij^k. They commute.
inline std::vector<RationalMatrix> diagonal_torus(const LieAlgebraQ& lie) {
  const std::size_t n = lie.dim();
  const auto& entries = lie.entries();
  IntegerMatrix sys(entries.size(), n);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    sys(r, entries[r].i) += 1;
    sys(r, entries[r].j) += 1;
    sys(r, entries[r].k) -= 1;
  }
  IntegerMatrix weights = entries.empty() ? IntegerMatrix::identity(n) : kernel_lattice(sys);
  std::vector<RationalMatrix> out;
  for (std::size_t r = 0; r < weights.rows(); ++r) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      long w = weights(r, i).get_si();
      Rational two_w(1);
      for (long k = 0; k < std::abs(w); ++k) two_w *= 2;
      m(i, i) = w >= 0 ? two_w : Rational(1) / two_w;
    }
    out.push_back(m);
  }
  return out;
}

/// Algebras used for the rigidity property: Heisenberg and filiform, dim <= 6.
inline std::vector<NamedAlgebra> rigidity_suite() {
  return {heisenberg(1), filiform(4), filiform(5), filiform(6),
          {"free 3-step on 2", algebra(5, {{1, 2, 3, 1}, {1, 3, 4, 1}, {2, 3, 5, 1}}), {0, 1},
           {{2, 0, 1}, {3, 0, 2}, {4, 1, 2}}}};
}

}  // namespace polyarith::fixtures
