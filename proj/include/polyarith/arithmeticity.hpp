#pragma once

#include <optional>
#include <string>

#include "polyarith/jordan.hpp"
#include "polyarith/semidirect.hpp"

namespace polyarith {

enum class Classification { FiniteOrder, VirtuallyUnipotent, Semisimple, FailsNecessaryCondition };

inline std::string to_string(Classification c) {
  switch (c) {
    case Classification::FiniteOrder: return "FiniteOrder";
    case Classification::VirtuallyUnipotent: return "VirtuallyUnipotent";
    case Classification::Semisimple: return "Semisimple";
    case Classification::FailsNecessaryCondition: return "FailsNecessaryCondition";
  }
  return "?";
}

/// Necessary condition for Z^n x| <A> to be arithmetic: A has finite order,
/// a power of A is unipotent, or A is semisimple. Passing it proves nothing.
struct ArithVerdict {
  Classification classification;
  std::optional<Integer> order;  // order of A, or the power k with A^k unipotent
  JordanPair witness;
};

inline ArithVerdict check_gamma_A(const IntegerMatrix& a) {
  if (!a.is_square()) throw PreconditionError("check_gamma_A: matrix must be square");
  if (abs(determinant(a)) != 1) throw PreconditionError("check_gamma_A: det(A) must be +1 or -1");
  JordanPair jc = jordan_chevalley(to_rational(a));
  OrderVerdict s_order = is_finite_order(jc.semisimple);
  const bool u_trivial = jc.unipotent.is_identity();
  if (s_order.finite) {
    auto c = u_trivial ? Classification::FiniteOrder : Classification::VirtuallyUnipotent;
    return {c, s_order.order, std::move(jc)};
  }
  if (u_trivial) return {Classification::Semisimple, std::nullopt, std::move(jc)};
  return {Classification::FailsNecessaryCondition, std::nullopt, std::move(jc)};
}

/// Removes every factor x - 1; what remains of char(S) for the Inn_A matrix
/// is x^2 - 2a x + 1.
inline Polynomial strip_eigenvalue_one(Polynomial p) {
  const Polynomial x_minus_one = Polynomial::x_pow_minus_one(1);
  while (p.degree() > 0 && (p % x_minus_one).is_zero()) p = p / x_minus_one;
  return p;
}

/// Inn_A acting on Der(D_inf, F) for Gamma(epsilon), and its verdict.
struct InnerActionReport {
  Integer d, a, b, l;
  std::size_t derivation_rank = 0;
  std::vector<Integer> reference_change_of_basis;  // invariant factors, all 1 for a Z-basis
  IntegerMatrix inn_a;                             // rows = images, basis d1..d4
  bool upper_rows_match = false;                   // rows (1,-2,0,0), (0,1,0,0)
  IntegerMatrix lower_block;
  IntegerMatrix reference_lower_block;  // [[-1, -2(a+1)/l], [g, 2a+1]] with g = l
  std::string reference_block_relation;  // "equal", "transpose" or "mismatch"
  Polynomial semisimple_char_poly;
  Polynomial hyperbolic_factor;
  ArithVerdict verdict;
};

inline InnerActionReport inner_action_report(const Integer& d) {
  GammaEpsilon ge = build_gamma_epsilon(d);
  const auto& p = ge.group.presentation();
  const auto& m = ge.group.action();
  DerivationLattice der = derivation_space(p, m);
  DerivationLattice ref = gamma_epsilon_reference_lattice(ge);

  IntegerMatrix change(ref.size(), der.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    auto c = der.coordinates(ref.element(i));
    if (!c) throw ConsistencyError("inner action report: a listed derivation is not in Der");
    for (std::size_t j = 0; j < der.size(); ++j) change(i, j) = (*c)[j];
  }

  IntegerMatrix inn_a = conjugation_action(p, m, p.parse_word("A"), ref, &ge.group.engine());
  const Integer& a = ge.epsilon.x;
  const Integer& l = ge.l;
  IntegerMatrix lower = inn_a.block(2, 2, 2, 2);
  IntegerMatrix expected{{-1, -2 * (a + 1) / l}, {l, 2 * a + 1}};

  ArithVerdict verdict = check_gamma_A(inn_a);
  Polynomial cs = char_poly(verdict.witness.semisimple);
  return {
      d,
      a,
      ge.epsilon.y,
      l,
      der.size(),
      snf(change).invariant_factors(),
      inn_a,
      inn_a.block(0, 0, 2, 4) == IntegerMatrix{{1, -2, 0, 0}, {0, 1, 0, 0}},
      lower,
      expected,
      lower == expected ? "equal" : lower == expected.transpose() ? "transpose" : "mismatch",
      cs,
      strip_eigenvalue_one(cs),
      std::move(verdict),
  };
}

}  // namespace polyarith
