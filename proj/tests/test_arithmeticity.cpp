#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "polyarith/arithmeticity.hpp"

using namespace polyarith;

TEST_CASE("classifying small matrices") {
  auto id = check_gamma_A(IntegerMatrix::identity(3));
  CHECK(id.classification == Classification::FiniteOrder);
  CHECK(id.order == Integer(1));

  auto shear = check_gamma_A(IntegerMatrix{{1, 1}, {0, 1}});
  CHECK(shear.classification == Classification::VirtuallyUnipotent);
  CHECK(shear.order == Integer(1));

  auto cat = check_gamma_A(IntegerMatrix{{2, 1}, {1, 1}});
  CHECK(cat.classification == Classification::Semisimple);
  CHECK_FALSE(cat.order);

  auto rot = check_gamma_A(IntegerMatrix{{0, -1}, {1, 0}});
  CHECK(rot.classification == Classification::FiniteOrder);
  CHECK(rot.order == Integer(4));

  // -1 times a shear: S = -I has order 2, U is the shear.
  auto neg_shear = check_gamma_A(IntegerMatrix{{-1, -1}, {0, -1}});
  CHECK(neg_shear.classification == Classification::VirtuallyUnipotent);
  CHECK(neg_shear.order == Integer(2));

  // Hyperbolic block next to a unipotent block.
  auto mixed = check_gamma_A(block_diagonal<Integer>({IntegerMatrix{{1, 1}, {0, 1}}, IntegerMatrix{{2, 1}, {1, 1}}}));
  CHECK(mixed.classification == Classification::FailsNecessaryCondition);

  CHECK_THROWS_AS(check_gamma_A(IntegerMatrix{{2, 0}, {0, 1}}), PreconditionError);
  CHECK_THROWS_AS(check_gamma_A(IntegerMatrix(2, 3)), PreconditionError);
}

TEST_CASE("verdicts are conjugation and inversion invariant") {
  std::vector<IntegerMatrix> samples{
      IntegerMatrix::identity(4),
      IntegerMatrix{{0, -1, 0, 0}, {1, -1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}},
      block_diagonal<Integer>({IntegerMatrix{{2, 1}, {1, 1}}, IntegerMatrix{{0, -1}, {1, 0}}}),
      block_diagonal<Integer>({IntegerMatrix{{1, -2}, {0, 1}}, IntegerMatrix{{-1, 3}, {-2, 5}}}),
      block_diagonal<Integer>({IntegerMatrix{{-1, 1}, {0, -1}}, IntegerMatrix::identity(2)}),
  };
  std::mt19937_64 rng(41);
  for (const auto& a : samples) {
    auto base = check_gamma_A(a);
    CHECK(check_gamma_A(unimodular_inverse(a)).classification == base.classification);
    for (int trial = 0; trial < 10; ++trial) {
      IntegerMatrix p = oracle::random_unimodular(rng, 4, 6);
      auto conj = check_gamma_A(p * a * unimodular_inverse(p));
      CHECK(conj.classification == base.classification);
      CHECK(conj.order == base.order);
    }
    if (base.classification == Classification::VirtuallyUnipotent) {
      IntegerMatrix pw = power(a, base.order->get_ui());
      CHECK(is_unipotent(to_rational(pw)));
      CHECK_FALSE(pw.is_identity());
    }
  }
}

TEST_CASE("Inn_A on Gamma(epsilon) fails the necessary condition") {
  const std::vector<std::pair<long, long>> pell{{2, 3}, {3, 2}, {5, 9}, {6, 5}, {7, 8}, {8, 3}, {10, 19}};
  for (auto [d, a] : pell) {
    INFO("d = " << d);
    InnerActionReport r = inner_action_report(d);
    CHECK(r.a == a);
    CHECK(r.derivation_rank == 4);
    CHECK(r.reference_change_of_basis == std::vector<Integer>(4, Integer(1)));
    CHECK(r.upper_rows_match);
    CHECK(r.reference_block_relation == "transpose");
    CHECK(r.verdict.classification == Classification::FailsNecessaryCondition);
    CHECK_FALSE(r.verdict.witness.unipotent.is_identity());
    CHECK(r.verdict.witness.unipotent.block(0, 0, 2, 2) == RationalMatrix{{1, -2}, {0, 1}});
    CHECK(r.hyperbolic_factor == Polynomial({Rational(1), Rational(-2 * a), Rational(1)}));
    CHECK(r.semisimple_char_poly.degree() == 4);
  }
  CHECK(inner_action_report(3).hyperbolic_factor.to_string() == "x^2 - 4*x + 1");
  CHECK(inner_action_report(5).hyperbolic_factor.to_string() == "x^2 - 18*x + 1");
  CHECK_THROWS_AS(inner_action_report(16), PreconditionError);
}
