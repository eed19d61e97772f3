#pragma once

// Finite groups acting on small lattices, shared by the cohomology tests.

#include <string>
#include <vector>

#include "polyarith/presentation.hpp"

namespace polyarith::fixtures {

struct FiniteCase {
  std::string name;
  Presentation presentation;
  std::vector<IntegerMatrix> matrices;
};

inline IntegerMatrix perm_matrix(const std::vector<std::size_t>& images) {
  const std::size_t n = images.size();
  IntegerMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(images[j], j) = 1;
  return m;
}

inline std::vector<FiniteCase> finite_cases() {
  Presentation c2({"g"}, {Word{{0, 1}, {0, 1}}});
  Presentation c3({"g"}, {Word{{0, 1}, {0, 1}, {0, 1}}});
  Presentation v4({"a", "b"}, {Word{{0, 1}, {0, 1}}, Word{{1, 1}, {1, 1}},
                               Word{{0, 1}, {1, 1}, {0, 1}, {1, 1}}});
  Presentation s3({"s", "t"}, {Word{{0, 1}, {0, 1}}, Word{{1, 1}, {1, 1}},
                               Word{{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}}});
  IntegerMatrix sign{{-1}};
  return {
      {"C2 by -1 on Z", c2, {sign}},
      {"C2 trivial on Z^2", c2, {IntegerMatrix::identity(2)}},
      {"C2 swap on Z^2", c2, {perm_matrix({1, 0})}},
      {"C2 swap plus sign on Z^3", c2, {block_diagonal<Integer>({perm_matrix({1, 0}), sign})}},
      {"C2 by -1 on Z^4", c2, {IntegerMatrix::identity(4) * Integer(-1)}},
      {"C3 rotation on Z^2", c3, {IntegerMatrix{{0, -1}, {1, -1}}}},
      {"C3 cycle on Z^3", c3, {perm_matrix({1, 2, 0})}},
      {"C3 rotation plus trivial on Z^3", c3,
       {block_diagonal<Integer>({IntegerMatrix{{0, -1}, {1, -1}}, IntegerMatrix{{1}}})}},
      {"V4 signs on Z^2", v4, {IntegerMatrix{{-1, 0}, {0, 1}}, IntegerMatrix{{1, 0}, {0, -1}}}},
      {"V4 regular on Z^4", v4, {perm_matrix({1, 0, 3, 2}), perm_matrix({2, 3, 0, 1})}},
      {"V4 mixed on Z^3", v4,
       {block_diagonal<Integer>({perm_matrix({1, 0}), sign}),
        block_diagonal<Integer>({IntegerMatrix::identity(2) * Integer(-1), IntegerMatrix{{1}}})}},
      {"S3 sign on Z", s3, {sign, sign}},
      {"S3 permutations on Z^3", s3, {perm_matrix({1, 0, 2}), perm_matrix({0, 2, 1})}},
      {"S3 permutations plus sign on Z^4", s3,
       {block_diagonal<Integer>({perm_matrix({1, 0, 2}), sign}),
        block_diagonal<Integer>({perm_matrix({0, 2, 1}), sign})}},
      {"S3 reduced permutation on Z^2", s3,
       {IntegerMatrix{{0, 1}, {1, 0}}, IntegerMatrix{{-1, 0}, {-1, 1}}}},
  };
}

}  // namespace polyarith::fixtures
