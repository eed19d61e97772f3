#pragma once

// Test-only reference computations. None of these call into the routine they
// are used to check.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "polyarith/matrix.hpp"
#include "polyarith/polynomial.hpp"

namespace polyarith::oracle {

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Laplace expansion along the first row; exponential, for small matrices only.
inline Integer laplace_det(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Integer term = m(0, j) * laplace_det(minor);
    det += (j % 2 ? -term : term);
  }
  return det;
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, where
/// D_k is the gcd of all k x k minors.
inline std::vector<Integer> invariant_factors(const IntegerMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        IntegerMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        Integer d = laplace_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) {
      for (std::size_t r = k; r <= std::min(m.rows(), m.cols()); ++r) out.push_back(0);
      break;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// det(xI - A) by Laplace expansion over Q[x].
inline Polynomial laplace_char_poly(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::function<Polynomial(const std::vector<std::vector<Polynomial>>&)> det =
      [&](const std::vector<std::vector<Polynomial>>& m) -> Polynomial {
    const std::size_t k = m.size();
    if (k == 0) return Polynomial::constant(1);
    if (k == 1) return m[0][0];
    Polynomial acc;
    for (std::size_t j = 0; j < k; ++j) {
      if (m[0][j].is_zero()) continue;
      std::vector<std::vector<Polynomial>> minor;
      for (std::size_t r = 1; r < k; ++r) {
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < k; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(row);
      }
      Polynomial term = m[0][j] * det(minor);
      acc = j % 2 ? acc - term : acc + term;
    }
    return acc;
  };
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = (i == j ? Polynomial::x() : Polynomial()) - Polynomial::constant(a(i, j));
  return det(m);
}

/// Smallest k in [1, limit] with A^k == I by direct powering.
inline std::optional<unsigned> order_by_powering(const RationalMatrix& a, unsigned limit) {
  RationalMatrix p = a;
  for (unsigned k = 1; k <= limit; ++k) {
    if (p.is_identity()) return k;
    p = p * a;
  }
  return std::nullopt;
}

/// Smallest b >= 1 with 1 + d b^2 a perfect square, searching b <= limit.
inline std::optional<std::pair<Integer, Integer>> pell_brute_force(long d, long limit) {
  for (long b = 1; b <= limit; ++b) {
    Integer t = Integer(d) * b * b + 1;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    if (r * r == t) return std::make_pair(r, Integer(b));
  }
  return std::nullopt;
}

inline Rational random_rational(std::mt19937_64& rng, int num_bound, int den_bound) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound), den(1, den_bound);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline RationalMatrix random_rational_matrix(std::mt19937_64& rng, std::size_t n,
                                             int num_bound = 5, int den_bound = 3) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, num_bound, den_bound);
  return m;
}

inline IntegerMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                                           int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

/// Random unimodular matrix as a product of elementary transvections.
inline IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 8) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    IntegerMatrix e = IntegerMatrix::identity(n);
    e(i, j) = mult(rng);
    u = e * u;
  }
  return u;
}

/// All elements of the finite matrix group generated by gens, by closure.
inline std::vector<IntegerMatrix> matrix_group_closure(const std::vector<IntegerMatrix>& gens,
                                                       std::size_t n, std::size_t limit = 1000) {
  std::vector<IntegerMatrix> elems{IntegerMatrix::identity(n)};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      IntegerMatrix p = elems[i] * g;
      if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
        elems.push_back(p);
        if (elems.size() > limit) throw std::runtime_error("matrix group closure: group too large");
      }
    }
  }
  return elems;
}

/// H^1(G, Z^n) for a finite group G given by all its elements. The cocycles
/// form the saturation of the coboundaries inside Z^(|G| n), so H^1 is the
/// torsion of the cokernel of f -> (g f - f)_g.
inline std::vector<Integer> finite_group_h1_torsion(const std::vector<IntegerMatrix>& elems,
                                                     std::size_t n) {
  IntegerMatrix stacked(elems.size() * n, n);
  for (std::size_t e = 0; e < elems.size(); ++e)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        stacked(e * n + i, j) = elems[e](i, j) - (i == j ? 1 : 0);
  std::vector<Integer> out;
  for (const auto& f : invariant_factors(stacked))
    if (f > 1) out.push_back(f);
  return out;
}

}  // namespace polyarith::oracle
