#pragma once

#include <optional>
#include <vector>

#include "polyarith/matrix.hpp"

namespace polyarith {

/// Reduced row echelon form over Q together with its pivot columns.
struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

inline RowEchelon rref(RationalMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  Rational factor;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= factor * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

/// Rank via forward elimination only (cheaper than a full rref).
inline std::size_t rank(RationalMatrix m) {
  std::size_t r = 0;
  Rational factor;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      factor = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

/// Basis of {x : m x = 0}, one vector per free column, read off the rref.
inline std::vector<RatVector> nullspace(const RationalMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Maximal independent subset of the columns of m, in order (as column vectors).
inline std::vector<RatVector> column_space_basis(const RationalMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<RatVector> out;
  for (auto p : e.pivots) out.push_back(m.column(p));
  return out;
}

inline Rational determinant(RationalMatrix m) {
  if (!m.is_square()) throw PreconditionError("determinant of non-square matrix");
  Rational det = 1;
  Rational factor;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      factor = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

/// Fraction-free Bareiss elimination.
inline Integer determinant(IntegerMatrix m) {
  if (!m.is_square()) throw PreconditionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw PreconditionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
    throw PreconditionError("matrix is singular");
  return e.reduced.block(0, n, n, n);
}

/// Inverse of a unimodular integer matrix; throws if |det| != 1.
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  Integer det = determinant(m);
  if (abs(det) != 1) throw PreconditionError("matrix is not unimodular (det " + to_string(det) + ")");
  return to_integer(inverse(to_rational(m)));
}

/// Some solution x of a x = b, or nullopt when inconsistent.
inline std::optional<RatVector> solve(const RationalMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw PreconditionError("solve: right-hand side size mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols(), Rational(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.reduced(k, a.cols());
  return x;
}

inline RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace polyarith
