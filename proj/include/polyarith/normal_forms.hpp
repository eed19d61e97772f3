#pragma once

#include <optional>
#include <vector>

#include "polyarith/linear_algebra.hpp"

namespace polyarith {

/// Row Hermite normal form: transform * input == form.
struct HermiteDecomposition {
  IntegerMatrix form;
  IntegerMatrix transform;
  std::size_t rank = 0;
};

/// Smith normal form: left * input * right == diagonal.
struct SmithDecomposition {
  IntegerMatrix diagonal;
  IntegerMatrix left;
  IntegerMatrix right;

  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
      out.push_back(diagonal(i, i));
    return out;
  }
};

namespace detail {

// rows a, b  <-  [[s, t], [u, v]] * (rows a, b); the 2x2 block has det 1.
inline void combine_rows(IntegerMatrix& m, std::size_t a, std::size_t b,
                         const Integer& s, const Integer& t, const Integer& u,
                         const Integer& v) {
  Integer x, y;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    x = s * m(a, j) + t * m(b, j);
    y = u * m(a, j) + v * m(b, j);
    m(a, j) = x;
    m(b, j) = y;
  }
}

inline void combine_cols(IntegerMatrix& m, std::size_t a, std::size_t b,
                         const Integer& s, const Integer& t, const Integer& u,
                         const Integer& v) {
  Integer x, y;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    x = s * m(i, a) + t * m(i, b);
    y = u * m(i, a) + v * m(i, b);
    m(i, a) = x;
    m(i, b) = y;
  }
}

inline void add_row_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src,
                             const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) += k * m(src, j);
}

// Unimodular 2x2 [[s, t], [u, v]] taking (a, b) to (g, 0). When a divides b
// this is a plain elimination, which keeps the pivot in place.
inline void eliminating_pair(const Integer& a, const Integer& b, Integer& s, Integer& t,
                             Integer& u, Integer& v) {
  if (a != 0 && b % a == 0) {
    s = 1;
    t = 0;
    u = -(b / a);
    v = 1;
    return;
  }
  Integer g = xgcd(a, b, s, t);
  u = -b / g;
  v = a / g;
}

inline void negate_row(IntegerMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

inline void negate_col(IntegerMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

}  // namespace detail

/// Row-style Hermite normal form. Pivots are positive and every entry above a
/// pivot lies in [0, pivot).
inline HermiteDecomposition hnf(const IntegerMatrix& input) {
  IntegerMatrix h = input;
  IntegerMatrix u = IntegerMatrix::identity(input.rows());
  std::size_t r = 0;
  Integer s, t, q;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      Integer ua, ub;
      detail::eliminating_pair(h(r, c), h(i, c), s, t, ua, ub);
      detail::combine_rows(h, r, i, s, t, ua, ub);
      detail::combine_rows(u, r, i, s, t, ua, ub);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      detail::negate_row(h, r);
      detail::negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      q = floor_div(h(i, c), h(r, c));
      if (q == 0) continue;
      detail::add_row_multiple(h, i, r, -q);
      detail::add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

inline SmithDecomposition snf(const IntegerMatrix& input) {
  IntegerMatrix d = input;
  IntegerMatrix left = IntegerMatrix::identity(input.rows());
  IntegerMatrix right = IntegerMatrix::identity(input.cols());
  const std::size_t m = d.rows(), n = d.cols();
  Integer s, t;

  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    // Bring the smallest nonzero entry of the trailing block to (k, k).
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    d.swap_rows(k, best->first);
    left.swap_rows(k, best->first);
    d.swap_cols(k, best->second);
    right.swap_cols(k, best->second);

    for (;;) {
      bool changed = false;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (d(i, k) == 0) continue;
        Integer ua, ub;
        detail::eliminating_pair(d(k, k), d(i, k), s, t, ua, ub);
        detail::combine_rows(d, k, i, s, t, ua, ub);
        detail::combine_rows(left, k, i, s, t, ua, ub);
        changed = true;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (d(k, j) == 0) continue;
        Integer ua, ub;
        detail::eliminating_pair(d(k, k), d(k, j), s, t, ua, ub);
        detail::combine_cols(d, k, j, s, t, ua, ub);
        detail::combine_cols(right, k, j, s, t, ua, ub);
        changed = true;
      }
      bool column_clear = true;
      for (std::size_t i = k + 1; i < m; ++i)
        if (d(i, k) != 0) column_clear = false;
      if (!column_clear) continue;
      // Divisibility: fold an offending row into row k and go again.
      std::optional<std::size_t> offender;
      for (std::size_t i = k + 1; i < m && !offender; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (d(i, j) % d(k, k) != 0) {
            offender = i;
            break;
          }
      if (offender) {
        detail::add_row_multiple(d, k, *offender, 1);
        detail::add_row_multiple(left, k, *offender, 1);
        continue;
      }
      if (!changed) break;
    }
    if (d(k, k) < 0) {
      detail::negate_row(d, k);
      detail::negate_row(left, k);
    }
  }
  return {std::move(d), std::move(left), std::move(right)};
}

/// Rows of an integer basis of the lattice spanned by the rows of gens.
inline IntegerMatrix lattice_basis(const IntegerMatrix& gens) {
  HermiteDecomposition h = hnf(gens);
  return h.form.block(0, 0, h.rank, gens.cols());
}

/// Z-basis (as rows) of the saturated kernel {x in Z^cols : m x = 0}.
inline IntegerMatrix kernel_lattice(const IntegerMatrix& m) {
  HermiteDecomposition h = hnf(m.transpose());
  const std::size_t dim = m.cols() - h.rank;
  IntegerMatrix k = h.transform.block(h.rank, 0, dim, m.cols());
  return lattice_basis(k);
}

inline std::vector<IntVector> rows_of(const IntegerMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row_vector(i));
  return out;
}

/// Integer coordinates c with sum_i c_i * basis.row(i) == v, if they exist.
/// basis must have independent rows.
inline std::optional<IntVector> lattice_coordinates(const IntegerMatrix& basis,
                                                    const IntVector& v) {
  auto sol = solve(to_rational(basis.transpose()), to_rational(v));
  if (!sol) return std::nullopt;
  IntVector c(sol->size());
  for (std::size_t i = 0; i < sol->size(); ++i) {
    if (!is_integral((*sol)[i])) return std::nullopt;
    c[i] = (*sol)[i].get_num();
  }
  return c;
}

/// True when the row lattice is saturated in Z^cols (all invariant factors 1).
inline bool is_saturated(const IntegerMatrix& basis) {
  for (const auto& f : snf(basis).invariant_factors())
    if (f != 1) return false;
  return true;
}

}  // namespace polyarith
