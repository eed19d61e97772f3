#pragma once

#include <optional>
#include <vector>

#include "polyarith/linear_algebra.hpp"
#include "polyarith/polynomial.hpp"

namespace polyarith {

/// Multiplicative Jordan decomposition A = S * U with S semisimple, U unipotent,
/// S * U == U * S, both polynomials in A.
struct JordanPair {
  RationalMatrix semisimple;
  RationalMatrix unipotent;
};

struct OrderVerdict {
  bool finite = false;
  Integer order = 0;  // meaningful only when finite
};

namespace detail {
inline void require_square(const RationalMatrix& a, const char* what) {
  if (!a.is_square()) throw PreconditionError(std::string(what) + ": matrix is not square");
}
}  // namespace detail

/// Characteristic polynomial det(xI - A) via Faddeev-LeVerrier.
inline Polynomial char_poly(const RationalMatrix& a) {
  detail::require_square(a, "char_poly");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RationalMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    c[n - k] = -(a * m).trace() / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

/// Minimal polynomial: first linear dependency among I, A, A^2, ...
inline Polynomial min_poly(const RationalMatrix& a) {
  detail::require_square(a, "min_poly");
  const std::size_t n = a.rows();
  if (n == 0) return Polynomial::constant(1);
  std::vector<RatVector> powers;
  RationalMatrix p = RationalMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    powers.push_back(p.entries());
    RationalMatrix cols = RationalMatrix::from_columns(powers);
    auto kernel = nullspace(cols);
    if (!kernel.empty()) {
      // First dependency: the kernel is one-dimensional with nonzero top entry.
      return Polynomial(kernel.front()).monic();
    }
    p = p * a;
  }
  throw ConsistencyError("min_poly: no dependency found up to degree n");
}

inline bool is_nilpotent(const RationalMatrix& n) {
  if (!n.is_square()) return false;
  return power(n, n.rows()).is_zero();
}

inline bool is_unipotent(const RationalMatrix& u) {
  if (!u.is_square()) return false;
  return is_nilpotent(u - RationalMatrix::identity(u.rows()));
}

/// Squarefree minimal polynomial, i.e. diagonalizable over an algebraic closure.
inline bool is_semisimple(const RationalMatrix& a) { return is_squarefree(min_poly(a)); }

inline unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

inline int moebius(unsigned long m) {
  int mu = 1;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    mu = -mu;
  }
  if (m > 1) mu = -mu;
  return mu;
}

/// m-th cyclotomic polynomial, prod_{d | m} (x^d - 1)^{mu(m/d)}.
inline Polynomial cyclotomic(unsigned long m) {
  Polynomial num = Polynomial::constant(1), den = Polynomial::constant(1);
  for (unsigned long d = 1; d <= m; ++d) {
    if (m % d) continue;
    int mu = moebius(m / d);
    if (mu == 1) num = num * Polynomial::x_pow_minus_one(d);
    if (mu == -1) den = den * Polynomial::x_pow_minus_one(d);
  }
  return num / den;
}

/// Finite order iff the minimal polynomial is a product of distinct cyclotomic
/// factors; the order is then the lcm of their indices.
inline OrderVerdict is_finite_order(const RationalMatrix& a) {
  detail::require_square(a, "is_finite_order");
  if (determinant(a) == 0) throw PreconditionError("is_finite_order: matrix is singular");
  Polynomial rest = min_poly(a);
  if (!is_squarefree(rest)) return {};
  const unsigned long deg = static_cast<unsigned long>(rest.degree());
  Integer order = 1;
  for (unsigned long m = 1; m <= 2 * deg * deg + 2 && rest.degree() > 0; ++m) {
    if (euler_phi(m) > static_cast<unsigned long>(rest.degree())) continue;
    Polynomial phi = cyclotomic(m);
    auto [q, r] = divmod(rest, phi);
    if (!r.is_zero()) continue;
    rest = q.monic();
    order = lcm(order, Integer(m));
  }
  if (rest.degree() > 0) return {};
  return {true, order};
}

/// Additive part via Newton iteration on the squarefree part f of the minimal
/// polynomial: S <- S - f(S) f'(S)^{-1}; then U = S^{-1} A.
inline JordanPair jordan_chevalley(const RationalMatrix& a) {
  detail::require_square(a, "jordan_chevalley");
  if (determinant(a) == 0) throw PreconditionError("jordan_chevalley: matrix is singular");
  const std::size_t n = a.rows();
  Polynomial f = squarefree_part(min_poly(a));
  Polynomial df = f.derivative();
  RationalMatrix s = a;
  for (std::size_t iter = 0;; ++iter) {
    RationalMatrix fs = f.evaluate(s);
    if (fs.is_zero()) break;
    if (iter > n + 2) throw ConsistencyError("jordan_chevalley: Newton iteration did not terminate");
    s = s - fs * inverse(df.evaluate(s));
  }
  RationalMatrix u = inverse(s) * a;
  return {std::move(s), std::move(u)};
}

/// log U = sum_{k>=1} (-1)^{k+1} (U - I)^k / k, a finite sum.
inline RationalMatrix nilpotent_log(const RationalMatrix& u) {
  if (!is_unipotent(u)) throw PreconditionError("nilpotent_log: matrix is not unipotent");
  const std::size_t n = u.rows();
  RationalMatrix x = u - RationalMatrix::identity(n);
  RationalMatrix term = x;
  RationalMatrix out(n, n);
  for (long k = 1; !term.is_zero(); ++k) {
    Rational coeff(k % 2 ? 1 : -1, k);
    coeff.canonicalize();
    out += term * coeff;
    term = term * x;
  }
  return out;
}

/// exp N = sum_k N^k / k!, a finite sum.
inline RationalMatrix nilpotent_exp(const RationalMatrix& nmat) {
  if (!is_nilpotent(nmat)) throw PreconditionError("nilpotent_exp: matrix is not nilpotent");
  const std::size_t n = nmat.rows();
  RationalMatrix out = RationalMatrix::identity(n);
  RationalMatrix term = RationalMatrix::identity(n);
  for (long k = 1;; ++k) {
    term = term * nmat * Rational(1, k);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

}  // namespace polyarith
