#pragma once

#include "polyarith/matrix.hpp"

namespace polyarith {

/// The order Z + Z*sqrt(d) in the real quadratic field Q(sqrt(d)), d > 1 not a
/// perfect square. d need not be squarefree.
class QuadOrder {
public:
  explicit QuadOrder(Integer d) : d_(std::move(d)) {
    if (d_ < 2) throw PreconditionError("quadratic order: d must be at least 2");
    if (mpz_perfect_square_p(d_.get_mpz_t()))
      throw PreconditionError("quadratic order: d = " + to_string(d_) + " is a perfect square");
  }
  const Integer& d() const { return d_; }
  friend bool operator==(const QuadOrder& a, const QuadOrder& b) { return a.d_ == b.d_; }

private:
  Integer d_;
};

/// x + y*omega with omega = sqrt(d).
struct QuadElem {
  Integer x;
  Integer y;
  QuadOrder parent;

  QuadElem(Integer x_, Integer y_, QuadOrder parent_)
      : x(std::move(x_)), y(std::move(y_)), parent(std::move(parent_)) {}

  static QuadElem omega(const QuadOrder& o) { return {0, 1, o}; }

  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.parent == b.parent && a.x == b.x && a.y == b.y;
  }
  friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    require_same(a, b);
    return {a.x + b.x, a.y + b.y, a.parent};
  }
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b) {
    require_same(a, b);
    return {a.x - b.x, a.y - b.y, a.parent};
  }
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    require_same(a, b);
    const Integer& d = a.parent.d();
    return {a.x * b.x + d * a.y * b.y, a.x * b.y + a.y * b.x, a.parent};
  }

private:
  static void require_same(const QuadElem& a, const QuadElem& b) {
    if (!(a.parent == b.parent)) throw PreconditionError("quadratic elements from different orders");
  }
};

/// Galois conjugate x - y*omega.
inline QuadElem conj(const QuadElem& e) { return {e.x, -e.y, e.parent}; }

/// e * conj(e) = x^2 - d y^2.
inline Integer norm(const QuadElem& e) { return e.x * e.x - e.parent.d() * e.y * e.y; }

/// Multiplication by e on the basis (1, omega); columns are images.
inline IntegerMatrix mult_matrix(const QuadElem& e) {
  return IntegerMatrix{{e.x, e.y * e.parent.d()}, {e.y, e.x}};
}

/// Matrix of the Galois conjugation on the basis (1, omega).
inline IntegerMatrix galois_matrix() { return IntegerMatrix{{1, 0}, {0, -1}}; }

/// Fundamental solution of a^2 - d b^2 = 1 with b >= 1 minimal, from the
/// convergents of the continued fraction of sqrt(d).
inline QuadElem fundamental_pell(const QuadOrder& order) {
  const Integer& d = order.d();
  Integer a0;
  mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
  Integer m = 0, den = 1, a = a0;
  Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  for (;;) {
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    if (h * h - d * k * k == 1) return {h, k, order};
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
  }
}

inline QuadElem fundamental_pell(long d) { return fundamental_pell(QuadOrder(Integer(d))); }

}  // namespace polyarith
