#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyarith/matrix.hpp"

namespace polyarith {

/// Univariate polynomial over Q, coefficients stored lowest degree first.
/// The zero polynomial has no coefficients.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Rational& a) { return Polynomial({a}); }
  static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }
  /// x^k - 1
  static Polynomial x_pow_minus_one(std::size_t k) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[0] = -1;
    c[k] += 1;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  Polynomial monic() const {
    if (is_zero()) return *this;
    Polynomial p = *this;
    Rational inv = 1 / leading();
    for (auto& a : p.c_) a *= inv;
    return p;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return Polynomial(std::move(d));
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Horner evaluation at a square matrix.
  RationalMatrix evaluate(const RationalMatrix& a) const {
    if (!a.is_square()) throw PreconditionError("polynomial evaluated at non-square matrix");
    const std::size_t n = a.rows();
    RationalMatrix acc(n, n);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * a;
      for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Quotient and remainder; throws on division by zero.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<Rational> r = a.c_;
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1, Rational(0));
    Rational lead_inv = 1 / b.leading();
    for (std::size_t k = q.size(); k-- > 0;) {
      Rational f = r[k + b.c_.size() - 1] * lead_inv;
      q[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= f * b.c_[j];
    }
    r.resize(b.c_.size() - 1);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  bool divides(const Polynomial& other) const { return (other % *this).is_zero(); }

  /// Human-readable form in the variable x, e.g. "x^2 - 4*x + 1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& a = c_[k];
      if (a == 0) continue;
      bool neg = a < 0;
      Rational mag = neg ? Rational(-a) : a;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      bool show_coeff = k == 0 || mag != 1;
      if (show_coeff) out += polyarith::to_string(mag);
      if (k > 0) {
        if (show_coeff) out += "*";
        out += "x";
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const Polynomial& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

/// Product of the distinct irreducible factors, made monic.
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return Polynomial::constant(1);
  return (p / gcd(p, p.derivative())).monic();
}

/// x^k modulo m, by repeated squaring.
inline Polynomial x_power_mod(unsigned long long k, const Polynomial& m) {
  Polynomial result = Polynomial::constant(1) % m;
  Polynomial base = Polynomial::x() % m;
  while (k) {
    if (k & 1ULL) result = (result * base) % m;
    k >>= 1ULL;
    if (k) base = (base * base) % m;
  }
  return result;
}

}  // namespace polyarith
