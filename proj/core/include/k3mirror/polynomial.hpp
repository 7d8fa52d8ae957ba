#pragma once

// Dense univariate polynomials over Q, lowest degree first.

#include <string>
#include <utility>
#include <vector>

#include "k3mirror/hyperfun.hpp"

namespace k3mirror::pfode {

using hyperfun::PrecComplex;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& c);  // NOLINT(implicit): constants
  static Polynomial x();
  // prod (x - r) over the given rational roots, times `scale`.
  static Polynomial from_roots(const std::vector<Rational>& roots, const Rational& scale = 1);

  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  Rational coeff(int k) const;
  const Rational& leading() const;

  Polynomial derivative() const;
  Rational operator()(const Rational& x) const;
  PrecComplex operator()(const PrecComplex& x) const;
  // Coefficients of p(x0 + s) in powers of s.
  std::vector<PrecComplex> taylor_shift(const PrecComplex& x0) const;

  Polynomial monic() const;
  // Integer coefficients with gcd 1 and positive leading coefficient.
  Polynomial primitive() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

inline Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
inline Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
inline Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }

// Quotient and remainder; throws on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Throws if b does not divide a.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial squarefree_part(const Polynomial& p);

// Distinct complex roots at working precision (Aberth iteration on the
// squarefree part, then Newton polishing), sorted by (real, imag).
std::vector<PrecComplex> roots(const Polynomial& p);

}  // namespace k3mirror::pfode
