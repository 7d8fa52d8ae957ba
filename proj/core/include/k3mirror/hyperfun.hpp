#pragma once

// High-precision scalars and the special functions built on them.
//
// All numeric routines run at the ambient working precision, set with a
// WorkingPrecision guard. Internally a few guard digits are carried on top of
// the requested D digits so that reported values are good to roughly D digits.
//
// Nome conventions: q = exp(pi i tau) is the theta nome; the modular-form
// nome exp(2 pi i tau) = q^2 is written `nome2` or `qq` wherever it appears.

#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "k3mirror/qseries.hpp"

namespace k3mirror::hyperfun {

using PrecFloat = boost::multiprecision::mpfr_float;

class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// RAII guard for the working precision (decimal digits). Not thread-safe:
// MPFR default precision is process state in the Boost version we target.
class WorkingPrecision {
 public:
  static constexpr int kMinDigits = 30;
  static constexpr int kDefaultDigits = 120;
  static constexpr int kGuardDigits = 20;

  explicit WorkingPrecision(int digits = kDefaultDigits);
  ~WorkingPrecision();
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

  // Target digits D of the innermost active guard (default when none).
  static int digits();

 private:
  int saved_digits_;
  unsigned saved_mpfr_digits_;
};

// 10^(-exponent) at working precision.
PrecFloat pow10(int exponent);
// 10^-(D + kGuardDigits / 2): truncation threshold for series and sums.
PrecFloat summation_epsilon();

PrecFloat to_prec(const Rational& r);
PrecFloat parse_decimal(std::string_view text);
PrecFloat pi();
// Scientific notation with `digits` significant digits (deterministic).
std::string to_decimal_string(const PrecFloat& x, int digits);

class PrecComplex {
 public:
  PrecComplex() : re_(0), im_(0) {}
  PrecComplex(PrecFloat re) : re_(std::move(re)), im_(0) {}  // NOLINT(implicit)
  PrecComplex(PrecFloat re, PrecFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  PrecComplex(int re) : re_(re), im_(0) {}  // NOLINT(implicit)
  PrecComplex(const Rational& re) : re_(to_prec(re)), im_(0) {}  // NOLINT(implicit)

  static PrecComplex parse(std::string_view re, std::string_view im);
  static PrecComplex i() { return {PrecFloat(0), PrecFloat(1)}; }

  const PrecFloat& real() const noexcept { return re_; }
  const PrecFloat& imag() const noexcept { return im_; }

  PrecComplex& operator+=(const PrecComplex& o);
  PrecComplex& operator-=(const PrecComplex& o);
  PrecComplex& operator*=(const PrecComplex& o);
  PrecComplex& operator/=(const PrecComplex& o);
  PrecComplex& operator*=(const PrecFloat& s);
  PrecComplex& operator/=(const PrecFloat& s);
  PrecComplex operator-() const { return {-re_, -im_}; }

 private:
  PrecFloat re_;
  PrecFloat im_;
};

inline PrecComplex operator+(PrecComplex a, const PrecComplex& b) { return a += b; }
inline PrecComplex operator-(PrecComplex a, const PrecComplex& b) { return a -= b; }
inline PrecComplex operator*(PrecComplex a, const PrecComplex& b) { return a *= b; }
inline PrecComplex operator/(PrecComplex a, const PrecComplex& b) { return a /= b; }
inline PrecComplex operator*(PrecComplex a, const PrecFloat& s) { return a *= s; }
inline PrecComplex operator*(const PrecFloat& s, PrecComplex a) { return a *= s; }
inline PrecComplex operator/(PrecComplex a, const PrecFloat& s) { return a /= s; }

PrecFloat abs(const PrecComplex& z);
PrecFloat norm(const PrecComplex& z);  // |z|^2
PrecFloat arg(const PrecComplex& z);
PrecComplex conj(const PrecComplex& z);
PrecComplex exp(const PrecComplex& z);
// Principal branch, arg in (-pi, pi].
PrecComplex log(const PrecComplex& z);
PrecComplex sqrt(const PrecComplex& z);
// Principal branch: exp(e log z). Zero maps to zero for e > 0.
PrecComplex pow(const PrecComplex& z, const Rational& e);
PrecComplex pow(const PrecComplex& z, int n);

std::string to_string(const PrecComplex& z, int digits);

// ---------------------------------------------------------------------------

// Exact coefficients of 2F1(a, b; c; x) known to `order` terms.
qseries::RationalSeries hyp2f1_series(const Rational& a, const Rational& b,
                                      const Rational& c, int order);

// Direct series evaluation, |z| <= 0.9, with a rigorous geometric tail bound.
PrecComplex hyp2f1(const Rational& a, const Rational& b, const Rational& c,
                   const PrecComplex& z);
inline constexpr double kHyp2f1Radius = 0.9;

// theta_2, theta_3, theta_4 at zero argument as functions of the nome
// q = exp(pi i tau), |q| < 1. theta_2 uses the principal q^(1/4).
PrecComplex theta_const(int kind, const PrecComplex& q);
// Same, parametrized by tau so that q^(1/4) = exp(pi i tau / 4) is unambiguous.
PrecComplex theta_const_tau(int kind, const PrecComplex& tau);

// Dedekind eta: exp(2 pi i tau / 24) prod_{n>=1} (1 - exp(2 pi i n tau)).
PrecComplex eta_value(const PrecComplex& tau);

// (H_n, H_n^(2)) with H_n = sum_{k<=n} 1/k and H_n^(2) = sum 1/k^2.
std::pair<Rational, Rational> harmonic_sums(int n);

// Numeric value of the known part of a series at q (principal q^offset).
PrecComplex evaluate(const qseries::RationalSeries& s, const PrecComplex& q);

}  // namespace k3mirror::hyperfun
