#pragma once

// Exact-rational truncated power series.
//
// A RationalSeries stores
//
//     q^offset * (c_0 + c_1 q + ... + c_{N-1} q^{N-1}) + O(q^{offset + N})
//
// where N is the truncation order. Coefficients at shifts >= N are unknown,
// not zero, and every operation propagates the tightest order it can prove.
// The offset is an exact rational so that the q^(1/24) prefactor of eta
// products can be carried without general Puiseux machinery.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3mirror {

using Integer = mpz_class;
using Rational = mpq_class;

}  // namespace k3mirror

namespace k3mirror::qseries {

class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class DerivativeMode {
  ordinary,  // d/dq
  theta,     // q d/dq, acts diagonally on exponents
};

class RationalSeries {
 public:
  RationalSeries() = default;

  // `coeffs` is padded with zeros (or cut) to exactly `order` entries.
  RationalSeries(std::vector<Rational> coeffs, int order, Rational offset = 0);

  static RationalSeries constant(const Rational& c, int order);
  // The series q (offset 0).
  static RationalSeries variable(int order);
  static RationalSeries monomial(const Rational& c, int shift, int order);

  const Rational& offset() const noexcept { return offset_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()); }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  // Coefficient at the given shift; throws if the shift is not known.
  const Rational& operator[](int shift) const;
  // Coefficient of q^exponent, where exponent = offset + shift.
  Rational coefficient_of(const Rational& exponent) const;

  // Index of the first nonzero known coefficient, or order() if none.
  int valuation() const noexcept;
  bool is_zero() const noexcept { return valuation() == order(); }

  RationalSeries truncated(int order) const;
  // Moves leading zero coefficients into the offset.
  RationalSeries normalized() const;
  // Re-expresses the series with a smaller offset (difference must be a
  // nonnegative integer); the padded leading coefficients are exact zeros.
  RationalSeries with_offset(const Rational& offset) const;

  RationalSeries operator-() const;
  RationalSeries& operator*=(const Rational& c);

  friend bool operator==(const RationalSeries& a, const RationalSeries& b);

  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
  Rational offset_{0};
};

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator-(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator/(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator*(const Rational& c, RationalSeries a);
RationalSeries operator*(RationalSeries a, const Rational& c);
RationalSeries operator+(const RationalSeries& a, const Rational& c);
RationalSeries operator+(const Rational& c, const RationalSeries& a);
RationalSeries operator-(const RationalSeries& a, const Rational& c);
RationalSeries operator-(const Rational& c, const RationalSeries& a);

// Requires a nonzero coefficient at shift 0; normalize first if needed.
RationalSeries reciprocal(const RationalSeries& a);
RationalSeries derivative(const RationalSeries& a,
                          DerivativeMode mode = DerivativeMode::ordinary);
RationalSeries pow(const RationalSeries& a, int exponent);
// Rational power of a series whose leading coefficient is 1.
RationalSeries pow(const RationalSeries& a, const Rational& exponent);

RationalSeries exp(const RationalSeries& a);
RationalSeries log(const RationalSeries& a);

// outer(inner(q)); inner must have positive valuation.
RationalSeries compose(const RationalSeries& outer, const RationalSeries& inner);
// Compositional inverse of a series a = a_1 q + a_2 q^2 + ..., a_1 != 0.
RationalSeries revert(const RationalSeries& a);

// q -> q^k.
RationalSeries substitute_power(const RationalSeries& a, int k);
// Inverse of substitute_power: keeps the exponents divisible by k and maps
// q^k -> q. Throws if a coefficient off that lattice is nonzero.
RationalSeries decimate(const RationalSeries& a, int k);

// q^(m e / 24) * prod_{n >= 1} (1 - q^(m n))^e, known to `order` shifts.
RationalSeries eta_product(int m, int e, int order);

}  // namespace k3mirror::qseries
