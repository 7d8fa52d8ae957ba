#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's algorithms beyond the numeric types.

#include <cstdint>
#include <vector>

#include "k3mirror/hyperfun.hpp"
#include "k3mirror/qseries.hpp"

namespace k3mirror::oracle {

using hyperfun::PrecComplex;
using hyperfun::PrecFloat;

// Truncated polynomial product, coefficients up to x^(n-1).
inline std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                     std::size_t n) {
  std::vector<Integer> c(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// prod_{k=1}^{K} (1 - x^k)^e by repeated multiplication, coefficients up to
// x^(n-1), with K = n so that the product is exact to that order.
inline std::vector<Integer> euler_product_power(int e, std::size_t n) {
  std::vector<Integer> acc(n, 0);
  acc[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Integer> factor(n, 0);
    factor[0] = 1;
    factor[k] = -1;
    for (int r = 0; r < e; ++r) acc = poly_mul(acc, factor, n);
  }
  return acc;
}

// Long division 1 / a for a[0] = 1.
inline std::vector<Integer> long_division_reciprocal(const std::vector<Integer>& a, std::size_t n) {
  std::vector<Integer> b(n, 0);
  b[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    Integer s = 0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * b[k - j];
    b[k] = -s;
  }
  return b;
}

// Rational polynomial helpers for fixed-point iterations.
inline std::vector<Rational> rmul(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                  std::size_t n) {
  std::vector<Rational> c(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// Complex AGM with the optimal sign choice; analytic for Re(b / a) > 0.
inline PrecComplex agm(PrecComplex a, PrecComplex b) {
  const PrecFloat eps = hyperfun::pow10(hyperfun::WorkingPrecision::digits() + 5);
  for (int i = 0; i < 1000; ++i) {
    if (hyperfun::abs(a - b) <= eps * hyperfun::abs(a)) break;
    const PrecComplex an = (a + b) / PrecFloat(2);
    PrecComplex bn = hyperfun::sqrt(a * b);
    if (hyperfun::abs(an - bn) > hyperfun::abs(an + bn)) bn = -bn;
    a = an;
    b = bn;
  }
  return a;
}

// Projective points of y^2 = x(x-1)(x-l) over F_p, by enumerating all pairs.
inline long legendre_points(long l, long p) {
  long count = 1;  // point at infinity
  for (long x = 0; x < p; ++x) {
    const long rhs = ((x * ((x - 1 + p) % p)) % p * ((x - l % p + p) % p)) % p;
    for (long y = 0; y < p; ++y) {
      if (y * y % p == rhs) ++count;
    }
  }
  return count;
}

// Projective points on x0^4 + x1^4 + x2^4 + x3^4 = 0 over F_p: affine cone
// solutions minus the origin, divided by p - 1.
inline long fermat_points_cone(long p) {
  std::vector<long> f(static_cast<std::size_t>(p));
  for (long x = 0; x < p; ++x) f[x] = (x * x % p) * (x * x % p) % p;
  std::vector<long> pair_sums(static_cast<std::size_t>(p), 0);
  for (long a = 0; a < p; ++a) {
    for (long b = 0; b < p; ++b) ++pair_sums[(f[a] + f[b]) % p];
  }
  long cone = 0;
  for (long s = 0; s < p; ++s) cone += pair_sums[s] * pair_sums[(p - s) % p];
  return (cone - 1) / (p - 1);
}

}  // namespace k3mirror::oracle
