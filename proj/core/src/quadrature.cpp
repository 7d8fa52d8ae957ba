#include "k3mirror/quadrature.hpp"

#include <cmath>

namespace k3mirror::quadrature {

namespace bmp = boost::multiprecision;

QuadratureResult tanh_sinh(const Integrand& f, const PrecFloat& a, const PrecFloat& b,
                           int max_level) {
  if (!(b > a)) throw hyperfun::NumericError("tanh_sinh: need a < b");
  const int digits = hyperfun::WorkingPrecision::digits();
  const PrecFloat half_pi = hyperfun::pi() / 2;
  const PrecFloat width = b - a;
  // Nodes beyond |t| = T carry weights below 10^-(D + 30).
  const double target = (digits + 30) * std::log(10.0) / 2 + 5;
  const double T = std::asinh(target / (M_PI / 2));

  QuadratureResult res;
  PrecFloat sum = 0;
  auto add_node = [&](const PrecFloat& t) {
    const PrecFloat u = half_pi * bmp::sinh(t);
    const PrecFloat e = bmp::exp(2 * u);
    const PrecFloat one_e = 1 + e;
    const PrecFloat x = a + width * e / one_e;
    const PrecFloat bx = width / one_e;
    const PrecFloat w = width * 2 * e / (one_e * one_e) * half_pi * bmp::cosh(t);
    ++res.evaluations;
    if (w == 0) return;
    sum += w * f(x, bx);
  };

  const long j0 = static_cast<long>(std::ceil(T));
  for (long j = -j0; j <= j0; ++j) add_node(PrecFloat(j));
  PrecFloat previous = sum;
  res.value = sum;
  const PrecFloat tol = hyperfun::pow10(digits + 5);
  for (int level = 1; level <= max_level; ++level) {
    const PrecFloat h = bmp::pow(PrecFloat(2), -level);
    const long jmax = static_cast<long>(std::ceil(T * std::ldexp(1.0, level)));
    for (long j = -jmax; j <= jmax; j += 1) {
      if (j % 2 == 0) continue;
      add_node(h * j);
    }
    const PrecFloat current = sum * h;
    res.levels = level;
    res.error_estimate = bmp::abs(current - previous);
    res.value = current;
    if (res.error_estimate <= tol * (1 + bmp::abs(current)) && level >= 3) return res;
    previous = current;
  }
  throw hyperfun::NumericError("tanh_sinh: no convergence within the level budget");
}

}  // namespace k3mirror::quadrature
