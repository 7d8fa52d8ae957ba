#pragma once

// Double-exponential (tanh-sinh) quadrature at working precision.

#include <functional>

#include "k3mirror/hyperfun.hpp"

namespace k3mirror::quadrature {

using hyperfun::PrecFloat;

struct QuadratureResult {
  PrecFloat value;
  PrecFloat error_estimate;
  int levels = 0;
  long evaluations = 0;
};

// The integrand receives the node x and b - x, the latter computed without
// cancellation so that endpoint singularities at b can be handled.
using Integrand = std::function<PrecFloat(const PrecFloat& x, const PrecFloat& b_minus_x)>;

// Integral over [a, b], halving the step until two successive levels agree
// to 10^-(D + 5) relative to the value.
QuadratureResult tanh_sinh(const Integrand& f, const PrecFloat& a, const PrecFloat& b,
                           int max_level = 14);

}  // namespace k3mirror::quadrature
