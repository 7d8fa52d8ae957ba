#pragma once

// Critical L-values of eta(4z)^6 and the Deligne periods of the Fermat
// quartic motive M0.
//
//   L(M0(1), 0) = L(f, 1) = 2 pi    int_0^inf eta(4iz)^6 dz
//   L(M0(2), 0) = L(f, 2) = (2 pi)^2 int_0^inf eta(4iz)^6 z dz
//   c+(M0(1)) = 2 pi i theta3^4(-i e^(-pi/2)),  c+(M0(2)) = i (2 pi i)^2 theta3^4(-i e^(-pi/2))

#include <optional>
#include <string>
#include <vector>

#include "k3mirror/hyperfun.hpp"

namespace k3mirror::deligne {

using hyperfun::PrecComplex;
using hyperfun::PrecFloat;

class DeligneError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr int kMaxDigits = 2000;

enum class LMethod { termwise_gamma, quadrature };
const char* to_string(LMethod m);

struct LValueResult {
  int s = 0;
  PrecFloat value;
  LMethod method = LMethod::termwise_gamma;
  PrecFloat error_estimate;
  int terms = 0;  // q-expansion terms or quadrature evaluations
};

// Runs at `digits` (a WorkingPrecision guard is installed internally).
// Termwise: split at z = 1/4 and fold [0, 1/4] onto [1/4, inf) with
// eta(i/(4y))^6 = 64 y^3 eta(4iy)^6, leaving e^-x and (1 + x) e^-x factors.
LValueResult lvalue(int s, int digits, LMethod method = LMethod::termwise_gamma);

// |eta(i/(4y))^6 - 64 y^3 eta(4iy)^6| at the ambient precision.
PrecFloat fricke_residual(const PrecFloat& y);

struct DelignePeriodSet {
  PrecComplex theta4;         // theta3^4(-i e^(-pi/2))
  PrecComplex c_plus;         // i varpi0(2)^2
  PrecComplex c_minus;        // varpi0(2)^2
  PrecComplex c_plus_tate1;   // 2 pi i c_minus
  PrecComplex c_plus_tate2;   // (2 pi i)^2 c_plus
  // varpi0(2)^2 from ODE continuation and |that - theta4|.
  PrecComplex varpi0_sq_ode;
  PrecFloat crosscheck_residual;
};

inline constexpr int kCrosscheckDigits = 30;

// Throws DeligneError when the continuation value of varpi0(2)^2 misses
// theta3^4 by more than 10^-30.
DelignePeriodSet deligne_periods(int digits);

// Continued-fraction reconstruction: the first convergent p/q with
// q <= max_den and |x - p/q| <= tol.
std::optional<Rational> reconstruct_rational(const PrecFloat& x, const Integer& max_den,
                                             const PrecFloat& tol);

struct RatioCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RatioReport {
  int digits = 0;
  LValueResult L1, L2;
  DelignePeriodSet periods;
  Rational r1, r2;
  PrecFloat residual1, residual2;
  std::vector<RatioCheck> checks;
};

// Requires digits >= 40. Throws DeligneError if either ratio is not a
// rational with denominator <= 10^6 within 10^-(digits - 10).
RatioReport verify_ratios(int digits);

}  // namespace k3mirror::deligne
