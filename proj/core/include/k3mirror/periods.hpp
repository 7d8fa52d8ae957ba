#pragma once

// Periods of the Legendre family and the Dwork family, the quadratic change
// of variables between them, and the modular lambda function.
//
// Legendre family y^2 = x(x-1)(x-lambda):
//   varpi0 = 2F1(1/2, 1/2; 1; lambda)
//   varpi1 = (varpi0 log(lambda) + h(lambda)) / (pi i) - log(16) varpi0 / (pi i)
//   tau    = varpi1 / varpi0,  q = exp(pi i tau) = (lambda / 16) exp(h / varpi0)
//
// Dwork family, t = psi^-4:
//   W0 = sum (4n)! / (n!)^4 (4 psi)^-4n, W1, W2 with the polygamma brackets
//   realized as harmonic sums.
//
// Quadratic map t = lambda^2 (1 - lambda) (1 - lambda/2)^-4; on the small-lambda
// branch W0 = (1 - lambda/2) varpi0^2 and W1 = (1 - lambda/2) varpi0 varpi1.

#include <vector>

#include "k3mirror/hyperfun.hpp"
#include "k3mirror/qseries.hpp"

namespace k3mirror::periods {

using hyperfun::PrecComplex;
using hyperfun::PrecFloat;
using qseries::RationalSeries;

class PeriodsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kLegendreSeriesRadius = 0.9;

struct LegendrePeriods {
  PrecComplex lambda;
  PrecComplex varpi0;
  PrecComplex varpi1;
  PrecComplex tau;
};

// Periods together with their first lambda-derivatives; the initial data
// for analytic continuation.
struct LegendreJet {
  PrecComplex lambda;
  PrecComplex varpi0;
  PrecComplex dvarpi0;
  PrecComplex varpi1;
  PrecComplex dvarpi1;
};

LegendrePeriods legendre_periods(const PrecComplex& lambda);
LegendreJet legendre_jet(const PrecComplex& lambda);

RationalSeries varpi0_series(int order);
// Regular part of the logarithmic solution, from the Picard-Fuchs recurrence.
RationalSeries h_series(int order);
// q(lambda) = (lambda/16) exp(h/varpi0).
RationalSeries q_of_lambda_series(int order);
// lambda(q) = 16q - 128q^2 + ..., the reversion of q_of_lambda_series.
RationalSeries lambda_q_series(int order);

struct QuadMapResult {
  PrecComplex t;
  PrecComplex psi;
  bool t_infinite = false;    // lambda = 2
  bool psi_infinite = false;  // lambda = 0 or 1
};

QuadMapResult quad_map(const PrecComplex& lambda);
// Small-lambda branch preimage of psi under quad_map, by Newton iteration
// from lambda ~ psi^-2.
PrecComplex lambda_from_psi(const PrecComplex& psi);

struct DworkPeriods {
  PrecComplex psi;
  PrecComplex t;
  PrecComplex W0;
  PrecComplex W1;
  PrecComplex W2;
  PrecComplex tau;
};

inline constexpr double kDworkMaxAbsT = 1.0 / 1.2;

// Requires |psi^-4| <= 1/1.2.
DworkPeriods dwork_periods(const PrecComplex& psi);

// Exact series in t behind W0, W1, W2:
//   w0 = sum c_n t^n,  s1 = sum c_n B_n t^n,
//   s2 = sum c_n (B_n^2 - H2_{4n} + H2_n / 4) t^n
// with c_n = (4n)!/(n!)^4/256^n, B_n = H_{4n} - H_n. The log solutions of
// the order-3 operator are w0 log t + 4 s1 and w0 log^2 t + 8 s1 log t + 16 s2.
RationalSeries dwork_w0_series(int order);
RationalSeries dwork_s1_series(int order);
RationalSeries dwork_s2_series(int order);

struct PiTriple {
  PrecComplex lambda;
  PrecComplex Pi0;
  PrecComplex Pi1;
  PrecComplex Pi2;
};

PiTriple pi_triple(const PrecComplex& lambda);

// q^-1 sum chi(Hilb^n) q^n = 1/eta^24 in the nome exp(2 pi i tau).
RationalSeries bps_series(int order);

// Theta constants as exact q-series in q = exp(pi i tau); theta_2 carries
// its q^(1/4) prefactor in the offset.
RationalSeries theta2_series(int order);
RationalSeries theta3_series(int order);
RationalSeries theta4_series(int order);

// |lambda| <= 0.3 sample grid used by the mirror-map comparison: `count`
// points on concentric rings, kept off the real axis.
std::vector<PrecComplex> mirror_grid(int count);

}  // namespace k3mirror::periods
