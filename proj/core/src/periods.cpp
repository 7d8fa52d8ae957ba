#include "k3mirror/periods.hpp"

#include <cmath>

namespace k3mirror::periods {

using hyperfun::summation_epsilon;
using hyperfun::to_prec;

namespace {

void require_positive_order(int order, const char* what) {
  if (order < 1) throw PeriodsError(std::string(what) + ": order must be positive");
}

bool is_zero(const PrecComplex& z) { return z.real() == 0 && z.imag() == 0; }

struct LegendreSums {
  PrecComplex varpi0, dvarpi0, h, dh;
};

// varpi0 = sum a_n x^n, h = sum c_n x^n with c_n = 4 a_n (H_{2n} - H_n).
// Since 0 <= c_n <= 4 log(2) a_n < 3 a_n and n a_n <= 1, every tail of the
// four sums is bounded by 3 |x|^n / (1 - |x|).
LegendreSums legendre_sums(const PrecComplex& x) {
  const PrecFloat ax = hyperfun::abs(x);
  const PrecFloat eps = summation_epsilon();
  const PrecFloat tail_factor = PrecFloat(3) / (1 - ax);

  LegendreSums s{PrecComplex(1), PrecComplex(), PrecComplex(), PrecComplex()};
  PrecFloat a = 1;        // a_n
  PrecFloat hdiff = 0;    // H_{2n} - H_n
  PrecComplex xn1(1);     // x^(n-1)
  PrecFloat axn = 1;      // |x|^n
  for (long n = 1;; ++n) {
    const PrecFloat half = PrecFloat(2 * n - 1) / PrecFloat(2 * n);
    a *= half * half;
    hdiff += PrecFloat(1) / PrecFloat(2 * n - 1) - PrecFloat(1) / PrecFloat(2 * n);
    const PrecFloat c = 4 * a * hdiff;
    const PrecComplex xn = xn1 * x;
    s.varpi0 += xn * a;
    s.h += xn * c;
    s.dvarpi0 += xn1 * PrecFloat(a * n);
    s.dh += xn1 * PrecFloat(c * n);
    xn1 = xn;
    axn *= ax;
    if (axn * tail_factor < eps) break;
    if (n > 10000000) throw PeriodsError("legendre series failed to converge");
  }
  return s;
}

void require_legendre_disk(const PrecComplex& lambda) {
  if (is_zero(lambda)) throw PeriodsError("legendre periods: lambda = 0 is singular");
  if (hyperfun::abs(lambda) > PrecFloat(kLegendreSeriesRadius)) {
    throw PeriodsError("legendre periods: |lambda| exceeds 0.9; use ODE continuation");
  }
}

}  // namespace

LegendreJet legendre_jet(const PrecComplex& lambda) {
  require_legendre_disk(lambda);
  const LegendreSums s = legendre_sums(lambda);
  const PrecComplex pi_i = PrecComplex::i() * hyperfun::pi();
  const PrecComplex log_ratio = hyperfun::log(lambda) - PrecComplex(boost::multiprecision::log(PrecFloat(16)));
  LegendreJet jet;
  jet.lambda = lambda;
  jet.varpi0 = s.varpi0;
  jet.dvarpi0 = s.dvarpi0;
  jet.varpi1 = (s.varpi0 * log_ratio + s.h) / pi_i;
  jet.dvarpi1 = (s.dvarpi0 * log_ratio + s.varpi0 / lambda + s.dh) / pi_i;
  return jet;
}

LegendrePeriods legendre_periods(const PrecComplex& lambda) {
  const LegendreJet jet = legendre_jet(lambda);
  return {lambda, jet.varpi0, jet.varpi1, jet.varpi1 / jet.varpi0};
}

RationalSeries varpi0_series(int order) {
  require_positive_order(order, "varpi0_series");
  return hyperfun::hyp2f1_series(Rational(1, 2), Rational(1, 2), 1, order);
}

RationalSeries h_series(int order) {
  require_positive_order(order, "h_series");
  const RationalSeries a = varpi0_series(order);
  std::vector<Rational> c(static_cast<std::size_t>(order));
  // Substituting varpi0 log(lambda) + h into the Legendre operator
  // theta^2 - lambda (theta + 1/2)^2 gives
  //   n^2 c_n = (n - 1/2)^2 c_{n-1} - 2n a_n + (2n - 1) a_{n-1}.
  for (int n = 1; n < order; ++n) {
    const Rational m = Rational(2 * n - 1, 2);
    c[n] = (m * m * c[n - 1] - 2 * n * a[n] + (2 * n - 1) * a[n - 1]) / (n * n);
  }
  return RationalSeries(std::move(c), order);
}

RationalSeries q_of_lambda_series(int order) {
  require_positive_order(order, "q_of_lambda_series");
  if (order == 1) return RationalSeries({0}, 1);
  const RationalSeries e = qseries::exp(h_series(order - 1) / varpi0_series(order - 1));
  return RationalSeries::monomial(Rational(1, 16), 1, order) * e;
}

RationalSeries lambda_q_series(int order) {
  require_positive_order(order, "lambda_q_series");
  if (order == 1) return RationalSeries({0}, 1);
  return qseries::revert(q_of_lambda_series(order));
}

QuadMapResult quad_map(const PrecComplex& lambda) {
  QuadMapResult r;
  const PrecComplex one_minus = PrecComplex(1) - lambda;
  const PrecComplex half = PrecComplex(1) - lambda / PrecFloat(2);
  if (is_zero(half)) {
    r.t_infinite = true;
    r.psi = PrecComplex();
    return r;
  }
  r.t = lambda * lambda * one_minus / hyperfun::pow(half, 4);
  if (is_zero(lambda) || is_zero(one_minus)) {
    r.psi_infinite = true;
    return r;
  }
  r.psi = hyperfun::pow(lambda, Rational(-1, 2)) * hyperfun::pow(one_minus, Rational(-1, 4)) * half;
  return r;
}

PrecComplex lambda_from_psi(const PrecComplex& psi) {
  if (is_zero(psi)) return PrecComplex(2);
  // Newton on u = sqrt(lambda) for G(u) = u (1 - u^2)^(1/4) / (1 - u^2/2) = 1/psi.
  const PrecComplex target = PrecComplex(1) / psi;
  const PrecFloat eps = summation_epsilon();
  PrecComplex u = target;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const PrecComplex u2 = u * u;
    const PrecComplex one_minus = PrecComplex(1) - u2;
    const PrecComplex g = u * hyperfun::pow(one_minus, Rational(1, 4)) / (PrecComplex(1) - u2 / PrecFloat(2));
    const PrecComplex dlog = PrecComplex(1) / u - u / (PrecComplex(2) * one_minus) +
                             PrecComplex(2) * u / (PrecComplex(2) - u2);
    const PrecComplex step = (g - target) / (g * dlog);
    u -= step;
    if (hyperfun::abs(step) <= eps * hyperfun::abs(u)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw PeriodsError("lambda_from_psi: Newton iteration did not converge");
  const PrecComplex lambda = u * u;
  const QuadMapResult back = quad_map(lambda);
  if (back.psi_infinite || back.t_infinite ||
      hyperfun::abs(back.psi - psi) > hyperfun::pow10(hyperfun::WorkingPrecision::digits() / 2) * hyperfun::abs(psi)) {
    throw PeriodsError("lambda_from_psi: psi is not on the small-lambda principal branch");
  }
  return lambda;
}

namespace {

struct DworkCoefficients {
  std::vector<Rational> c, s1, s2;
};

DworkCoefficients dwork_coefficients(int order) {
  DworkCoefficients d;
  d.c.resize(static_cast<std::size_t>(order));
  d.s1.resize(static_cast<std::size_t>(order));
  d.s2.resize(static_cast<std::size_t>(order));
  Rational c = 1;
  Rational h4n = 0, h2_4n = 0, hn = 0, h2_n = 0;
  for (int n = 0; n < order; ++n) {
    if (n > 0) {
      const long m = 4L * n;
      c *= Rational((m - 3) * (m - 2) * (m - 1) * m, 256L * n * n * n * n);
      for (long k = m - 3; k <= m; ++k) {
        h4n += Rational(1, k);
        h2_4n += Rational(1, k * k);
      }
      hn += Rational(1, n);
      h2_n += Rational(1, static_cast<long>(n) * n);
    }
    const Rational b = h4n - hn;
    d.c[n] = c;
    d.s1[n] = c * b;
    d.s2[n] = c * (b * b - h2_4n + h2_n / 4);
  }
  return d;
}

}  // namespace

RationalSeries dwork_w0_series(int order) {
  require_positive_order(order, "dwork_w0_series");
  return RationalSeries(dwork_coefficients(order).c, order);
}

RationalSeries dwork_s1_series(int order) {
  require_positive_order(order, "dwork_s1_series");
  return RationalSeries(dwork_coefficients(order).s1, order);
}

RationalSeries dwork_s2_series(int order) {
  require_positive_order(order, "dwork_s2_series");
  return RationalSeries(dwork_coefficients(order).s2, order);
}

DworkPeriods dwork_periods(const PrecComplex& psi) {
  if (is_zero(psi)) throw PeriodsError("dwork_periods: psi = 0 is outside the series region");
  const PrecComplex t = hyperfun::pow(psi, -4);
  const PrecFloat at = hyperfun::abs(t);
  if (at > PrecFloat(5) / 6) {
    throw PeriodsError("dwork_periods: |psi^-4| exceeds 1/1.2; series does not converge fast enough");
  }
  // c_n decreases; 0 <= B_n < log 4 and the W2 bracket stays below 2 + pi^2/8,
  // so every tail is bounded by 4 c_n |t|^n / (1 - |t|).
  const PrecFloat eps = summation_epsilon();
  const PrecFloat tail_factor = PrecFloat(4) / (1 - at);
  PrecComplex w0, s1, s2;
  PrecFloat c = 1, b = 0, h2_4n = 0, h2_n = 0;
  PrecComplex tn(1);
  PrecFloat atn = 1;
  for (long n = 0;; ++n) {
    if (n > 0) {
      const long m = 4 * n;
      c *= PrecFloat(m - 3) * (m - 2) * (m - 1) * m / (PrecFloat(256) * n * n * n * n);
      for (long k = m - 3; k <= m; ++k) {
        b += PrecFloat(1) / k;
        h2_4n += PrecFloat(1) / (PrecFloat(k) * k);
      }
      b -= PrecFloat(1) / n;
      h2_n += PrecFloat(1) / (PrecFloat(n) * n);
      tn *= t;
      atn *= at;
    }
    const PrecComplex term = tn * c;
    w0 += term;
    s1 += term * b;
    s2 += term * PrecFloat(b * b - h2_4n + h2_n / 4);
    if (n > 0 && c * atn * tail_factor < eps) break;
    if (n > 10000000) throw PeriodsError("dwork_periods: series failed to converge");
  }
  const PrecFloat pi = hyperfun::pi();
  s2 += w0 * PrecFloat(pi * pi / 8);

  const PrecComplex L = hyperfun::log(PrecComplex(4) * psi);
  const PrecComplex two_pi_i = PrecComplex::i() * (2 * pi);
  DworkPeriods d;
  d.psi = psi;
  d.t = t;
  d.W0 = w0;
  d.W1 = (PrecComplex(-4) * w0 * L + PrecComplex(4) * s1) / two_pi_i;
  d.W2 = (PrecComplex(16) * w0 * L * L - PrecComplex(32) * s1 * L + PrecComplex(16) * s2) /
         (two_pi_i * two_pi_i);
  d.tau = d.W1 / d.W0;
  return d;
}

PiTriple pi_triple(const PrecComplex& lambda) {
  const LegendrePeriods p = legendre_periods(lambda);
  const PrecComplex f = PrecComplex(1) - lambda / PrecFloat(2);
  return {lambda, f * p.varpi0 * p.varpi0, f * p.varpi0 * p.varpi1, f * p.varpi1 * p.varpi1};
}

RationalSeries bps_series(int order) {
  require_positive_order(order, "bps_series");
  return qseries::eta_product(1, -24, order);
}

namespace {

// sum over n in Z of sign(n) q^(n^2 / scale) style theta sums, on integer
// exponents only.
RationalSeries square_sum(int order, bool alternating) {
  std::vector<Rational> c(static_cast<std::size_t>(order));
  c[0] = 1;
  for (long n = 1; n * n < order; ++n) c[n * n] += (alternating && (n % 2 == 1)) ? -2 : 2;
  return RationalSeries(std::move(c), order);
}

}  // namespace

RationalSeries theta3_series(int order) {
  require_positive_order(order, "theta3_series");
  return square_sum(order, false);
}

RationalSeries theta4_series(int order) {
  require_positive_order(order, "theta4_series");
  return square_sum(order, true);
}

RationalSeries theta2_series(int order) {
  require_positive_order(order, "theta2_series");
  std::vector<Rational> c(static_cast<std::size_t>(order));
  for (long n = 0; n * (n + 1) < order; ++n) c[n * (n + 1)] = 2;
  return RationalSeries(std::move(c), order, Rational(1, 4));
}

std::vector<PrecComplex> mirror_grid(int count) {
  if (count < 1) throw PeriodsError("mirror_grid: count must be positive");
  // Rings of 5 points each at radii 0.075, 0.15, ..., capped at 0.3; the
  // angles 10 + 72k degrees never touch the real axis.
  const int rings = (count + 4) / 5;
  std::vector<PrecComplex> grid;
  grid.reserve(static_cast<std::size_t>(count));
  const PrecFloat deg = hyperfun::pi() / 180;
  for (int r = 1; r <= rings && static_cast<int>(grid.size()) < count; ++r) {
    const PrecFloat radius = PrecFloat(3) / 10 * r / rings;
    for (int k = 0; k < 5 && static_cast<int>(grid.size()) < count; ++k) {
      const PrecFloat angle = deg * (10 + 72 * k + 36 * (r % 2));
      grid.emplace_back(radius * boost::multiprecision::cos(angle),
                        radius * boost::multiprecision::sin(angle));
    }
  }
  return grid;
}

}  // namespace k3mirror::periods
