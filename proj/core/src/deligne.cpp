#include "k3mirror/deligne.hpp"

#include <cmath>

#include "k3mirror/continuation.hpp"
#include "k3mirror/qseries.hpp"
#include "k3mirror/quadrature.hpp"

namespace k3mirror::deligne {

namespace bmp = boost::multiprecision;
using hyperfun::WorkingPrecision;

const char* to_string(LMethod m) {
  return m == LMethod::termwise_gamma ? "termwise-gamma" : "quadrature";
}

namespace {

void require_s(int s) {
  if (s != 1 && s != 2) throw DeligneError("lvalue: only the critical values s = 1, 2 are supported");
}

// int_{1/4}^inf e^(-2 pi n z) z^(s-1) dz with x = pi n / 2.
PrecFloat upper_piece(long n, int s, const PrecFloat& two_pi) {
  const PrecFloat a = two_pi * n;
  const PrecFloat x = a / 4;
  const PrecFloat ex = bmp::exp(-x);
  if (s == 1) return ex / a;
  return (1 + x) * ex / (a * a);
}

LValueResult termwise(int s) {
  const int digits = WorkingPrecision::digits();
  // e^(-pi n / 2) < 10^-(D + 20) beyond this many terms.
  const int terms = static_cast<int>(std::ceil((digits + 20) * std::log(10.0) * 2 / M_PI)) + 10;
  const qseries::RationalSeries f = qseries::eta_product(4, 6, terms);
  const PrecFloat two_pi = 2 * hyperfun::pi();
  // Folding [0, 1/4] contributes 64 * 16^-s times the (3 - s) moment.
  const PrecFloat fold = PrecFloat(64) / bmp::pow(PrecFloat(16), s);
  PrecFloat sum = 0;
  for (long n = 1; n <= terms; ++n) {
    const Rational& b = f[static_cast<int>(n - 1)];
    if (sgn(b) == 0) continue;
    sum += hyperfun::to_prec(b) * (upper_piece(n, s, two_pi) + fold * upper_piece(n, 3 - s, two_pi));
  }
  LValueResult r;
  r.s = s;
  r.method = LMethod::termwise_gamma;
  r.terms = terms;
  r.value = bmp::pow(two_pi, s) * sum;
  // |b_n| <= n^2; the omitted terms decay faster than a ratio of 1/4.
  const long n = terms + 1;
  const PrecFloat x = hyperfun::pi() * n / 2;
  r.error_estimate = bmp::pow(two_pi, s) * 2 * PrecFloat(n) * n * 5 * (1 + x) * bmp::exp(-x);
  return r;
}

// eta(iy)^6 for real y > 0 through the pentagonal series of prod (1 - x^n).
PrecFloat eta6_real(const PrecFloat& y, const PrecFloat& eps) {
  const PrecFloat two_pi = 2 * hyperfun::pi();
  const PrecFloat lx = -two_pi * y;  // log x
  PrecFloat sum = 1;
  for (long k = 1;; ++k) {
    const long e1 = k * (3 * k - 1) / 2;
    const long e2 = k * (3 * k + 1) / 2;
    const PrecFloat t1 = bmp::exp(lx * e1);
    const PrecFloat t2 = bmp::exp(lx * e2);
    const PrecFloat term = t1 + t2;
    if (k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
    if (t1 < eps) break;
  }
  const PrecFloat eta = bmp::exp(lx / 24) * sum;
  return bmp::pow(eta, 6);
}

LValueResult by_quadrature(int s) {
  const int digits = WorkingPrecision::digits();
  const PrecFloat eps = hyperfun::pow10(digits + 30);
  const PrecFloat quarter = PrecFloat(1) / 4;
  const PrecFloat pi = hyperfun::pi();
  // Below z_min the integrand is under e^(-pi / (8z)) < 10^-(D + 30).
  const PrecFloat z_min = pi / (8 * (digits + 30) * bmp::log(PrecFloat(10)));

  const auto integrand = [&](const PrecFloat& z) -> PrecFloat {
    if (z < z_min) return 0;
    const PrecFloat v = eta6_real(4 * z, eps);
    if (s == 1) return v;
    return v * z;
  };
  // [0, 1/4]
  const quadrature::QuadratureResult lower = quadrature::tanh_sinh(
      [&](const PrecFloat& z, const PrecFloat&) { return integrand(z); }, 0, quarter);
  // [1/4, inf) via z = 1/4 + u / (1 - u); dz = du / (1 - u)^2.
  const quadrature::QuadratureResult upper = quadrature::tanh_sinh(
      [&](const PrecFloat& u, const PrecFloat& one_minus_u) -> PrecFloat {
        if (one_minus_u == 0) return 0;
        const PrecFloat z = quarter + u / one_minus_u;
        if (z * 2 * pi > (digits + 40) * std::log(10.0)) return 0;
        return integrand(z) / (one_minus_u * one_minus_u);
      },
      0, 1);
  LValueResult r;
  r.s = s;
  r.method = LMethod::quadrature;
  const PrecFloat scale = bmp::pow(2 * pi, s);
  r.value = scale * (lower.value + upper.value);
  r.error_estimate = scale * (lower.error_estimate + upper.error_estimate);
  r.terms = static_cast<int>(lower.evaluations + upper.evaluations);
  return r;
}

}  // namespace

LValueResult lvalue(int s, int digits, LMethod method) {
  require_s(s);
  if (digits > kMaxDigits) {
    throw DeligneError("lvalue: " + std::to_string(digits) + " digits exceeds the budget of " +
                       std::to_string(kMaxDigits));
  }
  WorkingPrecision prec(digits);
  return method == LMethod::termwise_gamma ? termwise(s) : by_quadrature(s);
}

PrecFloat fricke_residual(const PrecFloat& y) {
  const PrecComplex lhs = hyperfun::pow(hyperfun::eta_value(PrecComplex(PrecFloat(0), 1 / (4 * y))), 6);
  const PrecComplex rhs = PrecComplex(64 * y * y * y) *
                          hyperfun::pow(hyperfun::eta_value(PrecComplex(PrecFloat(0), 4 * y)), 6);
  return hyperfun::abs(lhs - rhs);
}

DelignePeriodSet deligne_periods(int digits) {
  WorkingPrecision prec(digits);
  DelignePeriodSet d;
  const PrecFloat pi = hyperfun::pi();
  const PrecComplex q(PrecFloat(0), -bmp::exp(-pi / 2));
  const PrecComplex t3 = hyperfun::theta_const(3, q);
  d.theta4 = hyperfun::pow(t3, 4);
  d.c_minus = d.theta4;
  d.c_plus = PrecComplex::i() * d.theta4;
  const PrecComplex two_pi_i = PrecComplex::i() * (2 * pi);
  d.c_plus_tate1 = two_pi_i * d.c_minus;
  d.c_plus_tate2 = two_pi_i * two_pi_i * d.c_plus;

  const pfode::ContinuationResult res = pfode::continue_legendre(pfode::path_to_two());
  const PrecComplex v0 = res.frame.m[0][0];
  d.varpi0_sq_ode = v0 * v0;
  d.crosscheck_residual = hyperfun::abs(d.varpi0_sq_ode - d.theta4);
  if (d.crosscheck_residual > hyperfun::pow10(kCrosscheckDigits)) {
    throw DeligneError("deligne_periods: varpi0(2)^2 from continuation misses theta3^4 by " +
                       hyperfun::to_decimal_string(d.crosscheck_residual, 6));
  }
  return d;
}

std::optional<Rational> reconstruct_rational(const PrecFloat& x, const Integer& max_den,
                                             const PrecFloat& tol) {
  // Convergents h_k / k_k of the continued fraction of x.
  Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
  PrecFloat rest = x;
  for (int iter = 0; iter < 200; ++iter) {
    const PrecFloat fl = bmp::floor(rest);
    Integer a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
    Integer h_next = a * h_prev + h;
    Integer k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    if (k_prev > max_den) return std::nullopt;
    const Rational cand(h_prev, k_prev);
    if (bmp::abs(x - hyperfun::to_prec(cand)) <= tol) return cand;
    const PrecFloat frac = rest - fl;
    if (frac == 0) return std::nullopt;
    rest = 1 / frac;
  }
  return std::nullopt;
}

RatioReport verify_ratios(int digits) {
  if (digits < 40) throw DeligneError("verify_ratios: need at least 40 digits");
  RatioReport r;
  r.digits = digits;
  r.L1 = lvalue(1, digits);
  r.L2 = lvalue(2, digits);
  r.periods = deligne_periods(digits);
  WorkingPrecision prec(digits);
  const PrecFloat tol = hyperfun::pow10(digits - 10);
  const Integer max_den = 1000000;

  const PrecComplex q1 = r.periods.c_plus_tate1 / PrecComplex(r.L1.value);
  const PrecComplex q2 = r.periods.c_plus_tate2 / PrecComplex(r.L2.value);
  const auto rat1 = reconstruct_rational(q1.real(), max_den, tol);
  const auto rat2 = reconstruct_rational(q2.real(), max_den, tol);
  if (!rat1 || !rat2) {
    throw DeligneError("verify_ratios: a ratio is not a small rational; this indicates a bug");
  }
  r.r1 = *rat1;
  r.r2 = *rat2;
  r.residual1 = bmp::abs(q1.real() - hyperfun::to_prec(r.r1));
  r.residual2 = bmp::abs(q2.real() - hyperfun::to_prec(r.r2));

  const PrecFloat tiny = hyperfun::pow10(digits - 10);
  r.checks.push_back({"c_plus real", bmp::abs(r.periods.c_plus.imag()) <= tiny,
                      hyperfun::to_decimal_string(bmp::abs(r.periods.c_plus.imag()), 4)});
  r.checks.push_back({"c_minus imaginary", bmp::abs(r.periods.c_minus.real()) <= tiny,
                      hyperfun::to_decimal_string(bmp::abs(r.periods.c_minus.real()), 4)});
  r.checks.push_back({"ratios real", bmp::abs(q1.imag()) <= tiny && bmp::abs(q2.imag()) <= tiny,
                      hyperfun::to_decimal_string(bmp::max(bmp::abs(q1.imag()), bmp::abs(q2.imag())), 4)});
  for (const char* y : {"0.3", "0.7", "1.5"}) {
    const PrecFloat res = fricke_residual(hyperfun::parse_decimal(y));
    r.checks.push_back({std::string("fricke y=") + y, res <= tiny,
                        hyperfun::to_decimal_string(res, 4)});
  }
  r.checks.push_back({"continuation crosscheck",
                      r.periods.crosscheck_residual <= hyperfun::pow10(kCrosscheckDigits),
                      hyperfun::to_decimal_string(r.periods.crosscheck_residual, 4)});
  return r;
}

}  // namespace k3mirror::deligne
