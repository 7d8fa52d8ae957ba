#include "k3mirror/hyperfun.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <ios>
#include <limits>

namespace k3mirror::hyperfun {

namespace {

thread_local int g_target_digits = WorkingPrecision::kDefaultDigits;
thread_local bool g_initialized = false;

void ensure_default_precision() {
  if (!g_initialized) {
    g_initialized = true;
    PrecFloat::default_precision(WorkingPrecision::kDefaultDigits +
                                 WorkingPrecision::kGuardDigits);
  }
}

}  // namespace

WorkingPrecision::WorkingPrecision(int digits) {
  if (digits < kMinDigits) {
    throw NumericError("working precision must be at least " + std::to_string(kMinDigits) +
                       " digits");
  }
  ensure_default_precision();
  saved_digits_ = g_target_digits;
  saved_mpfr_digits_ = PrecFloat::default_precision();
  g_target_digits = digits;
  PrecFloat::default_precision(static_cast<unsigned>(digits + kGuardDigits));
}

WorkingPrecision::~WorkingPrecision() {
  g_target_digits = saved_digits_;
  PrecFloat::default_precision(saved_mpfr_digits_);
}

int WorkingPrecision::digits() {
  ensure_default_precision();
  return g_target_digits;
}

PrecFloat pow10(int exponent) {
  PrecFloat ten(10);
  return boost::multiprecision::pow(ten, -exponent);
}

PrecFloat summation_epsilon() {
  return pow10(WorkingPrecision::digits() + WorkingPrecision::kGuardDigits / 2);
}

PrecFloat to_prec(const Rational& r) {
  ensure_default_precision();
  PrecFloat x;
  mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return x;
}

PrecFloat parse_decimal(std::string_view text) {
  ensure_default_precision();
  try {
    return PrecFloat(std::string(text));
  } catch (const std::exception&) {
    throw NumericError("not a decimal number: '" + std::string(text) + "'");
  }
}

PrecFloat pi() {
  ensure_default_precision();
  return boost::math::constants::pi<PrecFloat>();
}

std::string to_decimal_string(const PrecFloat& x, int digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

PrecComplex PrecComplex::parse(std::string_view re, std::string_view im) {
  return {parse_decimal(re), parse_decimal(im)};
}

PrecComplex& PrecComplex::operator+=(const PrecComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

PrecComplex& PrecComplex::operator-=(const PrecComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

PrecComplex& PrecComplex::operator*=(const PrecComplex& o) {
  PrecFloat r = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  return *this;
}

PrecComplex& PrecComplex::operator/=(const PrecComplex& o) {
  const PrecFloat d = o.re_ * o.re_ + o.im_ * o.im_;
  if (d == 0) throw NumericError("complex division by zero");
  PrecFloat r = (re_ * o.re_ + im_ * o.im_) / d;
  im_ = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  return *this;
}

PrecComplex& PrecComplex::operator*=(const PrecFloat& s) {
  re_ *= s;
  im_ *= s;
  return *this;
}

PrecComplex& PrecComplex::operator/=(const PrecFloat& s) {
  re_ /= s;
  im_ /= s;
  return *this;
}

PrecFloat abs(const PrecComplex& z) { return boost::multiprecision::hypot(z.real(), z.imag()); }

PrecFloat norm(const PrecComplex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

PrecFloat arg(const PrecComplex& z) { return boost::multiprecision::atan2(z.imag(), z.real()); }

PrecComplex conj(const PrecComplex& z) { return {z.real(), -z.imag()}; }

PrecComplex exp(const PrecComplex& z) {
  const PrecFloat m = boost::multiprecision::exp(z.real());
  return {m * boost::multiprecision::cos(z.imag()), m * boost::multiprecision::sin(z.imag())};
}

PrecComplex log(const PrecComplex& z) {
  if (z.real() == 0 && z.imag() == 0) throw NumericError("log of zero");
  return {boost::multiprecision::log(abs(z)), arg(z)};
}

PrecComplex sqrt(const PrecComplex& z) {
  if (z.real() == 0 && z.imag() == 0) return {};
  const PrecFloat r = abs(z);
  PrecFloat a = boost::multiprecision::sqrt((r + z.real()) / 2);
  PrecFloat b = boost::multiprecision::sqrt((r - z.real()) / 2);
  if (z.imag() < 0) b = -b;
  return {std::move(a), std::move(b)};
}

PrecComplex pow(const PrecComplex& z, const Rational& e) {
  if (z.real() == 0 && z.imag() == 0) {
    if (sgn(e) > 0) return {};
    throw NumericError("nonpositive power of zero");
  }
  if (e.get_den() == 1 && e.get_num().fits_sint_p()) {
    return pow(z, static_cast<int>(e.get_num().get_si()));
  }
  return exp(log(z) * to_prec(e));
}

PrecComplex pow(const PrecComplex& z, int n) {
  PrecComplex base = n < 0 ? PrecComplex(1) / z : z;
  unsigned e = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
  PrecComplex result(1);
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

std::string to_string(const PrecComplex& z, int digits) {
  return "(" + to_decimal_string(z.real(), digits) + ", " + to_decimal_string(z.imag(), digits) +
         ")";
}

qseries::RationalSeries hyp2f1_series(const Rational& a, const Rational& b, const Rational& c,
                                      int order) {
  if (order < 1) throw NumericError("hyp2f1_series: order must be positive");
  std::vector<Rational> coeffs(static_cast<std::size_t>(order));
  coeffs[0] = 1;
  for (int n = 1; n < order; ++n) {
    const Rational denom = (c + n - 1) * n;
    if (sgn(denom) == 0) throw NumericError("hyp2f1_series: c is a nonpositive integer");
    coeffs[n] = coeffs[n - 1] * (a + n - 1) * (b + n - 1) / denom;
  }
  return qseries::RationalSeries(std::move(coeffs), order);
}

PrecComplex hyp2f1(const Rational& a, const Rational& b, const Rational& c, const PrecComplex& z) {
  if (c.get_den() == 1 && sgn(c) <= 0) {
    throw NumericError("hyp2f1: c is a nonpositive integer");
  }
  const PrecFloat az = abs(z);
  if (az > PrecFloat(kHyp2f1Radius)) {
    throw NumericError("hyp2f1: |z| exceeds the direct-series radius 0.9");
  }
  const PrecFloat eps = summation_epsilon();
  // For j >= m >= 2|c| + 1 the term ratio is at most
  // |z| (1 + |a|/m)(1 + 2(|b| + |c|)/m), which decreases in m.
  const double abs_a = std::abs(a.get_d());
  const double abs_bc = std::abs(b.get_d()) + std::abs(c.get_d());
  const int m_min = 2 * static_cast<int>(std::ceil(std::abs(c.get_d()))) + 1;
  PrecComplex sum(1);
  PrecComplex term(1);
  for (int n = 0;; ++n) {
    const Rational ratio = (a + n) * (b + n) / ((c + n) * (n + 1));
    term *= z;
    term *= to_prec(ratio);
    sum += term;
    if (sgn(ratio) == 0) break;  // terminating series
    const int m = n + 1;
    if (m >= m_min) {
      const PrecFloat rho = az * PrecFloat((1.0 + abs_a / m) * (1.0 + 2.0 * abs_bc / m));
      if (rho < 1) {
        const PrecFloat tail = abs(term) * rho / (1 - rho);
        if (tail < eps) break;
      }
    }
    if (n > 2000000) throw NumericError("hyp2f1: series failed to converge");
  }
  return sum;
}

PrecComplex theta_const(int kind, const PrecComplex& q) {
  if (kind < 2 || kind > 4) throw NumericError("theta_const: kind must be 2, 3 or 4");
  const PrecFloat aq = abs(q);
  if (aq >= 1) throw NumericError("theta_const: |q| must be below 1");
  if (aq == 0) return kind == 2 ? PrecComplex() : PrecComplex(1);

  const PrecFloat eps = summation_epsilon();
  const PrecFloat log_aq = boost::multiprecision::log(aq);
  auto small_enough = [&](long exponent_times_4) {
    // |q|^(e/4) < eps
    return log_aq * exponent_times_4 / 4 < boost::multiprecision::log(eps);
  };

  if (kind == 2) {
    // 2 q^(1/4) sum_{n>=0} q^(n(n+1)).
    PrecComplex sum;
    for (long n = 0;; ++n) {
      const long e = n * (n + 1);
      if (n > 0 && small_enough(4 * e + 1)) break;
      sum += pow(q, static_cast<int>(e));
    }
    return PrecComplex(2) * pow(q, Rational(1, 4)) * sum;
  }

  // 1 + 2 sum_{n>=1} (+-1)^n q^(n^2); q^(n^2) built incrementally.
  PrecComplex sum(1);
  PrecComplex qn2 = q;               // q^(n^2)
  PrecComplex step = q * q * q;      // q^(2n+1) for the next n
  for (long n = 1;; ++n) {
    PrecComplex term = qn2 * PrecFloat(2);
    if (kind == 4 && (n % 2 == 1)) term = -term;
    sum += term;
    if (small_enough(4 * (n + 1) * (n + 1))) break;
    qn2 *= step;
    step *= q * q;
  }
  return sum;
}

PrecComplex theta_const_tau(int kind, const PrecComplex& tau) {
  if (tau.imag() <= 0) throw NumericError("theta_const_tau: Im(tau) must be positive");
  const PrecComplex q = exp(PrecComplex::i() * pi() * tau);
  if (kind != 2) return theta_const(kind, q);
  const PrecComplex q4 = exp(PrecComplex::i() * pi() * tau / PrecFloat(4));
  // theta_2 = 2 q^(1/4) sum q^(n(n+1)); strip the principal q^(1/4) and reapply.
  const PrecComplex principal = theta_const(2, q);
  return principal / pow(q, Rational(1, 4)) * q4;
}

PrecComplex eta_value(const PrecComplex& tau) {
  if (tau.imag() <= 0) throw NumericError("eta_value: Im(tau) must be positive");
  const PrecComplex two_pi_i_tau = PrecComplex::i() * (PrecFloat(2) * pi()) * tau;
  const PrecComplex nome = exp(two_pi_i_tau);
  const PrecFloat an = abs(nome);
  const PrecFloat eps = summation_epsilon();
  // |prod_{n>N}(1 - x^n) - 1| <= exp(|x|^{N+1} / (1 - |x|)) - 1 ~ |x|^{N+1}/(1-|x|).
  const PrecFloat denom = 1 - an;
  PrecComplex product(1);
  PrecComplex power = nome;
  PrecFloat apower = an;
  for (long n = 1;; ++n) {
    product -= product * power;
    apower *= an;
    if (apower / denom < eps) break;
    power *= nome;
    if (n > 50000000) throw NumericError("eta_value: product failed to converge");
  }
  return exp(two_pi_i_tau / PrecFloat(24)) * product;
}

std::pair<Rational, Rational> harmonic_sums(int n) {
  if (n < 0) throw NumericError("harmonic_sums: n must be nonnegative");
  Rational h1 = 0;
  Rational h2 = 0;
  for (int k = 1; k <= n; ++k) {
    h1 += Rational(1, k);
    h2 += Rational(1, static_cast<long>(k) * k);
  }
  return {h1, h2};
}

PrecComplex evaluate(const qseries::RationalSeries& s, const PrecComplex& q) {
  PrecComplex acc;
  for (int k = s.order() - 1; k >= 0; --k) {
    acc = acc * q + PrecComplex(to_prec(s[k]));
  }
  if (sgn(s.offset()) != 0) acc *= pow(q, s.offset());
  return acc;
}

}  // namespace k3mirror::hyperfun
