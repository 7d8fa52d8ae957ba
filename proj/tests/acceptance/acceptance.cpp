// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails, including by exceeding its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "k3mirror/arith.hpp"
#include "k3mirror/continuation.hpp"
#include "k3mirror/deligne.hpp"
#include "k3mirror/identities.hpp"
#include "k3mirror/periods.hpp"
#include "k3mirror/pfode.hpp"

namespace {

using namespace k3mirror;
namespace bmp = boost::multiprecision;
using hyperfun::PrecComplex;
using hyperfun::PrecFloat;
using hyperfun::WorkingPrecision;
using qseries::RationalSeries;

constexpr int kDigits = 120;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

double run(const char* id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %-4s %-44s %8.3f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", id, name, secs, limit_seconds,
              o.detail.c_str(), in_time ? "" : " [over time budget]");
  std::fflush(stdout);
  return secs;
}

std::string sci(const PrecFloat& x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome lambda_coefficients() {
  const RationalSeries lam = periods::lambda_q_series(7);
  const std::vector<Rational> want = {16, -128, 704, -3072, 11488, -38400};
  bool ok = lam[0] == 0;
  for (int k = 1; k <= 6; ++k) ok = ok && lam[k] == want[k - 1];
  return {ok, "q^1..q^6 = " + lam[1].get_str() + ", " + lam[2].get_str() + ", ..., " + lam[6].get_str()};
}

Outcome quartic_period_coefficients() {
  const RationalSeries pi0 = hyperfun::hyp2f1_series(Rational(1, 8), Rational(3, 8), 1, 4);
  const RationalSeries w0 = periods::dwork_w0_series(3);
  const bool p = pi0[0] == 1 && pi0[1] == Rational(3, 64) && pi0[2] == Rational(297, 16384) &&
                 pi0[3] == Rational(10659, 1048576);
  // W0 in t = psi^-4; (4 psi)^-4 = t / 256.
  const bool w = w0[0] == 1 && w0[1] * 256 == 24 && w0[2] * 65536 == 2520;
  return {p && w, std::string("pi0 ") + (p ? "ok" : "mismatch") + ", W0 " + (w ? "ok" : "mismatch")};
}

Outcome quadratic_transformations() {
  identities::IdentityOptions o;
  o.order = 40;
  bool ok = true;
  std::string detail;
  for (const char* id : {"QT1", "QT2", "QT3"}) {
    const auto r = identities::check_identity(id, o);
    ok = ok && r.pass && r.exact && r.residual == "0" && r.order >= 40;
    detail += std::string(detail.empty() ? "" : " ") + id + "=" + r.residual;
  }
  return {ok, "order 40 residuals " + detail};
}

Outcome mirror_map() {
  WorkingPrecision prec(kDigits);
  const auto m = identities::check_mirror_map(20);
  PrecFloat worst = 0;
  bool ok = m.points.size() == 20;
  for (const auto& p : m.points) {
    ok = ok && hyperfun::abs(p.lambda) <= PrecFloat("0.3");
    worst = bmp::max(worst, p.residual);
  }
  ok = ok && worst < PrecFloat("1e-100");
  return {ok, "20 points, max residual " + sci(worst) + " (tol 1e-100)"};
}

Outcome continuation() {
  WorkingPrecision prec(kDigits);
  const PrecFloat tol("1e-30");
  const PrecFloat s2 = bmp::sqrt(PrecFloat(2));
  const PrecComplex tau1 = pfode::tau_at(PrecComplex(2 * s2 - 2), pfode::path_to_sqrt_point());
  const PrecFloat e1 = hyperfun::abs(tau1 - PrecComplex(PrecFloat(0), 1 / s2));

  const auto res = pfode::continue_legendre(pfode::path_to_two());
  const PrecComplex v0 = res.frame.m[0][0];
  const PrecFloat e2 = hyperfun::abs(res.frame.m[0][1] / v0 - PrecComplex(PrecFloat("-0.5"), PrecFloat("0.5")));
  const PrecComplex th = hyperfun::theta_const(3, PrecComplex(PrecFloat(0), -bmp::exp(-hyperfun::pi() / 2)));
  const PrecFloat e3 = hyperfun::abs(v0 - th * th);
  return {e1 < tol && e2 < tol && e3 < tol,
          "tau(2sqrt2-2) " + sci(e1) + ", tau(2) " + sci(e2) + ", varpi0(2) " + sci(e3) + " (tol 1e-30)"};
}

Outcome theta_registry() {
  identities::IdentityOptions o;
  o.order = 30;
  bool ok = true;
  std::string bad;
  for (const char* id : {"THETA-V", "THETA-24", "DLDTAU", "DELTA-LAMBDA", "BPS"}) {
    const auto r = identities::check_identity(id, o);
    if (!(r.pass && r.exact && r.residual == "0" && r.order >= 30)) {
      ok = false;
      bad += std::string(" ") + id;
    }
  }
  WorkingPrecision prec(kDigits);
  const auto dt = identities::check_identity("DELTA-THETA", o);
  const PrecFloat res(dt.residual);
  ok = ok && dt.points.size() == 2 && res < PrecFloat("1e-100");
  return {ok, "exact ids at order 30" + (bad.empty() ? std::string(" ok") : " failed:" + bad) +
                  ", DELTA-THETA " + sci(res) + " (tol 1e-100)"};
}

const char* const kTheta4 = "1.3932039296856768591842462603253682426574812175156";
const char* const kL1 = "0.5471099038066191597091924851761161358148431807064";
const char* const kL2 = "0.8593982272525466034362619724763196497376070564774";

struct DeligneData {
  deligne::LValueResult L1, L2;
  deligne::DelignePeriodSet periods;
};
DeligneData deligne_data;

Outcome lvalues() {
  deligne_data.L1 = deligne::lvalue(1, kDigits);
  deligne_data.L2 = deligne::lvalue(2, kDigits);
  deligne_data.periods = deligne::deligne_periods(kDigits);
  WorkingPrecision prec(kDigits);
  const PrecFloat half_ulp("5e-50");
  const PrecFloat et = bmp::abs(deligne_data.periods.theta4.imag() + PrecFloat(kTheta4)) +
                       bmp::abs(deligne_data.periods.theta4.real());
  const PrecFloat e1 = bmp::abs(deligne_data.L1.value - PrecFloat(kL1));
  const PrecFloat e2 = bmp::abs(deligne_data.L2.value - PrecFloat(kL2));
  // 49 printed digits after the leading 1 of theta3^4; 50 for the L-values.
  const bool ok = et < PrecFloat("5e-49") && e1 < half_ulp && e2 < half_ulp;
  return {ok, "theta3^4 " + sci(et) + ", L1 " + sci(e1) + ", L2 " + sci(e2)};
}

Outcome ratios() {
  WorkingPrecision prec(kDigits);
  const PrecComplex q1 = deligne_data.periods.c_plus_tate1 / PrecComplex(deligne_data.L1.value);
  const PrecComplex q2 = deligne_data.periods.c_plus_tate2 / PrecComplex(deligne_data.L2.value);
  const Integer max_den(1000000);
  const PrecFloat tol = hyperfun::pow10(kDigits - 10);
  const auto r1 = deligne::reconstruct_rational(q1.real(), max_den, tol);
  const auto r2 = deligne::reconstruct_rational(q2.real(), max_den, tol);
  const bool real = bmp::abs(q1.imag()) < tol && bmp::abs(q2.imag()) < tol;
  const bool ok = real && r1 == Rational(16) && r2 == Rational(-64);
  return {ok, "c+/L = " + (r1 ? r1->get_str() : std::string("?")) + ", " + (r2 ? r2->get_str() : std::string("?"))};
}

Outcome arithmetic() {
  long checked = 0;
  std::string bad;
  for (const arith::ZetaRecord& r : arith::zeta_table(2, 499, 101)) {
    if (!r.weil_ok) bad += " weil@" + std::to_string(r.p);
    if (r.p % 4 == 1 && r.b_p != r.a_p * r.a_p - 2 * r.p) bad += " sym2@" + std::to_string(r.p);
    ++checked;
  }
  for (long p : {17L, 41L, 73L, 89L, 97L}) {
    if (arith::fermat_quartic_count(p) != 1 + 20 * p + arith::bp_eta(p) + p * p) bad += " N@" + std::to_string(p);
  }
  return {bad.empty() && checked > 90,
          std::to_string(checked) + " good primes < 500, 5 Fermat counts" + (bad.empty() ? "" : ";" + bad)};
}

// ---------------------------------------------------------------------------

RationalSeries random_series(std::mt19937& rng, int order, bool unit) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> c(order);
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  if (unit && c[0] == 0) c[0] = 1;
  return RationalSeries(c, order);
}

Outcome properties() {
  std::mt19937 rng(20261017);
  const int n = 12;
  std::string bad;
  int cases = 0;
  for (int trial = 0; trial < 50; ++trial, ++cases) {
    const RationalSeries a = random_series(rng, n, false), b = random_series(rng, n, false),
                         c = random_series(rng, n, false), u = random_series(rng, n, true);
    if ((a + b) + c != a + (b + c) || a * b != b * a || (a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c ||
        u * qseries::reciprocal(u) != RationalSeries::constant(1, n)) {
      bad += " ring";
      break;
    }
    // Reversion on series with zero constant term and unit linear term.
    RationalSeries f = qseries::compose(u, RationalSeries::variable(n)) * RationalSeries::variable(n);
    const RationalSeries g = qseries::revert(f);
    if (qseries::compose(f, g) != RationalSeries::variable(n) || qseries::revert(g) != f) {
      bad += " revert";
      break;
    }
  }

  const int order = 30;
  const RationalSeries w0 = periods::dwork_w0_series(order), s1 = periods::dwork_s1_series(order),
                       s2 = periods::dwork_s2_series(order), v = periods::varpi0_series(order),
                       h = periods::h_series(order);
  const RationalSeries f = Rational(1) - Rational(1, 2) * RationalSeries::variable(order);
  const auto killed = [](const pfode::FuchsianOperator& L, const pfode::LogSeries& s) {
    return pfode::is_exact_zero(pfode::apply_operator(L, s));
  };
  const bool annihilation =
      killed(pfode::dwork_d3(), {{w0}}) && killed(pfode::dwork_d3(), {{Rational(4) * s1, w0}}) &&
      killed(pfode::dwork_d3(), {{Rational(16) * s2, Rational(8) * s1, w0}}) &&
      pfode::apply_operator(pfode::legendre_operator(), v).is_zero() &&
      killed(pfode::pullback_d3(), {{f * v * v}}) && killed(pfode::pullback_d3(), {{f * v * h, f * v * v}}) &&
      killed(pfode::pullback_d3(), {{f * h * h, Rational(2) * f * v * h, f * v * v}});
  if (!annihilation) bad += " annihilation";

  WorkingPrecision prec(80);
  const PrecFloat tol = hyperfun::pow10(80 - 10);
  const auto pt = [](const char* re, const char* im) { return PrecComplex(PrecFloat(re), PrecFloat(im)); };
  const pfode::ContinuationPath loop{{pt("0.4", "0"), pt("0.6", "0.1"), pt("0.5", "0.25"), pt("0.35", "0.1"),
                                      pt("0.4", "0")}};
  const auto start = pfode::continue_legendre(pfode::ContinuationPath{{pt("0.4", "0")}});
  const auto end = pfode::continue_legendre(loop);
  PrecFloat loop_err = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      loop_err = bmp::max(loop_err, hyperfun::abs(start.frame.m[i][j] - end.frame.m[i][j]));
    }
  }
  if (loop_err >= tol) bad += " loop";

  const pfode::ContinuationPath mono = pfode::monodromy_loop_zero();
  const auto base = periods::legendre_periods(mono.waypoints.front());
  const auto around = pfode::continue_legendre(mono);
  const PrecFloat mono_err =
      hyperfun::abs(around.frame.m[0][1] / around.frame.m[0][0] - (base.tau + PrecComplex(2)));
  if (mono_err >= tol) bad += " monodromy";

  return {bad.empty(), std::to_string(cases) + " random ring/reversion cases, annihilation, loop " + sci(loop_err) +
                           ", tau+2 " + sci(mono_err) + (bad.empty() ? "" : "; failed:" + bad)};
}

}  // namespace

int main() {
  std::printf("k3mirror acceptance at %d digits\n", kDigits);
  run("C1", "lambda(tau) q-expansion", 1, lambda_coefficients);
  run("C2", "quartic period and W0 coefficients", 1, quartic_period_coefficients);
  run("C3", "quadratic transformations QT1-QT3", 10, quadratic_transformations);
  run("C4", "mirror map on 20 grid points", 60, mirror_map);
  run("C5", "analytic continuation to 2sqrt2-2 and 2", 120, continuation);
  run("C6", "theta and eta identity registry", 60, theta_registry);
  run("C7", "theta3^4 and critical L-values", 120, lvalues);
  run("C8", "Deligne period ratios 16 and -64", 1, ratios);
  run("C9", "zeta factors, Weil bounds, Fermat counts", 300, arithmetic);
  run("C10", "property suites", 300, properties);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
