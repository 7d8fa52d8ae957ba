#include "k3mirror/identities.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace k3mirror::identities {

using hyperfun::PrecFloat;
using qseries::RationalSeries;

namespace {

IdentityReport report(std::string id, std::string description) {
  IdentityReport r;
  r.id = std::move(id);
  r.description = std::move(description);
  return r;
}

constexpr int kPointDigits = 12;
constexpr int kResidualDigits = 6;

RationalSeries hyp(const Rational& a, const Rational& b, int order) {
  return hyperfun::hyp2f1_series(a, b, 1, order);
}

// Fills `r` from lhs - rhs: exact zero to at least `order`, or the first
// nonzero coefficient.
void settle_exact(IdentityReport& r, const RationalSeries& lhs, const RationalSeries& rhs,
                  int order) {
  r.exact = true;
  r.tolerance = "0";
  RationalSeries diff = lhs - rhs;
  if (diff.order() > order) diff = diff.truncated(order);
  r.order = diff.order();
  const int v = diff.valuation();
  if (v < diff.order()) {
    const Rational e = diff.offset() + v;
    r.residual = "coefficient of q^" + e.get_str() + " is " + diff[v].get_str();
    r.pass = false;
    return;
  }
  r.residual = "0";
  r.pass = r.order >= order;
  if (!r.pass) r.residual = "0 (only to order " + std::to_string(r.order) + ")";
}

struct QSide {
  RationalSeries lambda;  // lambda(q)
  RationalSeries varpi0;  // varpi0(lambda(q))
};

QSide q_side(int order) {
  const RationalSeries lam = periods::lambda_q_series(order);
  return {lam, qseries::compose(periods::varpi0_series(order), lam)};
}

// (1 - lambda/2) varpi0^2 along lambda(q).
RationalSeries pi0_of_q(const QSide& s) {
  return (Rational(1) - Rational(1, 2) * s.lambda) * s.varpi0 * s.varpi0;
}

IdentityReport qt1(const IdentityOptions& o) {
  IdentityReport r = report("QT1", "2F1(1/2,1/2;1;z) = (1-z)^(-1/4) 2F1(1/4,1/4;1;-z^2/(4(1-z)))");
  const int n = o.order;
  const RationalSeries z = RationalSeries::variable(n);
  const RationalSeries one_minus = Rational(1) - z;
  const RationalSeries inner = Rational(-1, 4) * z * z / one_minus;
  const RationalSeries rhs =
      qseries::pow(one_minus, Rational(-1, 4)) *
      qseries::compose(hyp(Rational(1, 4), Rational(1, 4), n), inner);
  settle_exact(r, hyp(Rational(1, 2), Rational(1, 2), n), rhs, n);
  return r;
}

IdentityReport qt2(const IdentityOptions& o) {
  IdentityReport r = report("QT2", "2F1(1/4,1/4;1;z) = (1-z)^(-1/4) 2F1(1/8,3/8;1;-4z/(1-z)^2)");
  const int n = o.order;
  const RationalSeries z = RationalSeries::variable(n);
  const RationalSeries one_minus = Rational(1) - z;
  const RationalSeries inner = Rational(-4) * z / (one_minus * one_minus);
  const RationalSeries rhs =
      qseries::pow(one_minus, Rational(-1, 4)) *
      qseries::compose(hyp(Rational(1, 8), Rational(3, 8), n), inner);
  settle_exact(r, hyp(Rational(1, 4), Rational(1, 4), n), rhs, n);
  return r;
}

IdentityReport qt3(const IdentityOptions& o) {
  IdentityReport r = report("QT3",
                   "2F1(1/2,1/2;1;z) = (1-z/2)^(-1/2) 2F1(1/8,3/8;1;(1-z)z^2/(1-z/2)^4)");
  const int n = o.order;
  const RationalSeries z = RationalSeries::variable(n);
  const RationalSeries half = Rational(1) - Rational(1, 2) * z;
  const RationalSeries inner = (Rational(1) - z) * z * z / qseries::pow(half, 4);
  const RationalSeries rhs = qseries::pow(half, Rational(-1, 2)) *
                             qseries::compose(hyp(Rational(1, 8), Rational(3, 8), n), inner);
  settle_exact(r, hyp(Rational(1, 2), Rational(1, 2), n), rhs, n);
  return r;
}

IdentityReport theta_v(const IdentityOptions& o) {
  IdentityReport r = report("THETA-V", "varpi0(lambda(q)) = theta3(q)^2");
  const QSide s = q_side(o.order);
  const RationalSeries t3 = periods::theta3_series(o.order);
  settle_exact(r, s.varpi0, t3 * t3, o.order);
  return r;
}

IdentityReport theta_24(const IdentityOptions& o) {
  IdentityReport r = report("THETA-24",
                   "lambda varpi0^2 = theta2^4 and (1-lambda) varpi0^2 = theta4^4");
  const QSide s = q_side(o.order);
  const RationalSeries v2 = s.varpi0 * s.varpi0;
  const RationalSeries t2 = periods::theta2_series(o.order);
  const RationalSeries t4 = periods::theta4_series(o.order);
  IdentityReport a = r;
  IdentityReport b = r;
  settle_exact(a, s.lambda * v2, qseries::pow(t2, 4), o.order);
  settle_exact(b, (Rational(1) - s.lambda) * v2, qseries::pow(t4, 4), o.order);
  r = a.pass ? b : a;
  r.order = std::min(a.order, b.order);
  r.pass = a.pass && b.pass;
  return r;
}

IdentityReport dldtau(const IdentityOptions& o) {
  IdentityReport r = report("DLDTAU", "(1/(pi i)) dlambda/dtau = q dlambda/dq = lambda (1-lambda) varpi0^2");
  const QSide s = q_side(o.order);
  const RationalSeries lhs = qseries::derivative(s.lambda, qseries::DerivativeMode::theta);
  settle_exact(r, lhs, s.lambda * (Rational(1) - s.lambda) * s.varpi0 * s.varpi0, o.order);
  return r;
}

IdentityReport delta_lambda(const IdentityOptions& o) {
  IdentityReport r = report("DELTA-LAMBDA",
                   "eta(2 tau)^24 = (1/4) lambda^2 (1-lambda)^2 (lambda-2)^-6 Pi0^6, q = exp(pi i tau)");
  // Delta starts at q^2; two extra orders on the right keep the orders equal.
  const QSide s = q_side(o.order + 2);
  const RationalSeries pi0 = pi0_of_q(s);
  const RationalSeries om = Rational(1) - s.lambda;
  const RationalSeries rhs = Rational(1, 4) * s.lambda * s.lambda * om * om *
                             qseries::pow(pi0, 6) / qseries::pow(s.lambda - Rational(2), 6);
  settle_exact(r, qseries::eta_product(2, 24, o.order), rhs, o.order);
  return r;
}

IdentityReport bps(const IdentityOptions& o) {
  IdentityReport r = report("BPS",
                   "1/eta^24 = 4 (lambda-2)^6 / (lambda^2 (1-lambda)^2 Pi0^6) in the nome q^2");
  const int n = 2 * o.order + 4;
  const QSide s = q_side(n);
  const RationalSeries pi0 = pi0_of_q(s);
  const RationalSeries om = Rational(1) - s.lambda;
  const RationalSeries lhs_q = Rational(4) * qseries::pow(s.lambda - Rational(2), 6) /
                               (s.lambda * s.lambda * om * om * qseries::pow(pi0, 6));
  const RationalSeries lhs = qseries::decimate(lhs_q.normalized(), 2);
  settle_exact(r, periods::bps_series(o.order), lhs, o.order);
  return r;
}

void settle_numeric(IdentityReport& r, const PrecFloat& worst, const PrecFloat& tol,
                    const std::string& tol_text) {
  r.exact = false;
  r.residual = hyperfun::to_decimal_string(worst, kResidualDigits);
  r.tolerance = tol_text;
  r.pass = worst <= tol;
}

std::string tolerance_text(int exponent) { return "1e-" + std::to_string(exponent); }

IdentityReport delta_theta(const IdentityOptions& o) {
  IdentityReport r = report("DELTA-THETA", "eta(tau)^24 = 2^-8 (theta2 theta3 theta4)^8");
  std::vector<PrecComplex> taus = o.points;
  if (taus.empty()) {
    taus = {PrecComplex::i(), PrecComplex(Rational(1, 2)) + PrecComplex::i() * PrecFloat(1.5)};
  }
  PrecFloat worst = 0;
  for (const PrecComplex& tau : taus) {
    const PrecComplex lhs = hyperfun::pow(hyperfun::eta_value(tau), 24);
    const PrecComplex th = hyperfun::theta_const_tau(2, tau) * hyperfun::theta_const_tau(3, tau) *
                           hyperfun::theta_const_tau(4, tau);
    const PrecComplex rhs = hyperfun::pow(th, 8) / PrecFloat(256);
    worst = std::max(worst, PrecFloat(hyperfun::abs(lhs - rhs)));
    r.points.push_back(hyperfun::to_string(tau, kPointDigits));
  }
  const int e = hyperfun::WorkingPrecision::digits() - 20;
  settle_numeric(r, worst, hyperfun::pow10(e), tolerance_text(e));
  return r;
}

IdentityReport w_pi(const IdentityOptions& o) {
  IdentityReport r = report("W-PI", "W0(psi(lambda)) = Pi0(lambda) and W1(psi(lambda)) = Pi1(lambda)");
  std::vector<PrecComplex> lambdas = o.points;
  if (lambdas.empty()) {
    lambdas = {PrecComplex(Rational(1, 20)), PrecComplex(PrecFloat(0), PrecFloat(1) / 10),
               PrecComplex(PrecFloat(1) / 5, PrecFloat(-1) / 10)};
  }
  PrecFloat worst = 0;
  for (const PrecComplex& lam : lambdas) {
    const periods::QuadMapResult qm = periods::quad_map(lam);
    if (qm.psi_infinite || qm.t_infinite) {
      throw periods::PeriodsError("W-PI: lambda is a singular point of the quadratic map");
    }
    const periods::DworkPeriods w = periods::dwork_periods(qm.psi);
    const periods::PiTriple p = periods::pi_triple(lam);
    worst = std::max(worst, PrecFloat(hyperfun::abs(w.W0 - p.Pi0)));
    worst = std::max(worst, PrecFloat(hyperfun::abs(w.W1 - p.Pi1)));
    r.points.push_back(hyperfun::to_string(lam, kPointDigits));
  }
  const int e = hyperfun::WorkingPrecision::digits() - 15;
  settle_numeric(r, worst, hyperfun::pow10(e), tolerance_text(e));
  return r;
}

using Checker = std::function<IdentityReport(const IdentityOptions&)>;

const std::vector<std::pair<std::string, Checker>>& registry() {
  static const std::vector<std::pair<std::string, Checker>> r = {
      {"QT1", qt1},          {"QT2", qt2},
      {"QT3", qt3},          {"THETA-V", theta_v},
      {"THETA-24", theta_24}, {"DLDTAU", dldtau},
      {"DELTA-THETA", delta_theta}, {"DELTA-LAMBDA", delta_lambda},
      {"W-PI", w_pi},        {"BPS", bps},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

const std::vector<std::string>& exact_identity_ids() {
  static const std::vector<std::string> ids = {"QT1",    "QT2",          "QT3", "THETA-V",
                                               "THETA-24", "DLDTAU", "DELTA-LAMBDA", "BPS"};
  return ids;
}

IdentityReport check_identity(std::string_view id, const IdentityOptions& options) {
  if (options.order < 4) throw std::invalid_argument("identity order must be at least 4");
  for (const auto& [name, fn] : registry()) {
    if (name == id) return fn(options);
  }
  throw UnknownIdentity("unknown identity id '" + std::string(id) + "'");
}

MirrorMapCheck check_mirror_map(int count) {
  MirrorMapCheck out;
  out.summary.id = "MIRROR-MAP";
  out.summary.description = "W1/W0 at psi(lambda) = varpi1/varpi0, small-lambda branch";
  PrecFloat worst = 0;
  for (const PrecComplex& lam : periods::mirror_grid(count)) {
    const periods::QuadMapResult qm = periods::quad_map(lam);
    const periods::DworkPeriods w = periods::dwork_periods(qm.psi);
    const periods::LegendrePeriods l = periods::legendre_periods(lam);
    const periods::PiTriple p = periods::pi_triple(lam);
    MirrorPoint mp{lam, w.tau, l.tau, hyperfun::abs(w.tau - l.tau), w.W2 / p.Pi2};
    worst = std::max(worst, mp.residual);
    out.summary.points.push_back(hyperfun::to_string(lam, kPointDigits));
    out.points.push_back(std::move(mp));
  }
  const int e = hyperfun::WorkingPrecision::digits() - 20;
  settle_numeric(out.summary, worst, hyperfun::pow10(e), tolerance_text(e));
  return out;
}

}  // namespace k3mirror::identities
