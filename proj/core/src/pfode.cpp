#include "k3mirror/pfode.hpp"

#include <sstream>

namespace k3mirror::pfode {

using hyperfun::PrecFloat;

namespace {

Polynomial poly(std::vector<Rational> c) { return Polynomial(std::move(c)); }

// S(j, i), Stirling numbers of the second kind, 0 <= i <= j <= n.
std::vector<std::vector<long>> stirling2(int n) {
  std::vector<std::vector<long>> s(static_cast<std::size_t>(n + 1),
                                   std::vector<long>(static_cast<std::size_t>(n + 1), 0));
  s[0][0] = 1;
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= j; ++i) s[j][i] = i * s[j - 1][i] + s[j - 1][i - 1];
  }
  return s;
}

// p * s where p is exact: the product is known wherever s is, shifted by
// the lowest degree present in p.
RationalSeries poly_times(const Polynomial& p, const RationalSeries& s) {
  if (p.is_zero()) return RationalSeries({}, s.order(), s.offset());
  int low = 0;
  while (sgn(p.coeff(low)) == 0) ++low;
  const int n = s.order() + low;
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (int j = low; j <= p.degree(); ++j) {
    const Rational& pj = p.coeffs()[static_cast<std::size_t>(j)];
    if (sgn(pj) == 0) continue;
    for (int m = 0; m + j < n && m < s.order(); ++m) c[m + j] += pj * s[m];
  }
  return RationalSeries(std::move(c), n, s.offset());
}

RationalSeries divide_by_x(const RationalSeries& s) {
  std::vector<Rational> c(s.coeffs().begin(), s.coeffs().end());
  return RationalSeries(std::move(c), s.order(), s.offset() - 1);
}

// Falling factorial n (n - 1) ... (n - k + 1).
PrecFloat falling(long n, int k) {
  PrecFloat r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

FuchsianOperator::FuchsianOperator(std::vector<Polynomial> coeffs, std::string variable)
    : coeffs_(std::move(coeffs)), variable_(std::move(variable)) {
  if (coeffs_.size() < 2 || coeffs_.back().is_zero()) {
    throw OperatorError("operator needs order >= 1 and a nonzero leading coefficient");
  }
  Polynomial g;
  for (const auto& p : coeffs_) g = gcd(g, p);
  for (auto& p : coeffs_) p = exact_div(p, g);
  // One rational scale for all coefficients: integral, content 1, leading
  // coefficient of the leading polynomial positive.
  Integer den = 1;
  Integer num = 0;
  for (const auto& p : coeffs_) {
    for (const auto& c : p.coeffs()) den = lcm(den, Integer(c.get_den()));
  }
  for (const auto& p : coeffs_) {
    for (const auto& c : p.coeffs()) num = gcd(num, Integer(c.get_num() * (den / c.get_den())));
  }
  Rational scale = Rational(den) / Rational(num);
  if (sgn(coeffs_.back().leading()) < 0) scale = -scale;
  for (auto& p : coeffs_) p *= Polynomial(scale);
}

FuchsianOperator FuchsianOperator::from_theta_form(const std::vector<Polynomial>& theta_coeffs,
                                                   std::string variable) {
  const int n = static_cast<int>(theta_coeffs.size()) - 1;
  if (n < 1) throw OperatorError("theta-form operator needs order >= 1");
  const auto s = stirling2(n);
  std::vector<Polynomial> d(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= j; ++i) {
      if (s[j][i] == 0) continue;
      std::vector<Rational> xi(static_cast<std::size_t>(i + 1));
      xi[static_cast<std::size_t>(i)] = s[j][i];
      d[static_cast<std::size_t>(i)] += theta_coeffs[static_cast<std::size_t>(j)] * poly(xi);
    }
  }
  return FuchsianOperator(std::move(d), std::move(variable));
}

std::vector<PrecComplex> FuchsianOperator::singular_points() const { return roots(leading()); }

std::string FuchsianOperator::to_string() const {
  std::ostringstream os;
  for (int k = order(); k >= 0; --k) {
    if (coeff(k).is_zero()) continue;
    if (k != order()) os << " + ";
    os << "(" << coeff(k).to_string(variable_) << ")";
    if (k > 0) os << " D" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

FuchsianOperator legendre_operator() {
  return FuchsianOperator::from_theta_form(
      {poly({0, Rational(-1, 4)}), poly({0, -1}), poly({1, -1})}, "lambda");
}

FuchsianOperator dwork_d3() {
  return FuchsianOperator::from_theta_form({poly({0, Rational(-3, 32)}), poly({0, Rational(-11, 16)}),
                                            poly({0, Rational(-3, 2)}), poly({1, -1})},
                                           "t");
}

FuchsianOperator dwork_d2() {
  return FuchsianOperator::from_theta_form(
      {poly({0, Rational(-3, 64)}), poly({0, Rational(-1, 2)}), poly({1, -1})}, "t");
}

FuchsianOperator pullback_d2() {
  const Polynomial x = Polynomial::x();
  const Polynomial two_minus = poly({2, -1});
  const Polynomial p2 = x * poly({1, -1}) * two_minus * two_minus;
  const Polynomial p1 = two_minus * poly({2, -4, 1});
  const Polynomial p0 = poly({0, Rational(-3, 4)});
  return FuchsianOperator({p0, p1, p2}, "lambda");
}

FuchsianOperator pullback_d3() { return symmetric_square(pullback_d2()); }

RationalSeries apply_operator(const FuchsianOperator& L, const RationalSeries& s) {
  std::optional<RationalSeries> acc;
  RationalSeries dk = s;
  for (int k = 0; k <= L.order(); ++k) {
    if (k > 0) dk = qseries::derivative(dk);
    if (L.coeff(k).is_zero()) continue;
    const RationalSeries term = poly_times(L.coeff(k), dk);
    acc = acc ? *acc + term : term;
  }
  return *acc;
}

namespace {

LogSeries d_log(const LogSeries& s) {
  LogSeries r;
  const std::size_t n = s.parts.size();
  r.parts.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    RationalSeries d = qseries::derivative(s.parts[k]);
    if (k + 1 < n) d = d + Rational(static_cast<long>(k + 1)) * divide_by_x(s.parts[k + 1]);
    r.parts[k] = std::move(d);
  }
  return r;
}

}  // namespace

LogSeries apply_operator(const FuchsianOperator& L, const LogSeries& s) {
  if (s.parts.empty()) throw OperatorError("apply_operator: empty log-series");
  LogSeries acc;
  LogSeries dk = s;
  for (int k = 0; k <= L.order(); ++k) {
    if (k > 0) dk = d_log(dk);
    if (L.coeff(k).is_zero()) continue;
    for (std::size_t j = 0; j < dk.parts.size(); ++j) {
      const RationalSeries term = poly_times(L.coeff(k), dk.parts[j]);
      if (acc.parts.size() <= j) {
        acc.parts.push_back(term);
      } else {
        acc.parts[j] = acc.parts[j] + term;
      }
    }
  }
  return acc;
}

bool is_exact_zero(const LogSeries& s) {
  for (const auto& p : s.parts) {
    if (!p.is_zero()) return false;
  }
  return true;
}

int known_order(const LogSeries& s) {
  int n = -1;
  for (const auto& p : s.parts) {
    // Known exponents run below offset + order; report that bound.
    Integer fl;
    const Rational top = p.offset() + p.order();
    mpz_fdiv_q(fl.get_mpz_t(), top.get_num_mpz_t(), top.get_den_mpz_t());
    const int v = static_cast<int>(fl.get_si());
    n = n < 0 ? v : std::min(n, v);
  }
  return n;
}

std::vector<PrecComplex> apply_operator(const FuchsianOperator& L, const NumericTaylor& y) {
  const int len = static_cast<int>(y.c.size());
  const int n = L.order();
  if (len <= n) throw OperatorError("apply_operator: Taylor data too short for the operator order");
  std::vector<std::vector<PrecComplex>> a;
  for (int k = 0; k <= n; ++k) a.push_back(L.coeff(k).taylor_shift(y.center));
  std::vector<PrecComplex> r(static_cast<std::size_t>(len - n));
  for (int m = 0; m < len - n; ++m) {
    PrecComplex acc;
    for (int k = 0; k <= n; ++k) {
      const auto& ak = a[static_cast<std::size_t>(k)];
      for (int j = 0; j < static_cast<int>(ak.size()) && j <= m; ++j) {
        const int idx = m - j + k;
        acc += ak[static_cast<std::size_t>(j)] * y.c[static_cast<std::size_t>(idx)] *
               falling(idx, k);
      }
    }
    r[static_cast<std::size_t>(m)] = acc;
  }
  return r;
}

NumericTaylor local_solution(const FuchsianOperator& L, const PrecComplex& center,
                             const std::vector<PrecComplex>& derivs, int count) {
  const int n = L.order();
  if (static_cast<int>(derivs.size()) != n) {
    throw OperatorError("local_solution: need exactly order-many initial derivatives");
  }
  std::vector<std::vector<PrecComplex>> a;
  for (int k = 0; k <= n; ++k) a.push_back(L.coeff(k).taylor_shift(center));
  const PrecComplex lead = a[static_cast<std::size_t>(n)][0];
  if (lead.real() == 0 && lead.imag() == 0) {
    throw OperatorError("local_solution: center is a singular point");
  }
  NumericTaylor y{center, {}};
  y.c.resize(static_cast<std::size_t>(std::max(count, n)));
  PrecFloat fact = 1;
  for (int i = 0; i < n; ++i) {
    if (i > 0) fact *= i;
    y.c[static_cast<std::size_t>(i)] = derivs[static_cast<std::size_t>(i)] / fact;
  }
  for (int m = 0; m + n < static_cast<int>(y.c.size()); ++m) {
    PrecComplex acc;
    for (int k = 0; k <= n; ++k) {
      const auto& ak = a[static_cast<std::size_t>(k)];
      for (int j = 0; j < static_cast<int>(ak.size()); ++j) {
        if (k == n && j == 0) continue;
        const int idx = m - j + k;
        if (idx < 0) continue;
        acc += ak[static_cast<std::size_t>(j)] * y.c[static_cast<std::size_t>(idx)] *
               falling(idx, k);
      }
    }
    y.c[static_cast<std::size_t>(m + n)] = -acc / (lead * falling(m + n, n));
  }
  return y;
}

FuchsianOperator symmetric_square(const FuchsianOperator& L2) {
  if (L2.order() != 2) throw OperatorError("symmetric_square: operator must have order 2");
  const Polynomial& p2 = L2.coeff(2);
  const Polynomial& p1 = L2.coeff(1);
  const Polynomial& p0 = L2.coeff(0);
  const Polynomial q3 = p2 * p2 * p2;
  const Polynomial q2 = Polynomial(3) * p1 * p2 * p2;
  const Polynomial q1 = Polynomial(2) * p1 * p1 * p2 +
                        (p1.derivative() * p2 - p1 * p2.derivative()) * p2 +
                        Polynomial(4) * p0 * p2 * p2;
  const Polynomial q0 = Polynomial(4) * p1 * p0 * p2 +
                        Polynomial(2) * (p0.derivative() * p2 - p0 * p2.derivative()) * p2;
  return FuchsianOperator({q0, q1, q2, q3}, L2.variable());
}

std::string RationalFunction::to_string(const std::string& var) const {
  if (den.degree() == 0 && den.leading() == 1) return num.to_string(var);
  return "(" + num.to_string(var) + ")/(" + den.to_string(var) + ")";
}

std::optional<RationalFunction> proportionality_factor(const FuchsianOperator& a,
                                                       const FuchsianOperator& b) {
  if (a.order() != b.order()) return std::nullopt;
  const Polynomial& an = a.leading();
  const Polynomial& bn = b.leading();
  for (int k = 0; k < a.order(); ++k) {
    if (!(a.coeff(k) * bn == b.coeff(k) * an)) return std::nullopt;
  }
  const Polynomial g = gcd(an, bn);
  Polynomial num = exact_div(an, g);
  Polynomial den = exact_div(bn, g);
  const Rational lead = den.leading();
  num *= Polynomial(Rational(1) / lead);
  den = den.monic();
  return RationalFunction{num, den};
}

}  // namespace k3mirror::pfode
