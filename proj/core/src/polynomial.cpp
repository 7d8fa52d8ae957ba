#include "k3mirror/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace k3mirror::pfode {

using hyperfun::PrecFloat;

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

Polynomial Polynomial::x() { return Polynomial(std::vector<Rational>{0, 1}); }

Polynomial Polynomial::from_roots(const std::vector<Rational>& roots, const Rational& scale) {
  Polynomial p(scale);
  for (const Rational& r : roots) p *= Polynomial(std::vector<Rational>{-r, 1});
  return p;
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<std::size_t>(k)];
}

const Rational& Polynomial::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return c_.back();
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PrecComplex Polynomial::operator()(const PrecComplex& x) const {
  PrecComplex acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + PrecComplex(*it);
  return acc;
}

std::vector<PrecComplex> Polynomial::taylor_shift(const PrecComplex& x0) const {
  // Repeated synthetic division by (x - x0).
  std::vector<PrecComplex> a;
  a.reserve(c_.size());
  for (const Rational& c : c_) a.emplace_back(c);
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) a[j - 1] += a[j] * x0;
  }
  return a;
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  Polynomial p = *this;
  const Rational lead = leading();
  for (auto& c : p.c_) c /= lead;
  return p;
}

Polynomial Polynomial::primitive() const {
  if (c_.empty()) return {};
  Integer den = 1;
  for (const auto& c : c_) den = lcm(den, Integer(c.get_den()));
  Integer g = 0;
  for (const auto& c : c_) g = gcd(g, Integer(c.get_num() * (den / c.get_den())));
  Rational scale = Rational(den) / Rational(g);
  if (sgn(leading()) < 0) scale = -scale;
  Polynomial p = *this;
  for (auto& c : p.c_) c *= scale;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    const Rational a = sgn(c) < 0 ? Rational(-c) : c;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1 && k > 0;
    if (!unit) os << a.get_str();
    if (k > 0) os << (unit ? "" : "*") << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) return {Polynomial(), a};
  std::vector<Rational> q(static_cast<std::size_t>(dq + 1));
  for (int k = dq; k >= 0; --k) {
    const Rational f = rem[static_cast<std::size_t>(k + db)] / b.leading();
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeff(j);
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  return exact_div(p, gcd(p, p.derivative())).monic();
}

std::vector<PrecComplex> roots(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  const Polynomial f = squarefree_part(p);
  const int n = f.degree();
  if (n <= 0) return {};
  const Polynomial df = f.derivative();
  std::vector<PrecComplex> z;
  if (n == 1) {
    z.emplace_back(Rational(-f.coeff(0)));
  } else {
    // Aberth-Ehrlich from points on a circle of the Cauchy radius.
    PrecFloat radius = 1;
    for (int k = 0; k < n; ++k) {
      radius = std::max(radius, PrecFloat(1 + hyperfun::to_prec(abs(f.coeff(k)))));
    }
    const PrecFloat two_pi = 2 * hyperfun::pi();
    for (int k = 0; k < n; ++k) {
      const PrecFloat angle = two_pi * k / n + PrecFloat(4) / 10;
      z.emplace_back(radius * boost::multiprecision::cos(angle),
                     radius * boost::multiprecision::sin(angle));
    }
    const PrecFloat eps = hyperfun::summation_epsilon();
    for (int iter = 0; iter < 1000; ++iter) {
      PrecFloat worst = 0;
      for (int i = 0; i < n; ++i) {
        const PrecComplex ratio = f(z[i]) / df(z[i]);
        PrecComplex s;
        for (int j = 0; j < n; ++j) {
          if (j != i) s += PrecComplex(1) / (z[i] - z[j]);
        }
        const PrecComplex w = ratio / (PrecComplex(1) - ratio * s);
        z[i] -= w;
        worst = std::max(worst, PrecFloat(hyperfun::abs(w)));
      }
      if (worst < eps) break;
    }
  }
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) r -= f(r) / df(r);
    // Snap values that are real to working precision.
    if (boost::multiprecision::abs(r.imag()) < hyperfun::summation_epsilon()) {
      r = PrecComplex(r.real());
    }
  }
  std::sort(z.begin(), z.end(), [](const PrecComplex& a, const PrecComplex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return z;
}

}  // namespace k3mirror::pfode
