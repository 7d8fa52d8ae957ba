#include "k3mirror/qseries.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace k3mirror::qseries {

namespace {

bool is_integer(const Rational& r) { return r.get_den() == 1; }

int to_int(const Rational& r) {
  if (!is_integer(r) || !r.get_num().fits_sint_p()) {
    throw SeriesError("offset difference is not a machine integer");
  }
  return static_cast<int>(r.get_num().get_si());
}

void require_order(int order, const char* what) {
  if (order < 1) {
    throw SeriesError(std::string(what) + ": resulting truncation order below 1");
  }
}

// Product of two dense coefficient vectors, keeping `n` terms.
std::vector<Rational> mul_truncated(std::span<const Rational> a,
                                    std::span<const Rational> b, int n) {
  std::vector<Rational> c(static_cast<std::size_t>(n));
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  for (int i = 0; i < std::min(na, n); ++i) {
    if (sgn(a[i]) == 0) continue;
    const int jmax = std::min(nb, n - i);
    for (int j = 0; j < jmax; ++j) {
      if (sgn(b[j]) == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

// Integer offset >= 0 folded into the coefficient vector.
RationalSeries at_offset_zero(const RationalSeries& a, const char* what) {
  if (!is_integer(a.offset()) || sgn(a.offset()) < 0) {
    throw SeriesError(std::string(what) + ": requires a nonnegative integer offset");
  }
  return a.with_offset(0);
}

}  // namespace

RationalSeries::RationalSeries(std::vector<Rational> coeffs, int order, Rational offset)
    : coeffs_(std::move(coeffs)), offset_(std::move(offset)) {
  if (order < 0) throw SeriesError("series order must be nonnegative");
  coeffs_.resize(static_cast<std::size_t>(order));
  offset_.canonicalize();
  for (auto& c : coeffs_) c.canonicalize();
}

RationalSeries RationalSeries::constant(const Rational& c, int order) {
  return RationalSeries({c}, order);
}

RationalSeries RationalSeries::variable(int order) {
  return RationalSeries({0, 1}, order);
}

RationalSeries RationalSeries::monomial(const Rational& c, int shift, int order) {
  std::vector<Rational> v(static_cast<std::size_t>(std::max(order, 0)));
  if (shift >= 0 && shift < order) v[shift] = c;
  return RationalSeries(std::move(v), order);
}

const Rational& RationalSeries::operator[](int shift) const {
  if (shift < 0 || shift >= order()) {
    throw SeriesError("coefficient at shift " + std::to_string(shift) +
                      " is beyond the truncation order " + std::to_string(order()));
  }
  return coeffs_[static_cast<std::size_t>(shift)];
}

Rational RationalSeries::coefficient_of(const Rational& exponent) const {
  Rational shift = exponent - offset_;
  if (!is_integer(shift)) return 0;
  if (sgn(shift) < 0) return 0;
  return (*this)[to_int(shift)];
}

int RationalSeries::valuation() const noexcept {
  for (int k = 0; k < order(); ++k) {
    if (sgn(coeffs_[k]) != 0) return k;
  }
  return order();
}

RationalSeries RationalSeries::truncated(int new_order) const {
  if (new_order > order()) {
    throw SeriesError("cannot extend a series beyond its known order");
  }
  return RationalSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + new_order),
                        new_order, offset_);
}

RationalSeries RationalSeries::normalized() const {
  const int v = valuation();
  if (v == 0 || v == order()) return *this;
  return RationalSeries(std::vector<Rational>(coeffs_.begin() + v, coeffs_.end()),
                        order() - v, offset_ + v);
}

RationalSeries RationalSeries::with_offset(const Rational& offset) const {
  const Rational diff = offset_ - offset;
  if (!is_integer(diff) || sgn(diff) < 0) {
    throw SeriesError("with_offset: new offset must lie a nonnegative integer below the old");
  }
  const int d = to_int(diff);
  if (d == 0) return *this;
  std::vector<Rational> v(static_cast<std::size_t>(d));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return RationalSeries(std::move(v), order() + d, offset);
}

RationalSeries RationalSeries::operator-() const {
  RationalSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RationalSeries& RationalSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool operator==(const RationalSeries& a, const RationalSeries& b) {
  return a.offset_ == b.offset_ && a.coeffs_ == b.coeffs_;
}

std::string RationalSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < order(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    os << Rational(abs(c)).get_str() << "*q^" << Rational(offset_ + k).get_str();
  }
  if (first) os << "0";
  os << " + O(q^" << Rational(offset_ + order()).get_str() << ")";
  return os.str();
}

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
  const Rational diff = a.offset() - b.offset();
  if (!is_integer(diff)) {
    throw SeriesError("cannot add series whose offsets differ by a non-integer");
  }
  const Rational base = sgn(diff) < 0 ? a.offset() : b.offset();
  const int da = to_int(a.offset() - base);
  const int db = to_int(b.offset() - base);
  const int n = std::min(a.order() + da, b.order() + db);
  require_order(n, "add");
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    if (k >= da) c[k] += a[k - da];
    if (k >= db) c[k] += b[k - db];
  }
  return RationalSeries(std::move(c), n, base);
}

RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) { return a + (-b); }

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
  const int n = std::min(a.order() + b.valuation(), b.order() + a.valuation());
  require_order(n, "mul");
  return RationalSeries(mul_truncated(a.coeffs(), b.coeffs(), n), n, a.offset() + b.offset());
}

RationalSeries operator/(const RationalSeries& a, const RationalSeries& b) {
  return a * reciprocal(b.normalized());
}

RationalSeries operator*(const Rational& c, RationalSeries a) { return a *= c; }
RationalSeries operator*(RationalSeries a, const Rational& c) { return a *= c; }

namespace {

// A constant known far enough to never limit the order of a sum with `a`.
RationalSeries constant_like(const Rational& c, const RationalSeries& a) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), a.offset().get_num_mpz_t(), a.offset().get_den_mpz_t());
  const long n = std::max<long>(1, a.order() + fl.get_si());
  return RationalSeries::constant(c, static_cast<int>(n));
}

}  // namespace

RationalSeries operator+(const RationalSeries& a, const Rational& c) {
  return a + constant_like(c, a);
}
RationalSeries operator+(const Rational& c, const RationalSeries& a) { return a + c; }
RationalSeries operator-(const RationalSeries& a, const Rational& c) { return a + Rational(-c); }
RationalSeries operator-(const Rational& c, const RationalSeries& a) { return (-a) + c; }

RationalSeries reciprocal(const RationalSeries& a) {
  if (a.order() < 1 || sgn(a[0]) == 0) {
    throw SeriesError("reciprocal: leading coefficient is zero");
  }
  const int n = a.order();
  const Rational inv = 1 / a[0];
  std::vector<Rational> b(static_cast<std::size_t>(n));
  b[0] = inv;
  for (int k = 1; k < n; ++k) {
    Rational s;
    for (int i = 1; i <= k; ++i) {
      if (sgn(a[i]) != 0) s += a[i] * b[k - i];
    }
    b[k] = -s * inv;
  }
  return RationalSeries(std::move(b), n, -a.offset());
}

RationalSeries derivative(const RationalSeries& a, DerivativeMode mode) {
  const int n = a.order();
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) c[k] = (a.offset() + k) * a[k];
  if (mode == DerivativeMode::theta) return RationalSeries(std::move(c), n, a.offset());
  if (sgn(a.offset()) == 0) {
    // d/dq of a power series stays a power series; the q^-1 slot is exactly zero.
    if (n < 2) throw SeriesError("derivative: series too short");
    c.erase(c.begin());
    return RationalSeries(std::move(c), n - 1, 0);
  }
  return RationalSeries(std::move(c), n, a.offset() - 1);
}

RationalSeries pow(const RationalSeries& a, int exponent) {
  const RationalSeries u = a.normalized();
  if (u.order() < 1 || sgn(u[0]) == 0) {
    throw SeriesError("pow: series has no known nonzero coefficient");
  }
  if (exponent == 0) return RationalSeries::constant(1, u.order());
  RationalSeries base = exponent < 0 ? reciprocal(u) : u;
  unsigned e = static_cast<unsigned>(exponent < 0 ? -static_cast<long>(exponent) : exponent);
  RationalSeries result = RationalSeries::constant(1, base.order());
  while (true) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e == 0) break;
    base = base * base;
  }
  return result;
}

RationalSeries pow(const RationalSeries& a, const Rational& exponent) {
  if (exponent.get_den() == 1 && exponent.get_num().fits_sint_p()) {
    return pow(a, static_cast<int>(exponent.get_num().get_si()));
  }
  const RationalSeries u = a.normalized();
  if (u.order() < 1 || u[0] != 1) {
    throw SeriesError("rational pow: leading coefficient must be 1");
  }
  RationalSeries unit(std::vector<Rational>(u.coeffs().begin(), u.coeffs().end()), u.order());
  RationalSeries r = exp(exponent * log(unit));
  return RationalSeries(std::vector<Rational>(r.coeffs().begin(), r.coeffs().end()), r.order(),
                        u.offset() * exponent);
}

RationalSeries exp(const RationalSeries& a) {
  const RationalSeries f = at_offset_zero(a, "exp");
  const int n = f.order();
  if (n < 1) throw SeriesError("exp: empty series");
  if (sgn(f[0]) != 0) throw SeriesError("exp: constant term must be zero");
  std::vector<Rational> e(static_cast<std::size_t>(n));
  e[0] = 1;
  for (int k = 1; k < n; ++k) {
    Rational s;
    for (int j = 1; j <= k; ++j) {
      if (sgn(f[j]) != 0) s += j * f[j] * e[k - j];
    }
    e[k] = s / k;
  }
  return RationalSeries(std::move(e), n);
}

RationalSeries log(const RationalSeries& a) {
  if (sgn(a.offset()) != 0 || a.order() < 1 || a[0] != 1) {
    throw SeriesError("log: series must be 1 + O(q) at offset 0");
  }
  const int n = a.order();
  std::vector<Rational> l(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    Rational s = k * a[k];
    for (int j = 1; j < k; ++j) {
      if (sgn(a[k - j]) != 0) s -= j * l[j] * a[k - j];
    }
    l[k] = s / k;
  }
  return RationalSeries(std::move(l), n);
}

RationalSeries compose(const RationalSeries& outer, const RationalSeries& inner) {
  const RationalSeries f = at_offset_zero(outer, "compose (outer)");
  const RationalSeries g = at_offset_zero(inner, "compose (inner)");
  if (g.order() < 1 || sgn(g[0]) != 0) {
    throw SeriesError("compose: inner series must have zero constant term");
  }
  const int vg = g.valuation();
  int first = f.order();
  for (int k = 1; k < f.order(); ++k) {
    if (sgn(f[k]) != 0) { first = k; break; }
  }
  long target = static_cast<long>(vg) * f.order();
  if (first < f.order()) {
    target = std::min<long>(target, static_cast<long>(g.order()) + static_cast<long>(vg) * (first - 1));
  }
  const int n = static_cast<int>(target);
  require_order(n, "compose");

  std::vector<Rational> result(static_cast<std::size_t>(n));
  result[0] = f[0];
  std::vector<Rational> power{Rational(1)};
  for (int k = 1; k < f.order() && static_cast<long>(k) * vg < n; ++k) {
    power = mul_truncated(power, g.coeffs(), n);
    if (sgn(f[k]) == 0) continue;
    for (int i = 0; i < n; ++i) {
      if (sgn(power[i]) != 0) result[i] += f[k] * power[i];
    }
  }
  return RationalSeries(std::move(result), n);
}

RationalSeries revert(const RationalSeries& a) {
  const RationalSeries f = at_offset_zero(a, "revert");
  if (f.order() < 2 || sgn(f[0]) != 0 || sgn(f[1]) == 0) {
    throw SeriesError("revert: need zero constant term and nonzero linear coefficient");
  }
  const int n = f.order();
  // Lagrange inversion: [q^k] b = (1/k) [x^(k-1)] (x / f(x))^k.
  std::vector<Rational> u(f.coeffs().begin() + 1, f.coeffs().end());
  const RationalSeries w = reciprocal(RationalSeries(u, n - 1));
  std::vector<Rational> b(static_cast<std::size_t>(n));
  std::vector<Rational> power{Rational(1)};
  for (int k = 1; k < n; ++k) {
    power = mul_truncated(power, w.coeffs(), n - 1);
    b[k] = power[k - 1] / k;
  }
  return RationalSeries(std::move(b), n);
}

RationalSeries substitute_power(const RationalSeries& a, int k) {
  if (k < 1) throw SeriesError("substitute_power: k must be positive");
  const int n = a.order() * k;
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (int j = 0; j < a.order(); ++j) c[j * k] = a[j];
  return RationalSeries(std::move(c), n, a.offset() * k);
}

RationalSeries decimate(const RationalSeries& a, int k) {
  if (k < 1) throw SeriesError("decimate: k must be positive");
  // Align so that the stored exponents start on a multiple of k.
  Rational scaled = a.offset() / k;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const Rational rem = a.offset() - Rational(fl) * k;
  if (!is_integer(rem)) {
    // Exponents are offset + j; none are multiples of k unless offset is
    // congruent to an integer.
    throw SeriesError("decimate: offset is not compatible with q^k");
  }
  const RationalSeries b = a.with_offset(Rational(fl) * k);
  std::vector<Rational> c;
  for (int j = 0; j < b.order(); ++j) {
    if (j % k == 0) {
      c.push_back(b[j]);
    } else if (sgn(b[j]) != 0) {
      throw SeriesError("decimate: series is not a function of q^" + std::to_string(k));
    }
  }
  const int n = static_cast<int>(c.size());
  return RationalSeries(std::move(c), n, Rational(fl)).normalized();
}

RationalSeries eta_product(int m, int e, int order) {
  if (m < 1) throw SeriesError("eta_product: m must be positive");
  if (order < 1) throw SeriesError("eta_product: order must be at least 1");
  const Rational offset(Rational(m) * e / 24);
  if (e == 0) return RationalSeries({1}, order, offset);
  // prod (1 - q^{mn}) as a dense polynomial truncated at `order`.
  std::vector<Rational> p(static_cast<std::size_t>(order));
  p[0] = 1;
  for (int step = m; step < order; step += m) {
    for (int i = order - 1; i >= step; --i) {
      if (sgn(p[i - step]) != 0) p[i] -= p[i - step];
    }
  }
  RationalSeries r = pow(RationalSeries(std::move(p), order), e);
  return RationalSeries(std::vector<Rational>(r.coeffs().begin(), r.coeffs().end()), r.order(),
                        offset);
}

}  // namespace k3mirror::qseries
