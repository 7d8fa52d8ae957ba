#include "k3mirror/arith.hpp"

#include <cmath>
#include <mutex>

#include "k3mirror/hyperfun.hpp"

namespace k3mirror::arith {

namespace {

// chi(v) for v in [0, p): +1 on nonzero squares, -1 on nonsquares, 0 at 0.
std::vector<int> quadratic_character(long p) {
  std::vector<int> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (long x = 1; x < p; ++x) chi[static_cast<std::size_t>(x * x % p)] = 1;
  return chi;
}

long mod(long a, long p) {
  const long r = a % p;
  return r < 0 ? r + p : r;
}

long reduce_rational(const Rational& r, long p) {
  const Integer P = p;
  Integer den = r.get_den();
  if (den % P == 0) return -1;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  Integer v = r.get_num() * inv;
  mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
  return v.get_si();
}

void require_odd_prime(long p, const char* what) {
  if (p == 2) throw BadReduction(std::string(what) + ": p = 2 is a bad prime");
  if (!is_prime(p)) throw ArithError(std::string(what) + ": " + std::to_string(p) + " is not prime");
}

long trace_of_cubic(long p, long c2, long c1, long c0) {
  const auto chi = quadratic_character(p);
  long s = 0;
  for (long x = 0; x < p; ++x) {
    const long v = mod(((x * x % p) * x + c2 * (x * x % p) + c1 * x + c0) % p, p);
    s += chi[static_cast<std::size_t>(v)];
  }
  return -s;
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  for (long n = 2; n <= bound; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

long ap_legendre(const Rational& lambda, long p) {
  require_odd_prime(p, "ap_legendre");
  const long l = reduce_rational(lambda, p);
  if (l < 0) throw BadReduction("ap_legendre: lambda is not integral at p = " + std::to_string(p));
  if (l == 0 || l == 1) {
    throw BadReduction("ap_legendre: lambda = 0 or 1 mod " + std::to_string(p));
  }
  // x(x-1)(x-l) = x^3 - (1+l) x^2 + l x
  return trace_of_cubic(p, -(1 + l), l, 0);
}

long ap_minimal(long p) {
  require_odd_prime(p, "ap_minimal");
  return trace_of_cubic(p, 0, -1, 0);
}

long bp_eta(long p) {
  if (p < 1) throw ArithError("bp_eta: p must be positive");
  static std::mutex lock;
  static qseries::RationalSeries cache;
  std::lock_guard<std::mutex> guard(lock);
  // eta(4z)^6 = q * prod (1 - q^(4n))^6; coefficient of q^p sits at shift p - 1.
  if (cache.order() < p) {
    int order = 64;
    while (order < p) order *= 2;
    cache = qseries::eta_product(4, 6, order);
  }
  const Rational& c = cache[static_cast<int>(p - 1)];
  return c.get_num().get_si();
}

int chi16(long n) {
  if (n % 2 == 0) return 0;
  // (Z/16)^* = <5> x <-1>; chi(5) = 1 and chi(15) = chi(-1) = -1, so chi is
  // the character of conductor 4: +1 on 1 mod 4, -1 on 3 mod 4.
  return mod(n, 4) == 1 ? 1 : -1;
}

long fermat_quartic_count(long p, long bound) {
  if (!is_prime(p)) throw ArithError("fermat_quartic_count: " + std::to_string(p) + " is not prime");
  if (p > bound) {
    throw ArithError("fermat_quartic_count: p = " + std::to_string(p) + " exceeds the bound " +
                     std::to_string(bound));
  }
  std::vector<long> f(static_cast<std::size_t>(p));
  for (long x = 0; x < p; ++x) {
    const long s = x * x % p;
    f[static_cast<std::size_t>(x)] = s * s % p;
  }
  long count = 0;
  // x0 = 1
  for (long a = 0; a < p; ++a) {
    for (long b = 0; b < p; ++b) {
      const long partial = (1 + f[a] + f[b]) % p;
      for (long c = 0; c < p; ++c) {
        if ((partial + f[c]) % p == 0) ++count;
      }
    }
  }
  // x0 = 0, x1 = 1
  for (long b = 0; b < p; ++b) {
    for (long c = 0; c < p; ++c) {
      if ((1 + f[b] + f[c]) % p == 0) ++count;
    }
  }
  // x0 = x1 = 0, x2 = 1
  for (long c = 0; c < p; ++c) {
    if ((1 + f[c]) % p == 0) ++count;
  }
  // (0 : 0 : 0 : 1) never lies on the surface.
  return count;
}

ZetaRecord zeta_record(const Rational& lambda, long p) {
  ZetaRecord r;
  r.p = p;
  r.lambda = lambda;
  r.a_p = ap_legendre(lambda, p);
  r.b_p = bp_eta(p);
  r.elliptic = {1, -r.a_p, p};
  const long s = r.a_p * r.a_p - 2 * p;
  // (1 - pT)(1 - sT + p^2 T^2)
  r.sym2 = {1, -s - p, p * s + p * p, -p * p * p};
  r.k3 = {1, -r.b_p, p * p};

  // Reciprocal roots: alpha^2 - a_p alpha + p (modulus sqrt p) and
  // beta^2 - b_p beta + p^2 (modulus p).
  bool ok = r.a_p * r.a_p <= 4 * p;
  {
    hyperfun::WorkingPrecision prec(40);
    const auto modulus_gap = [](long trace, long norm, double expected_sq) {
      const hyperfun::PrecFloat disc = hyperfun::PrecFloat(trace) * trace - 4 * hyperfun::PrecFloat(norm);
      hyperfun::PrecFloat worst = 0;
      if (disc <= 0) {
        const hyperfun::PrecFloat re = hyperfun::PrecFloat(trace) / 2;
        const hyperfun::PrecFloat im = boost::multiprecision::sqrt(-disc) / 2;
        worst = boost::multiprecision::abs(boost::multiprecision::sqrt(re * re + im * im) -
                                           boost::multiprecision::sqrt(hyperfun::PrecFloat(expected_sq)));
      } else {
        const hyperfun::PrecFloat sq = boost::multiprecision::sqrt(disc);
        for (int sign : {-1, 1}) {
          const hyperfun::PrecFloat root = (hyperfun::PrecFloat(trace) + sign * sq) / 2;
          worst = std::max(worst, hyperfun::PrecFloat(boost::multiprecision::abs(
                                      boost::multiprecision::abs(root) -
                                      boost::multiprecision::sqrt(hyperfun::PrecFloat(expected_sq)))));
        }
      }
      return worst;
    };
    const hyperfun::PrecFloat tol = hyperfun::pow10(20);
    ok = ok && modulus_gap(r.a_p, p, static_cast<double>(p)) < tol;
    ok = ok && modulus_gap(r.b_p, p * p, static_cast<double>(p) * static_cast<double>(p)) < tol;
  }
  r.weil_ok = ok;
  if (lambda == 2) r.sym2_match = (r.b_p == s);
  if (p % 8 == 1) r.fermat_prediction = 1 + 20 * p + r.b_p + p * p;
  return r;
}

std::vector<ZetaRecord> zeta_table(const Rational& lambda, long pmax, long quartic_bound) {
  std::vector<ZetaRecord> out;
  for (long p : primes_up_to(pmax)) {
    if (p == 2) continue;
    ZetaRecord r;
    try {
      r = zeta_record(lambda, p);
    } catch (const BadReduction&) {
      continue;
    }
    if (p <= quartic_bound) r.fermat_count = fermat_quartic_count(p, quartic_bound);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace k3mirror::arith
