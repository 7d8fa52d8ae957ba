#pragma once

// Point counts and zeta factors over finite fields.
//
// Elliptic curves: the Legendre fiber y^2 = x(x-1)(x-lambda) and the model
// y^2 = x^3 - x. K3: the Fermat quartic x0^4 + x1^4 + x2^4 + x3^4 = 0, whose
// transcendental factor is 1 - b_p T + p^2 T^2 with b_p the coefficients of
// eta(4z)^6.

#include <optional>
#include <stdexcept>
#include <vector>

#include "k3mirror/qseries.hpp"

namespace k3mirror::arith {

class BadReduction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ArithError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr long kDefaultQuarticBound = 101;

bool is_prime(long n);
std::vector<long> primes_up_to(long bound);

// a_p = -sum_x chi(x(x-1)(x-lambda)); throws BadReduction for p = 2, for
// lambda not p-integral, or for lambda = 0, 1 mod p.
long ap_legendre(const Rational& lambda, long p);
// a_p of y^2 = x^3 - x, p odd.
long ap_minimal(long p);
// Coefficient of q^p in eta(4z)^6; cached, safe to call concurrently.
long bp_eta(long p);
// 0 for even n, otherwise the character mod 16 with chi(5) = 1, chi(15) = -1.
int chi16(long n);
// Projective points over F_p by exhaustive enumeration of the affine charts.
long fermat_quartic_count(long p, long bound = kDefaultQuarticBound);

struct ZetaRecord {
  long p = 0;
  Rational lambda;
  long a_p = 0;
  long b_p = 0;
  std::vector<long> elliptic;     // 1 - a_p T + p T^2, lowest degree first
  std::vector<long> sym2;         // (1 - pT)(1 - (a_p^2 - 2p) T + p^2 T^2)
  std::vector<long> k3;           // 1 - b_p T + p^2 T^2
  bool weil_ok = false;           // |a_p| <= 2 sqrt(p) and reciprocal-root moduli
  std::optional<bool> sym2_match; // b_p == a_p^2 - 2p, lambda = 2 only
  std::optional<long> fermat_count;
  // N_p = 1 + 20p + b_p + p^2, stated for p = 1 mod 8 only.
  std::optional<long> fermat_prediction;
};

ZetaRecord zeta_record(const Rational& lambda, long p);

// Records for every odd prime p <= pmax of good reduction, in increasing p.
// Fermat counts are attached for p <= quartic_bound (0 disables them).
std::vector<ZetaRecord> zeta_table(const Rational& lambda, long pmax, long quartic_bound = 0);

}  // namespace k3mirror::arith
