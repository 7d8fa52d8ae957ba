#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "k3mirror/arith.hpp"
#include "k3mirror/qseries.hpp"
#include "oracles.hpp"

namespace k3mirror {
namespace {

TEST(Arith, ApLegendreSmallPrimes) {
  EXPECT_EQ(arith::ap_legendre(2, 5), -2);
  EXPECT_EQ(arith::ap_legendre(2, 7), 0);
  EXPECT_EQ(5 + 1 - arith::ap_legendre(2, 5), 8);
}

TEST(Arith, ApLegendreMatchesPairEnumeration) {
  for (long p : arith::primes_up_to(60)) {
    if (p == 2) continue;
    for (long l = 2; l < p; ++l) {
      EXPECT_EQ(p + 1 - arith::ap_legendre(l, p), oracle::legendre_points(l, p)) << p << " " << l;
    }
  }
}

TEST(Arith, BadReduction) {
  EXPECT_THROW(arith::ap_legendre(2, 2), arith::BadReduction);
  EXPECT_THROW(arith::ap_legendre(6, 5), arith::BadReduction);   // 6 = 1 mod 5
  EXPECT_THROW(arith::ap_legendre(Rational(1, 3), 3), arith::BadReduction);
  EXPECT_THROW(arith::ap_legendre(2, 9), arith::ArithError);
}

TEST(Arith, RationalLambdaReducesModP) {
  // 1/2 = 4 mod 7
  EXPECT_EQ(arith::ap_legendre(Rational(1, 2), 7), arith::ap_legendre(4, 7));
}

TEST(Arith, BpFromEtaProduct) {
  EXPECT_EQ(arith::bp_eta(5), -6);
  EXPECT_EQ(arith::bp_eta(3), 0);
  EXPECT_EQ(arith::bp_eta(13), 10);
  EXPECT_EQ(arith::bp_eta(17), -30);
  const auto x = oracle::euler_product_power(6, 30);
  for (long p : arith::primes_up_to(110)) {
    if (p == 2) continue;
    const long expect = (p % 4 == 1) ? x[(p - 1) / 4].get_si() : 0;
    EXPECT_EQ(arith::bp_eta(p), expect) << p;
  }
}

TEST(Arith, Chi16) {
  EXPECT_EQ(arith::chi16(5), 1);
  EXPECT_EQ(arith::chi16(15), -1);
  EXPECT_EQ(arith::chi16(3), -1);
  EXPECT_EQ(arith::chi16(8), 0);
  for (long a = -40; a <= 40; ++a) {
    EXPECT_EQ(arith::chi16(a), arith::chi16(a + 16)) << a;
    for (long b = 1; b <= 40; ++b) EXPECT_EQ(arith::chi16(a * b), arith::chi16(a) * arith::chi16(b)) << a << " " << b;
  }
}

TEST(Arith, FermatCountsAgainstConeOracle) {
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 41L}) {
    EXPECT_EQ(arith::fermat_quartic_count(p), oracle::fermat_points_cone(p)) << p;
  }
  EXPECT_EQ(arith::fermat_quartic_count(17), 600);
  EXPECT_EQ(arith::fermat_quartic_count(41), 2520);
}

TEST(Arith, FermatCountsMatchModularDecomposition) {
  for (long p : {17L, 41L, 73L, 89L, 97L}) {
    EXPECT_EQ(arith::fermat_quartic_count(p), 1 + 20 * p + arith::bp_eta(p) + p * p) << p;
  }
}

TEST(Arith, FermatCountBound) {
  EXPECT_THROW(arith::fermat_quartic_count(103), arith::ArithError);
  EXPECT_THROW(arith::fermat_quartic_count(15), arith::ArithError);
  EXPECT_NO_THROW(arith::fermat_quartic_count(103, 103));
}

TEST(Arith, ZetaRecordAtFive) {
  const arith::ZetaRecord r = arith::zeta_record(2, 5);
  EXPECT_EQ(r.elliptic, (std::vector<long>{1, 2, 5}));
  // (1 - 5T)(1 + 6T + 25T^2)
  EXPECT_EQ(r.sym2, (std::vector<long>{1, 1, -5, -125}));
  EXPECT_EQ(r.b_p, -6);
  EXPECT_EQ(r.k3, (std::vector<long>{1, 6, 25}));
  ASSERT_TRUE(r.sym2_match.has_value());
  EXPECT_TRUE(*r.sym2_match);
  EXPECT_TRUE(r.weil_ok);
}

TEST(Arith, ZetaRecordAtThirteen) {
  const arith::ZetaRecord r = arith::zeta_record(2, 13);
  EXPECT_EQ(r.a_p * r.a_p - 26, 10);
  EXPECT_EQ(r.b_p, 10);
  EXPECT_TRUE(r.sym2_match.value_or(false));
}

TEST(Arith, ZetaRecordAtThreeRecordsMismatch) {
  const arith::ZetaRecord r = arith::zeta_record(2, 3);
  EXPECT_EQ(r.a_p, 0);
  EXPECT_EQ(r.b_p, 0);
  ASSERT_TRUE(r.sym2_match.has_value());
  EXPECT_FALSE(*r.sym2_match);
  EXPECT_FALSE(r.fermat_prediction.has_value());
}

TEST(Arith, Sym2FactorExpandsProduct) {
  for (long p : {5L, 13L, 29L}) {
    const arith::ZetaRecord r = arith::zeta_record(2, p);
    const long s = r.a_p * r.a_p - 2 * p;
    // (1 - pT)(1 - sT + p^2 T^2), multiplied out independently.
    const std::vector<long> a = {1, -p}, b = {1, -s, p * p};
    std::vector<long> prod(4, 0);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) prod[i + j] += a[i] * b[j];
    }
    EXPECT_EQ(r.sym2, prod) << p;
  }
}

TEST(Arith, SymmetricSquareRelationForOneModFour) {
  for (long p : arith::primes_up_to(499)) {
    if (p == 2 || p % 4 != 1) continue;
    EXPECT_EQ(arith::bp_eta(p), arith::ap_legendre(2, p) * arith::ap_legendre(2, p) - 2 * p) << p;
  }
}

TEST(Arith, WeilBoundsForRandomLambdas) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 20);
  for (int trial = 0; trial < 20; ++trial) {
    Rational lam(num(rng), den(rng));
    lam.canonicalize();
    for (const arith::ZetaRecord& r : arith::zeta_table(lam, 499)) {
      EXPECT_TRUE(r.weil_ok) << lam.get_str() << " p=" << r.p;
      EXPECT_LE(static_cast<double>(r.a_p * r.a_p), 4.0 * static_cast<double>(r.p));
    }
  }
}

TEST(Arith, LambdaTwoIsMinimalModel) {
  for (long p : arith::primes_up_to(499)) {
    if (p == 2) continue;
    EXPECT_EQ(arith::ap_legendre(2, p), arith::ap_minimal(p)) << p;
    if (p % 4 == 3) EXPECT_EQ(arith::ap_legendre(2, p), 0) << p;
  }
}

TEST(Arith, ZetaTableSkipsBadPrimes) {
  const auto t = arith::zeta_table(Rational(7, 3), 50);
  for (const arith::ZetaRecord& r : t) {
    EXPECT_NE(r.p, 3);  // denominator
    EXPECT_NE(r.p, 7);  // lambda = 0
    EXPECT_NE(r.p, 2);
  }
  // 7/3 = 1 mod 2 only; mod 5 it is 4, a good prime.
  EXPECT_EQ(t.front().p, 5);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LT(t[i - 1].p, t[i].p);
}

TEST(Arith, ZetaTableAttachesFermatCounts) {
  const auto t = arith::zeta_table(2, 50, 20);
  for (const arith::ZetaRecord& r : t) {
    EXPECT_EQ(r.fermat_count.has_value(), r.p <= 20) << r.p;
    EXPECT_EQ(r.fermat_prediction.has_value(), r.p % 8 == 1) << r.p;
  }
}

}  // namespace
}  // namespace k3mirror
