#include <gtest/gtest.h>

#include <random>

#include "k3mirror/periods.hpp"
#include "k3mirror/qseries.hpp"
#include "oracles.hpp"

namespace k3mirror {
namespace {

using qseries::RationalSeries;

RationalSeries poly(std::vector<Rational> c, int order) { return RationalSeries(std::move(c), order); }

RationalSeries random_series(std::mt19937& rng, int order, bool unit_linear) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<Rational> c(static_cast<std::size_t>(order));
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  if (unit_linear) {
    c[0] = 0;
    c[1] = 1;
  }
  return RationalSeries(c, order);
}

TEST(Qseries, DifferenceOfSquares) {
  const RationalSeries a = poly({1, 1}, 6), b = poly({1, -1}, 6);
  EXPECT_EQ(a * b, poly({1, 0, -1}, 6));
}

TEST(Qseries, GeometricReciprocal) {
  EXPECT_EQ(qseries::reciprocal(poly({1, -1}, 5)), poly({1, 1, 1, 1, 1}, 5));
}

TEST(Qseries, ReciprocalOfEulerPower24MatchesLongDivision) {
  const auto prod = oracle::euler_product_power(24, 8);
  const auto inv = oracle::long_division_reciprocal(prod, 8);
  std::vector<Rational> c;
  for (std::size_t k = 0; k < 4; ++k) c.emplace_back(prod[k]);
  const RationalSeries r = qseries::reciprocal(RationalSeries(c, 4));
  ASSERT_EQ(r.order(), 4);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(r[k], Rational(inv[k])) << k;
  EXPECT_EQ(r[1], 24);
  EXPECT_EQ(r[2], 324);
  EXPECT_EQ(r[3], 3200);
}

TEST(Qseries, ReciprocalNeedsUnitLeadingTerm) {
  EXPECT_THROW(qseries::reciprocal(poly({0, 1}, 4)), qseries::SeriesError);
}

TEST(Qseries, ExpOfZeroIsOne) {
  EXPECT_EQ(qseries::exp(RationalSeries::constant(0, 5)), RationalSeries::constant(1, 5));
}

TEST(Qseries, MercatorSeries) {
  const RationalSeries l = qseries::log(poly({1, 1}, 4));
  EXPECT_EQ(l, poly({0, 1, Rational(-1, 2), Rational(1, 3)}, 4));
}

TEST(Qseries, ExpLogPreconditions) {
  EXPECT_THROW(qseries::exp(poly({1, 1}, 4)), qseries::SeriesError);
  EXPECT_THROW(qseries::log(poly({2, 1}, 4)), qseries::SeriesError);
}

TEST(Qseries, ExpLogRoundTrip) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    RationalSeries a = random_series(rng, 10, true);
    EXPECT_EQ(qseries::log(qseries::exp(a)), a);
    const RationalSeries b = Rational(1) + a;
    EXPECT_EQ(qseries::exp(qseries::log(b)), b);
  }
}

// exp(h / varpi0) to order 3, against expanding exp termwise by hand:
// with u = h / varpi0 = u1 x + u2 x^2, exp(u) = 1 + u1 x + (u2 + u1^2/2) x^2.
TEST(Qseries, ExpOfPeriodQuotient) {
  for (int order : {3, 6}) {
    const RationalSeries u = periods::h_series(order) / periods::varpi0_series(order);
    const RationalSeries e = qseries::exp(u);
    const Rational u1 = u[1], u2 = u[2];
    EXPECT_EQ(e[0], 1);
    EXPECT_EQ(e[1], u1);
    EXPECT_EQ(e[2], u2 + u1 * u1 / 2);
    EXPECT_EQ(e[1], Rational(1, 2));
    EXPECT_EQ(e[2], Rational(21, 64));
  }
}

TEST(Qseries, RevertIdentity) {
  const RationalSeries q = RationalSeries::variable(6);
  EXPECT_EQ(qseries::revert(q), q);
}

TEST(Qseries, RevertMatchesFixedPoint) {
  // lambda <- q + lambda^2 solves lambda - lambda^2 = q.
  std::vector<Rational> lam(5, 0);
  for (int it = 0; it < 6; ++it) {
    auto sq = oracle::rmul(lam, lam, 5);
    sq[1] += 1;
    lam = sq;
  }
  const RationalSeries r = qseries::revert(poly({0, 1, -1}, 5));
  ASSERT_EQ(r.order(), 5);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(r[k], lam[k]) << k;
  EXPECT_EQ(r, poly({0, 1, 1, 2, 5}, 5));
}

TEST(Qseries, RevertNeedsLinearTerm) {
  EXPECT_THROW(qseries::revert(poly({0, 0, 1}, 5)), qseries::SeriesError);
}

TEST(Qseries, EtaProductWeightThreeNewform) {
  const RationalSeries f = qseries::eta_product(4, 6, 20);
  EXPECT_EQ(f.offset(), 1);
  const auto x = oracle::euler_product_power(6, 6);  // in x = q^4
  for (int k = 0; k < 20; ++k) {
    const Rational expect = (k % 4 == 0) ? Rational(x[k / 4]) : Rational(0);
    EXPECT_EQ(f[k], expect) << "shift " << k;
  }
  EXPECT_EQ(f.coefficient_of(1), 1);
  EXPECT_EQ(f.coefficient_of(5), -6);
  EXPECT_EQ(f.coefficient_of(9), 9);
  EXPECT_EQ(f.coefficient_of(13), 10);
  EXPECT_EQ(f.coefficient_of(17), -30);
}

TEST(Qseries, EtaProductTrivialExponent) {
  EXPECT_EQ(qseries::eta_product(1, 0, 5), RationalSeries::constant(1, 5));
}

TEST(Qseries, InverseDiscriminant) {
  const RationalSeries b = qseries::eta_product(1, -24, 5);
  EXPECT_EQ(b.offset(), -1);
  const auto inv = oracle::long_division_reciprocal(oracle::euler_product_power(24, 10), 10);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(b[k], Rational(inv[k]));
  EXPECT_EQ(b, RationalSeries({1, 24, 324, 3200, 25650}, 5, -1));
}

TEST(Qseries, EtaOffsetIsFractional) {
  EXPECT_EQ(qseries::eta_product(1, 1, 4).offset(), Rational(1, 24));
}

TEST(Qseries, RingAxiomsOnRandomSeries) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalSeries a = random_series(rng, 12, false);
    const RationalSeries b = random_series(rng, 12, false);
    const RationalSeries c = random_series(rng, 12, false);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a - a).valuation(), 12);
  }
}

TEST(Qseries, RevertIsTwoSidedInverse) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalSeries a = random_series(rng, 10, true);
    const RationalSeries b = qseries::revert(a);
    const RationalSeries q = RationalSeries::variable(10);
    EXPECT_EQ(qseries::compose(a, b), q);
    EXPECT_EQ(qseries::compose(b, a), q);
  }
}

TEST(Qseries, EtaProductsCancel) {
  for (int m : {1, 4}) {
    for (int e : {6, 24}) {
      const RationalSeries p = qseries::eta_product(m, e, 30) * qseries::eta_product(m, -e, 30);
      EXPECT_EQ(p, RationalSeries::constant(1, 30)) << m << " " << e;
    }
  }
}

TEST(Qseries, TruncationPropagates) {
  const RationalSeries a = RationalSeries::constant(1, 3);
  const RationalSeries b = RationalSeries::constant(1, 8);
  EXPECT_EQ((a + b).order(), 3);
  EXPECT_EQ((a * b).order(), 3);
  // q^2 * (order 3) is known through q^4.
  const RationalSeries shifted = RationalSeries::monomial(1, 2, 8) * a;
  EXPECT_EQ(shifted.offset() + shifted.order(), 5);
}

TEST(Qseries, ThetaDerivativeActsOnExponents) {
  const RationalSeries s({1, 2, 3}, 3, Rational(1, 4));
  const RationalSeries d = qseries::derivative(s, qseries::DerivativeMode::theta);
  EXPECT_EQ(d.offset(), Rational(1, 4));
  EXPECT_EQ(d[0], Rational(1, 4));
  EXPECT_EQ(d[1], Rational(2) * Rational(5, 4));
  EXPECT_EQ(d[2], Rational(3) * Rational(9, 4));
}

TEST(Qseries, DecimateRejectsOffLattice) {
  EXPECT_THROW(qseries::decimate(poly({1, 1}, 4), 2), qseries::SeriesError);
  EXPECT_EQ(qseries::decimate(qseries::substitute_power(poly({1, 2, 3}, 3), 2), 2), poly({1, 2, 3}, 3));
}

TEST(Qseries, UnknownCoefficientThrows) {
  const RationalSeries a = RationalSeries::constant(1, 3);
  EXPECT_THROW((void)a[3], qseries::SeriesError);
}

}  // namespace
}  // namespace k3mirror
