#include <gtest/gtest.h>

#include "modanom/errors.hpp"
#include "modanom/qseries.hpp"
#include "random_forms.hpp"

using namespace modanom;
using modanom::testing::agree;
using modanom::testing::RandomForms;

TEST(Rational, CanonicalTextRoundTrip) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
  EXPECT_EQ(parse_rational(to_string(Rational(-7, 12))), Rational(-7, 12));
  EXPECT_DOUBLE_EQ(to_double(Rational(1, 8)), 0.125);
}

TEST(Rational, BernoulliNumbers) {
  const auto b = bernoulli_numbers(8);
  EXPECT_EQ(b[0], 1);
  EXPECT_EQ(b[1], Rational(-1, 2));
  EXPECT_EQ(b[2], Rational(1, 6));
  EXPECT_EQ(b[3], 0);
  EXPECT_EQ(b[4], Rational(-1, 30));
  EXPECT_EQ(b[6], Rational(1, 42));
  EXPECT_EQ(b[8], Rational(-1, 30));
}

TEST(QSeries, GeometricInverse) {
  // 1/(1 - q) = Σ q^n on the integer grid
  QSeries f = QSeries::constant(1, 40);
  f.add_term(8, -1);
  const QSeries g = inverse(f);
  for (int n = 0; n < 40; ++n) EXPECT_EQ(g.coeff(n), n % 8 == 0 ? 1 : 0) << n;
}

TEST(QSeries, ProductTruncation) {
  EXPECT_EQ(product_trunc(10, 2, 16, 0), 10);
  // min(ta + mb, tb + ma)
  EXPECT_EQ(product_trunc(10, 4, 8, 0), 10);
  EXPECT_EQ(product_trunc(10, 0, 8, 1), 8);
  QSeries a = QSeries::monomial(4, 1, 12);
  QSeries b = QSeries::monomial(2, 3, 10);
  const QSeries c = a * b;
  EXPECT_EQ(c.trunc(), product_trunc(12, 4, 10, 2));
  EXPECT_EQ(c.coeff(6), 3);
}

TEST(QSeries, DropsTermsAtOrBeyondTruncation) {
  QSeries s(8);
  s.add_term(8, 5);
  s.add_term(3, 2);
  s.add_term(3, -2);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.min_index(), 8);
}

TEST(QSeries, InverseOfNonUnitThrows) { EXPECT_THROW(inverse(QSeries::monomial(8, 1, 32)), NotInvertible); }

TEST(QSeries, PowMatchesRepeatedProduct) {
  RandomForms rnd(11);
  for (int i = 0; i < 20; ++i) {
    const QSeries f = rnd.series(24, 5, true);
    EXPECT_TRUE(agree(pow(f, 3), f * f * f));
    EXPECT_TRUE(agree(pow(f, 0), QSeries::constant(1, f.trunc())));
  }
}

TEST(QSeries, FirstDifferenceReportsLowestIndex) {
  QSeries a = QSeries::constant(1, 16);
  QSeries b = a;
  b.add_term(9, 1);
  b.add_term(12, 1);
  EXPECT_EQ(a.first_difference(b, 16), 9);
  EXPECT_FALSE(a.first_difference(b, 9).has_value());
}

TEST(QSeriesProperty, RingAxioms) {
  RandomForms rnd(101);
  for (int i = 0; i < 120; ++i) {
    const int t = rnd.integer(8, 40);
    const QSeries a = rnd.series(t, 6), b = rnd.series(rnd.integer(8, 40), 6), c = rnd.series(t, 6);
    EXPECT_TRUE(agree(a * b, b * a));
    EXPECT_TRUE(agree((a * b) * c, a * (b * c)));
    EXPECT_TRUE(agree(a * (b + c), a * b + a * c));
    EXPECT_TRUE(agree(a + b, b + a));
    EXPECT_TRUE(agree(a - a, QSeries(t)));
    EXPECT_TRUE(agree(a * QSeries::constant(1, 64), a));
  }
}

TEST(QSeriesProperty, InverseIsTwoSided) {
  RandomForms rnd(202);
  for (int i = 0; i < 120; ++i) {
    const QSeries f = rnd.series(rnd.integer(4, 48), 6, true);
    const QSeries g = inverse(f);
    const QSeries one = QSeries::constant(1, f.trunc());
    EXPECT_TRUE(agree(f * g, one));
    EXPECT_TRUE(agree(g * f, one));
    EXPECT_TRUE(agree(inverse(g), f));
  }
}

TEST(QSeriesProperty, TruncationStability) {
  RandomForms rnd(303);
  for (int i = 0; i < 120; ++i) {
    const int t = rnd.integer(8, 40);
    const QSeries a = rnd.series(t, 6, true), b = rnd.series(t, 6, true);
    const int n = rnd.integer(1, t);
    EXPECT_EQ((a * b).truncated(n), (a.truncated(n) * b.truncated(n)).truncated(n));
    EXPECT_EQ(inverse(a).truncated(n), inverse(a.truncated(n)).truncated(n));
  }
}
