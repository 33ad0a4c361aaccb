#include <random>

#include <gtest/gtest.h>

#include "fv/gaussian.hpp"
#include "fv/special.hpp"

using fv::Gq;
using fv::Rational;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(3, 6), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(0, 5).str(), "0/1");
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_THROW(Rational(1, 0), fv::DivisionByZero);
  EXPECT_THROW(Rational().inverse(), fv::DivisionByZero);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
}

TEST(Rational, OverflowPromotesAndDemotes) {
  Rational big(std::int64_t{1} << 62);
  Rational sq = big * big;
  EXPECT_EQ(sq.str(), "21267647932558653966460912964485513216/1");
  EXPECT_EQ(sq / big, big);
  EXPECT_TRUE((sq / big).is_integer());
  Rational tiny(1, std::int64_t{3} << 60);
  EXPECT_EQ((tiny * tiny) * big * big, Rational(1, 9) * Rational(16));
  EXPECT_EQ(big + big - big, big);
}

TEST(Gaussian, Examples) {
  Gq a(Rational(1, 2), Rational(1));
  Gq b(Rational(1, 2), Rational(-1));
  EXPECT_EQ(a * b, Gq(Rational(5, 4)));
  EXPECT_EQ(Gq::i() * Gq::i(), Gq(-1));
  EXPECT_EQ(Gq(Rational(3, 6)) + Gq(0), Gq(Rational(1, 2)));
  EXPECT_THROW(a / Gq(0), fv::DivisionByZero);
  EXPECT_EQ(Gq::i_pow(-1), -Gq::i());
  EXPECT_EQ(a.conj().conj(), a);
}

TEST(Gaussian, FieldAxiomsRandom) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 30);
  auto rnd = [&] { return Gq(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))); };
  for (int t = 0; t < 300; ++t) {
    Gq x = rnd(), y = rnd(), z = rnd();
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), Gq(1));
    EXPECT_EQ((x - y) + y, x);
  }
}

TEST(Special, Harmonic) {
  EXPECT_EQ(fv::harmonic(0), Rational(0));
  EXPECT_EQ(fv::harmonic(3), Rational(11, 6));
  for (int n = 1; n < 40; ++n) EXPECT_EQ(fv::harmonic(n) - fv::harmonic(n - 1), Rational(1, n));
}

TEST(Special, Bernoulli) {
  EXPECT_EQ(fv::bernoulli(1), Rational(-1, 2));
  EXPECT_EQ(fv::bernoulli(2), Rational(1, 6));
  EXPECT_EQ(fv::bernoulli(4), Rational(-1, 30));
  EXPECT_EQ(fv::bernoulli(3), Rational(0));
  for (int n = 1; n < 30; ++n) {
    Rational s;
    for (int k = 0; k <= n; ++k) s += fv::binomial(n + 1, k) * fv::bernoulli(k);
    EXPECT_TRUE(s.is_zero()) << n;
  }
  // |B4 B2| / (4*2*2!) and |B4| / (4*2!)
  Rational b4 = -fv::bernoulli(4), b2 = fv::bernoulli(2);
  EXPECT_EQ(b4 * b2 / Rational(16), Rational(1, 2880));
  EXPECT_EQ(b4 / Rational(8), Rational(1, 240));
}
