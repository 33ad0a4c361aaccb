#include <random>

#include <gtest/gtest.h>

#include "fv/coord_ring.hpp"
#include "fv/laurent.hpp"
#include "fv/substitute.hpp"

using fv::CoordRingElem;
using fv::Gq;
using fv::Mono;
using fv::Rational;

namespace {

CoordRingElem random_elem(std::mt19937_64& rng, int q_cut, bool unit_lead = false) {
  std::uniform_int_distribution<int> small(0, 2), ms(-2, 2), dd(0, q_cut), num(-9, 9), den(1, 5);
  std::vector<CoordRingElem::Term> terms;
  for (int i = 0; i < 6; ++i) {
    Mono mo{small(rng), small(rng), ms(rng), dd(rng)};
    if (unit_lead && mo.d == 0) mo.d = 1;
    terms.emplace_back(CoordRingElem::pack(mo), Gq(Rational(num(rng), den(rng)), Rational(num(rng) / 3, den(rng))));
  }
  auto x = CoordRingElem::from_terms(std::move(terms), q_cut);
  if (unit_lead) x += CoordRingElem(Gq(1), q_cut);
  return x;
}

}  // namespace

TEST(CoordRing, ArithmeticExamples) {
  auto Q = CoordRingElem::Q(1, 1);
  EXPECT_TRUE((Q * Q).is_zero());
  auto p = CoordRingElem::w1() * CoordRingElem::exp_w1();
  EXPECT_EQ(p, CoordRingElem::monomial({1, 0, 1, 0}));
  CoordRingElem one(Gq(1), 2);
  auto prod = (one + CoordRingElem::Q(1, 2)) * (one - CoordRingElem::Q(1, 2));
  EXPECT_EQ(prod, one - CoordRingElem::Q(2, 2));
  EXPECT_EQ(prod.coefficient({0, 0, 0, 2}), Gq(-1));
}

TEST(CoordRing, Derivatives) {
  auto w2Q = CoordRingElem::w2() * CoordRingElem::Q();
  EXPECT_EQ(fv::d_w2(w2Q), CoordRingElem::Q() + w2Q);
  EXPECT_EQ(fv::d_w1(CoordRingElem::exp_w1(-1)), -CoordRingElem::exp_w1(-1));
  EXPECT_EQ(fv::d_w2(fv::polylog(2, 6)), fv::polylog(1, 6));
  for (int k = -2; k <= 3; ++k) EXPECT_EQ(fv::d_w2(fv::polylog(k, 7)), fv::polylog(k - 1, 7)) << k;
}

TEST(CoordRing, SeriesOps) {
  CoordRingElem one(Gq(1), 3);
  auto Q = CoordRingElem::Q(1, 3);
  EXPECT_EQ(fv::inverse(one - Q), one + Q + Q * Q + Q * Q * Q);
  EXPECT_EQ(fv::log(one - Q), -fv::polylog(1, 3));
  auto li1 = fv::polylog(1, 2);
  auto integ = fv::q_integrate(li1 * li1 * fv::inverse(CoordRingElem(Gq(1), 2) - CoordRingElem::Q(1, 2)));
  EXPECT_EQ(integ.coefficient({0, 0, 0, 2}), Gq(Rational(1, 2)));
  EXPECT_EQ(fv::polylog(3, 2), CoordRingElem::Q(1, 2) + CoordRingElem::Q(2, 2) * Gq(Rational(1, 8)));
  auto qq = CoordRingElem::Q(1, 3);
  auto geo = qq * fv::pow(fv::inverse(CoordRingElem(Gq(1), 3) - qq), 2);
  EXPECT_EQ(fv::polylog(-1, 3), geo);
  EXPECT_THROW(fv::inverse(CoordRingElem::w1(3)), fv::SeriesError);
  EXPECT_THROW(fv::log(CoordRingElem(Gq(2), 3) + qq), fv::SeriesError);
  EXPECT_THROW(fv::q_integrate(one), fv::SeriesError);
  EXPECT_EQ(fv::log(CoordRingElem::exp_w1(2, 3)), CoordRingElem::w1(3) * Gq(2));
}

TEST(CoordRing, Integrals) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto x = random_elem(rng, 4);
    EXPECT_EQ(fv::d_w1(fv::int_w1(x)), x);
    EXPECT_EQ(fv::d_w2(fv::int_w2(x)), x);
    EXPECT_EQ(fv::d_w1(fv::d_w2(x)), fv::d_w2(fv::d_w1(x)));
  }
}

TEST(CoordRing, ExpLogInverse) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto u = random_elem(rng, 4, true);
    EXPECT_EQ(fv::exp(fv::log(u)), u);
    EXPECT_EQ(u * fv::inverse(u), CoordRingElem(Gq(1), 4));
  }
}

TEST(CoordRing, SubstitutionHomomorphism) {
  const int cut = 3;
  fv::SubstImages<CoordRingElem> im{CoordRingElem(Gq(1), cut),
                                    CoordRingElem::w1(cut),
                                    CoordRingElem::w1(cut) * Gq(2) + CoordRingElem::w2(cut),
                                    CoordRingElem::exp_w1(1, cut),
                                    CoordRingElem::exp_w1(-1, cut),
                                    CoordRingElem::Q(1, cut) * CoordRingElem::exp_w1(2, cut)};
  EXPECT_EQ(fv::substitute(CoordRingElem::Q(1, cut), im), CoordRingElem::Q(1, cut) * CoordRingElem::exp_w1(2, cut));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto x = random_elem(rng, cut), y = random_elem(rng, cut);
    EXPECT_EQ(fv::substitute(x * y, im), fv::substitute(x, im) * fv::substitute(y, im));
  }
  fv::SubstImages<CoordRingElem> id{CoordRingElem(Gq(1), cut), CoordRingElem::w1(cut), CoordRingElem::w2(cut),
                                    CoordRingElem::exp_w1(1, cut), CoordRingElem::exp_w1(-1, cut), CoordRingElem::Q(1, cut)};
  auto x = random_elem(rng, cut);
  EXPECT_EQ(fv::substitute(x, id), x);
}

TEST(Laurent, InverseAndPoles) {
  auto z = fv::Laurent::linear(Gq(0));
  auto inv = fv::Laurent::inv_linear(Gq(0), 5);
  EXPECT_EQ((z * inv).coeff(0), Gq(1));
  auto f = fv::Laurent::linear(Gq(2)) * fv::Laurent::linear(Gq(0));  // (2+e) e
  auto g = f.inverse(6);
  EXPECT_EQ(g.val(), -1);
  auto one = f * g;
  EXPECT_EQ(one.coeff(0), Gq(1));
  for (int e = 1; e < one.prec(); ++e) EXPECT_TRUE(one.coeff(e).is_zero());
}
