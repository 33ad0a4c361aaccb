#include <algorithm>

#include <gtest/gtest.h>

#include "fv/genus12.hpp"
#include "fv/hierarchy.hpp"
#include "fv/linsolve.hpp"

using namespace fv;

namespace {

constexpr int kQ = 4;
constexpr int kExact = CoordRingElem::kExact;
const ModelId kModels[] = {ModelId::P1, ModelId::XDi, ModelId::XAd};

CoordRingElem C(Gq c, int qc = kQ) { return CoordRingElem(c, qc); }
JetPoly J(int a, int k, int qc = kQ) { return JetPoly::var(a, k, qc); }

const F2Reconstruction& reconstruction() {
  static const F2Reconstruction r = reconstruct_f2_p1(OperatorReading::Derived, 2);
  return r;
}

JetFunction f2_of(Case c, int qc, bool correspondence_sign = true) {
  JetFunction f = push_forward(jet_transform(c, 4, qc), reconstruction().f2);
  return correspondence_sign && c == Case::Ad ? -f : f;
}

Correlators genus2(ModelId id, int qc, bool correspondence_sign = true) {
  if (id == ModelId::P1) return Correlators(jet_model(id, kExact), f1(id, kExact), reconstruction().f2);
  const Case c = id == ModelId::XDi ? Case::Di : Case::Ad;
  return Correlators(jet_model(id, qc), f1(id, qc), f2_of(c, qc, correspondence_sign));
}

}  // namespace

TEST(JetTransform, FirstJetsDiagonal) {
  const auto t = jet_transform(Case::Di, 2, kQ);
  const CoordRingElem e = CoordRingElem::exp_w1(1, kQ), q = CoordRingElem::Q(1, kQ);
  EXPECT_EQ(t.vk[1][1], J(1, 1) * Gq(2) + J(2, 1));
  EXPECT_EQ(t.vk[0][1], J(1, 1) * (e * (C(1) + q)) + J(2, 1) * (e * q));
}

TEST(JetTransform, FirstJetsAntiDiagonal) {
  const auto t = jet_transform(Case::Ad, 2, kQ);
  const CoordRingElem q = CoordRingElem::Q(1, kQ), inv = inverse(C(1) - q);
  EXPECT_EQ(t.vk[1][1], J(1, 1) * ((C(3) - q * Gq(4)) * inv) + J(2, 1) * ((C(1) - q * Gq(4)) * inv));
}

TEST(JetTransform, RecursionResidualVanishes) {
  for (Case c : {Case::Di, Case::Ad}) {
    const auto t = jet_transform(c, 4, kQ);
    for (int a = 1; a <= 2; ++a)
      for (int k = 1; k <= 4; ++k) EXPECT_TRUE(jet_transform_residual(t, a, k).is_zero()) << case_name(c) << a << k;
  }
}

TEST(Genus1, DerivedF1MatchesClosedForm) {
  for (Case c : {Case::Di, Case::Ad}) {
    Gq dropped;
    const JetFunction d = derived_f1(c, kQ, &dropped);
    EXPECT_TRUE(same(d, f1(x_model(c), kQ))) << case_name(c);
    EXPECT_EQ(dropped, Gq(c == Case::Di ? 1 : -1));
  }
}

TEST(Genus1, G1MatchesReference) {
  for (Case c : {Case::Di, Case::Ad}) {
    const ModelId id = x_model(c);
    EXPECT_TRUE(same(g_function1(id, kQ), reference_jet_function(model_key(id), "G1", kQ))) << case_name(c);
  }
}

TEST(Genus1, ChainRuleDiagonal) {
  // d_x(derived F1) in u-jets equals the pushed-forward d_x F1 of P1
  std::map<std::pair<int, int>, JetPoly> cache;
  auto shift = [&cache](int qc) {
    return [&cache, qc](int a, int k) -> const JetPoly& {
      auto it = cache.try_emplace({a, k}, J(a, k + 1, qc)).first;
      return it->second;
    };
  };
  const JetFunction lhs = push_forward(jet_transform(Case::Di, 3, kQ), apply_derivation(f1(ModelId::P1, kExact), shift(kExact)));
  cache.clear();
  const JetFunction rhs = apply_derivation(derived_f1(Case::Di, kQ), shift(kQ));
  EXPECT_TRUE(same(lhs, rhs));
}

TEST(Trr, CalibrationAdoptsDerivedReading) {
  const Calibration cal = calibrate_reading(2);
  EXPECT_EQ(cal.reading, OperatorReading::Derived);
  ASSERT_EQ(cal.log.size(), 2u);
  EXPECT_NE(cal.log[0].find("fails"), std::string::npos);
}

TEST(Trr, LiteralReadingFailsOnP1) {
  Correlators c(jet_model(ModelId::P1, kExact), f1(ModelId::P1, kExact));
  EXPECT_FALSE(trr1_residual(c, 1, 1, OperatorReading::Literal).is_zero());
}

TEST(Trr, GenusOneAllModels) {
  for (ModelId id : kModels) {
    const int qc = id == ModelId::P1 ? kExact : kQ;
    Correlators c(jet_model(id, qc), f1(id, qc));
    for (int a = 1; a <= 2; ++a)
      for (int k = 1; k <= 3; ++k) EXPECT_TRUE(trr1_residual(c, a, k, OperatorReading::Derived).is_zero()) << model_name(id) << a << k;
  }
}

TEST(Trr, ConstantsAreAnnihilated) {
  TrrOperator d(jet_model(ModelId::XDi, kQ), 2, 3, OperatorReading::Derived);
  const JetFunction one(jet_model(ModelId::XDi, kQ)->disc, JetPoly(C(5)));
  EXPECT_TRUE(d.apply(one).is_zero());
}

TEST(Reconstruction, UniqueAndConsistent) {
  const auto& r = reconstruction();
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.kernel_dim, 0);
  EXPECT_EQ(r.rank, r.unknowns);
  EXPECT_GT(r.equations, r.unknowns);
  EXPECT_LE(r.f2.pow(), 4);
}

TEST(Genus2, TrrHoldsForP1AndDiagonal) {
  for (ModelId id : {ModelId::P1, ModelId::XDi}) {
    Correlators c = genus2(id, kQ);
    for (int a = 1; a <= 2; ++a) {
      for (int k = 2; k <= 6; ++k) EXPECT_TRUE(trr2_residual(c, a, k, OperatorReading::Derived).is_zero()) << model_name(id) << a << k;
      for (int b = 1; b <= 2; ++b) EXPECT_TRUE(trr3_residual(c, a, b, OperatorReading::Derived).is_zero()) << model_name(id) << a << b;
    }
  }
}

TEST(Genus2, AntiDiagonalSignConflict) {
  // TRR2 is affine in F2 with an F2-free right-hand side: only one of +-push can satisfy it
  Correlators minus = genus2(ModelId::XAd, kQ, true), plus = genus2(ModelId::XAd, kQ, false);
  EXPECT_FALSE(trr2_residual(minus, 1, 2, OperatorReading::Derived).is_zero());
  EXPECT_TRUE(trr2_residual(plus, 1, 2, OperatorReading::Derived).is_zero());
  EXPECT_TRUE(trr3_residual(plus, 2, 2, OperatorReading::Derived).is_zero());
  // higher k have zero right-hand side, so both signs pass
  EXPECT_TRUE(trr2_residual(minus, 2, 5, OperatorReading::Derived).is_zero());
}

TEST(Genus2, PrimaryRestrictions) {
  constexpr int qc = 6;
  const CoordRingElem li = polylog(-1, qc) * Gq(Rational(1, 240)), c0 = C(Gq(Rational(1, 2880)), qc);
  EXPECT_EQ(evaluate_jets(f2_of(Case::Di, qc), primary_jet), li - c0);
  EXPECT_EQ(evaluate_jets(f2_of(Case::Ad, qc), primary_jet), li + c0);
}

TEST(Correlation, Examples) {
  Correlators p1 = genus2(ModelId::P1, kQ);
  const CoordRingElem t1 = CoordRingElem::w1(), Q = CoordRingElem::Q(1);
  EXPECT_EQ(correlation(p1, 0, {{2, 1}}), pow(t1, 3) * Gq(Rational(1, 6)) + t1 * Q);
  EXPECT_TRUE(correlation(p1, 1, {{2, 1}, {2, 1}}).is_zero());

  Correlators di = genus2(ModelId::XDi, kQ);
  const CoordRingElem w = polylog(0, kQ), one = C(1), t2 = CoordRingElem::w2(kQ);
  const CoordRingElem expect = (C(-1) + w * Gq(12) + w * w * Gq(12)) * Gq(Rational(1, 1440)) +
                               t2 * w * (one + w) * (one + w * Gq(2)) * Gq(Rational(1, 240));
  EXPECT_EQ(correlation(di, 2, {{1, 1}}), expect);
}

TEST(Correlation, DilatonEquation) {
  // <<tau_1(phi_1) X>>_g = (t^a d_a + 2g - 2 + |X|) <<X>>_g (+ 1/12 for g = 1, X empty)
  const std::vector<std::vector<Insertion>> sets = {{}, {{1, 0}}, {{2, 0}}, {{1, 0}, {2, 0}}, {{2, 0}, {2, 0}}, {{2, 1}}};
  for (ModelId id : kModels) {
    Correlators c = genus2(id, kQ);
    const int qc = id == ModelId::P1 ? kExact : kQ;
    for (int g = 0; g <= 2; ++g)
      for (const auto& x : sets) {
        if (g == 0 && x.size() < 2) continue;
        std::vector<Insertion> with = x;
        with.push_back({1, 1});
        const CoordRingElem f = correlation(c, g, x);
        CoordRingElem rhs = CoordRingElem::w1(qc) * d_w1(f) + CoordRingElem::w2(qc) * d_w2(f) +
                            f * Gq(2 * g - 2 + static_cast<int>(x.size()));
        if (g == 1 && x.empty()) rhs += C(Gq(Rational(1, 12)), qc);
        EXPECT_EQ(correlation(c, g, with), rhs) << model_name(id) << " g=" << g << " |X|=" << x.size();
      }
  }
}

TEST(Correlation, GenusZeroAgreesWithFreeEnergy) {
  constexpr int D = 4, qc = 3;
  for (ModelId id : {ModelId::P1, ModelId::XDi}) {
    const auto sol = topological_solution(TimeConfig{SolutionKind::Plain, id, Case::Di, Gq(0), 1, D, qc});
    const TimeSeries f0 = genus0_free_energy(sol);
    Correlators c(jet_model(id, qc), f1(id, qc));
    PointEvaluator pe(TimeSeries::variable(sol.space, 1, 0), TimeSeries::variable(sol.space, 2, 0));
    const std::vector<std::vector<Insertion>> sets = {{{2, 1}}, {{1, 1}, {2, 1}}, {{1, 1}, {2, 0}}, {{2, 1}, {2, 1}}};
    for (const auto& ins : sets) {
      TimeSeries lhs = f0;
      for (const auto& x : ins) lhs = lhs.derivative(x.alpha, x.p);
      const int keep = D - static_cast<int>(ins.size());
      auto primary = [](auto terms) {
        std::erase_if(terms, [](const auto& t) {
          return std::any_of(t.first.begin(), t.first.end(), [](const auto& e) { return e.first.second > 0; });
        });
        return terms;
      };
      const auto a = primary(nonzero_terms(lhs.truncated_deg(keep)));
      const auto b = nonzero_terms(pe.eval(correlation(c, 0, ins)).truncated_deg(keep));
      EXPECT_EQ(a, b) << model_name(id) << " insertions " << ins.size();
    }
  }
}

TEST(Correlation, PrimaryJetsFromTopologicalSolution) {
  for (ModelId id : kModels) EXPECT_TRUE(check_primary_jets(id, 3).ok) << model_name(id);
}

TEST(Bp, VanishesForDiagonal) {
  Correlators di = genus2(ModelId::XDi, kQ);
  EXPECT_TRUE(bp_residual(di, {Insertion{1, 0}, Insertion{1, 0}, Insertion{1, 0}}).is_zero());
  EXPECT_TRUE(bp_residual(di, {Insertion{2, 1}, Insertion{1, 0}, Insertion{2, 0}}).is_zero());
  Correlators ad_plus = genus2(ModelId::XAd, kQ, false);
  EXPECT_TRUE(bp_residual(ad_plus, {Insertion{2, 1}, Insertion{1, 0}, Insertion{1, 0}}).is_zero());
}

TEST(Bp, SymmetricAndBlindToConstants) {
  // X_ad with the correspondence sign has a nonzero residual, which makes these checks meaningful
  Correlators ad = genus2(ModelId::XAd, kQ);
  const std::array<Insertion, 3> x = {Insertion{2, 0}, Insertion{1, 1}, Insertion{2, 1}};
  const CoordRingElem r = bp_residual(ad, x);
  EXPECT_FALSE(r.is_zero());
  EXPECT_EQ(bp_residual(ad, {x[2], x[0], x[1]}), r);
  EXPECT_EQ(bp_residual(ad, {x[1], x[2], x[0]}), r);
  const JetFunction shifted = f2_of(Case::Ad, kQ) + JetFunction(jet_model(ModelId::XAd, kQ)->disc, JetPoly(C(1)));
  Correlators ad1(jet_model(ModelId::XAd, kQ), f1(ModelId::XAd, kQ), shifted);
  EXPECT_EQ(bp_residual(ad1, x), r);
}

TEST(JetIo, RoundTripAndSchemaErrors) {
  const JetFunction& f = reconstruction().f2;
  const Json j = jet_function_to_json(f, ModelId::P1, "F2");
  EXPECT_TRUE(same(jet_function_from_json(j, kExact), f));
  EXPECT_EQ(jet_function_to_json(jet_function_from_json(j, kExact), ModelId::P1, "F2"), j);

  const Json f1j = jet_function_to_json(f1(ModelId::XDi, kQ), ModelId::XDi, "F1");
  ASSERT_EQ(f1j["logs"].size(), 1u);
  EXPECT_TRUE(jet_poly_from_json(f1j["logs"][0]["arg"], kQ) == *jet_model(ModelId::XDi, kQ)->disc);

  Json bad = j;
  bad["denominator"][0]["poly"] = Json::array();
  try {
    jet_function_from_json(bad, kExact);
    FAIL() << "zero denominator accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("denominator[0]"), std::string::npos);
  }
  bad = j;
  bad["denominator"][0]["power"] = -1;
  EXPECT_THROW(jet_function_from_json(bad, kExact), std::invalid_argument);
  bad = j;
  bad["model"] = "P2";
  EXPECT_THROW(jet_function_from_json(bad, kExact), std::invalid_argument);
}

TEST(LinearSystem, UniqueInconsistentAndUnderdetermined) {
  SparseLinearSystem a(2);
  a.add_equation({{0, Gq(1)}, {1, Gq(1)}}, Gq(3));
  a.add_equation({{0, Gq(1)}, {1, Gq(-1)}}, Gq(1));
  a.add_equation({{0, Gq(2)}}, Gq(4));
  const auto ra = a.solve();
  ASSERT_TRUE(ra.consistent);
  EXPECT_EQ(ra.kernel_dim, 0);
  EXPECT_EQ(ra.x[0], Gq(2));
  EXPECT_EQ(ra.x[1], Gq(1));

  SparseLinearSystem b(2);
  b.add_equation({{0, Gq(1)}, {1, Gq(1)}}, Gq(3));
  b.add_equation({{1, Gq(2)}, {0, Gq(2)}}, Gq(5));
  EXPECT_FALSE(b.solve().consistent);

  SparseLinearSystem c(3);
  c.add_equation({{0, Gq(1)}, {2, Gq::i()}}, Gq(1));
  const auto rc = c.solve();
  EXPECT_TRUE(rc.consistent);
  EXPECT_EQ(rc.kernel_dim, 2);
  EXPECT_THROW(c.add_equation({{3, Gq(1)}}, Gq(0)), std::out_of_range);
}
