#include <gtest/gtest.h>

#include "fv/hierarchy.hpp"

using namespace fv;

namespace {

using Times = std::map<std::pair<int, int>, int>;

std::vector<Gq> qs(std::initializer_list<Rational> r, int q_cut) {
  std::vector<Gq> out(q_cut + 1);
  int i = 0;
  for (const auto& x : r) out[i++] = Gq(x);
  return out;
}

TimeConfig plain(ModelId id, int k_max = 2, int deg = 3, int q_cut = 3) {
  return TimeConfig{SolutionKind::Plain, id, Case::Di, Gq(0), k_max, deg, q_cut};
}

}  // namespace

TEST(TimeSeries, ExpAndInverse) {
  auto sp = std::make_shared<const TimeSpace>(1, 4, 3);
  const TimeSeries x = TimeSeries::variable(sp, 1, 0) + TimeSeries::variable(sp, 2, 1) * Gq(Rational(3, 2)) +
                       TimeSeries::constant(sp, Gq(1)).q_shift(1);
  EXPECT_EQ(exp(x) * exp(-x), TimeSeries::constant(sp, Gq(1)));
  const TimeSeries y = x + TimeSeries::constant(sp, Gq(Rational(2), Rational(1)));
  EXPECT_EQ(inverse(y) * y, TimeSeries::constant(sp, Gq(1)));
  // d/dx exp(x) = x' exp(x), truncated one degree lower
  const TimeSeries lhs = exp(x).derivative(1, 0);
  EXPECT_EQ(lhs.truncated_deg(3), (x.derivative(1, 0) * exp(x)).truncated_deg(3));
}

TEST(TimeSeries, CoefficientLookup) {
  auto sp = std::make_shared<const TimeSpace>(2, 3, 2);
  const TimeSeries s = TimeSeries::variable(sp, 2, 1);
  const TimeSeries x = s * s * TimeSeries::variable(sp, 1, 0) * Gq(5);
  EXPECT_EQ(x.coefficient(Times{{{1, 0}, 1}, {{2, 1}, 2}}), qs({5}, 2));
  EXPECT_EQ(x.order(), 3);
  EXPECT_THROW(x.coefficient(Times{{{1, 0}, 4}}), std::out_of_range);
}

TEST(PointEvaluator, IsARingHomomorphism) {
  constexpr int qc = 3;
  auto sp = std::make_shared<const TimeSpace>(1, 3, qc);
  const TimeSeries u1 = TimeSeries::variable(sp, 1, 0) + TimeSeries::variable(sp, 2, 1) * Gq(2);
  const TimeSeries u2 = TimeSeries::variable(sp, 2, 0) - TimeSeries::variable(sp, 1, 1);
  const auto w1 = CoordRingElem::w1(qc), w2 = CoordRingElem::w2(qc);
  const CoordRingElem f = w1 * CoordRingElem::exp_w1(1, qc) + CoordRingElem::Q(1, qc);
  const CoordRingElem g = w2 * w2 + polylog(2, qc) - CoordRingElem::exp_w1(-1, qc);
  PointEvaluator pe(u1, u2);
  EXPECT_EQ(pe.eval(f * g), pe.eval(f) * pe.eval(g));
  EXPECT_EQ(pe.eval(f + g), pe.eval(f) + pe.eval(g));
  EXPECT_EQ(pe.eval(w1), u1);
}

TEST(TopologicalSolution, DisplayedCoefficients) {
  const auto p1 = topological_solution(plain(ModelId::P1));
  EXPECT_EQ(p1.w[0].coefficient(Times{{{2, 1}, 1}}), qs({0, 1}, 3));
  EXPECT_EQ(p1.w[1].coefficient(Times{{{1, 1}, 1}, {{2, 0}, 1}}), qs({1}, 3));
  // q/(1-q)
  const auto di = topological_solution(plain(ModelId::XDi));
  EXPECT_EQ(di.w[0].coefficient(Times{{{2, 0}, 1}, {{2, 1}, 1}}), qs({0, 1, 1, 1}, 3));
}

TEST(TopologicalSolution, SolvesEulerLagrange) {
  for (ModelId id : {ModelId::P1, ModelId::XDi, ModelId::XAd}) {
    const auto sol = topological_solution(plain(id));
    const auto r = el_residual(sol);
    EXPECT_TRUE(r[0].is_zero()) << model_name(id);
    EXPECT_TRUE(r[1].is_zero()) << model_name(id);
  }
  for (Case c : {Case::Di, Case::Ad}) {
    const Gq base = c == Case::Di ? Gq(1) : Gq::i();
    const auto sol = topological_solution(TimeConfig{SolutionKind::Composed, x_model(c), c, base, 2, 3, 3});
    const auto r = el_residual(sol);
    EXPECT_TRUE(r[0].is_zero() && r[1].is_zero()) << case_name(c);
  }
}

TEST(TopologicalSolution, SecondDerivativesOfF0AreOmega) {
  constexpr int K = 2, D = 4, qc = 3;
  for (ModelId id : {ModelId::P1, ModelId::XDi}) {
    const auto sol = topological_solution(plain(id, K, D, qc));
    const TimeSeries f0 = genus0_free_energy(sol);
    PointEvaluator pe(sol.w[0], sol.w[1]);
    for (int a = 1; a <= 2; ++a)
      for (int k = 0; k <= K; ++k)
        for (int b = a; b <= 2; ++b)
          for (int l = b == a ? k : 0; l <= K; ++l) {
            const TimeSeries lhs = f0.derivative(a, k).derivative(b, l).truncated_deg(D - 2);
            const TimeSeries rhs = pe.eval(omega(id, a, k, b, l, qc)).truncated_deg(D - 2);
            EXPECT_EQ(lhs, rhs) << model_name(id) << " " << a << k << " " << b << l;
          }
  }
}

TEST(TopologicalSolution, SatisfiesTheFlows) {
  constexpr int K = 2, D = 4, qc = 3;
  for (ModelId id : {ModelId::P1, ModelId::XAd}) {
    const auto sol = topological_solution(plain(id, K, D, qc));
    PointEvaluator pe(sol.w[0], sol.w[1]);
    const TimeSeries wx[2] = {sol.w[0].derivative(1, 0), sol.w[1].derivative(1, 0)};
    for (int beta = 1; beta <= 2; ++beta)
      for (int p = 0; p <= K; ++p) {
        const Mat2c a = flow_matrix(id, beta, p, qc);
        for (int al = 0; al < 2; ++al) {
          TimeSeries rhs = pe.eval(a(al, 0)) * wx[0] + pe.eval(a(al, 1)) * wx[1];
          EXPECT_EQ(sol.w[al].derivative(beta, p).truncated_deg(D - 1), rhs.truncated_deg(D - 1))
              << model_name(id) << " beta=" << beta << " p=" << p;
        }
      }
  }
}

TEST(TopologicalSolution, FlowMatricesCommuteOnConstants) {
  // the quasilinear flows commute; at leading order their matrices commute pointwise
  constexpr int qc = 4;
  for (ModelId id : {ModelId::P1, ModelId::XDi, ModelId::XAd})
    for (int p = 0; p <= 2; ++p)
      for (int r = 0; r <= 2; ++r) {
        const Mat2c a = flow_matrix(id, 1, p, qc), b = flow_matrix(id, 2, r, qc);
        const Mat2c c = a * b - b * a;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) EXPECT_TRUE(c(i, j).is_zero()) << model_name(id) << p << r;
      }
}

TEST(Shift, ElementaryCoefficients) {
  const TimeConfig cfg = plain(ModelId::P1, 2, 3, 2);
  auto sp = std::make_shared<const TimeSpace>(cfg.k_max, cfg.deg, cfg.q_cut);
  const TimeSeries a = a_shift(Case::Di, cfg, sp);
  EXPECT_EQ(a.coefficient(Times{}), qs({0}, 2));
  EXPECT_EQ(a.coefficient(Times{{{1, 0}, 1}, {{2, 0}, 1}}), qs({1}, 2));
  EXPECT_EQ(a.coefficient(Times{{{2, 0}, 1}}), qs({Rational(-1, 2)}, 2));
}

TEST(Genus0, CorrespondenceAtSmallCuts) {
  for (Case c : {Case::Di, Case::Ad})
    for (const auto& r : verify_genus0(c, 2, 3, 3)) EXPECT_TRUE(r.ok) << r.id << ": " << r.detail;
}
