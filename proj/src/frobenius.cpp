#include "fv/frobenius.hpp"

#include <stdexcept>

#include "fv/substitute.hpp"

namespace fv {
namespace {

Mat2q mat(Gq a, Gq b, Gq c, Gq d) {
  Mat2q m;
  m << a, b, c, d;
  return m;
}

FrobeniusModel make_model(ModelId id) {
  FrobeniusModel m;
  m.id = id;
  m.unit = Vec2q(Gq(1), Gq(0));
  m.mu = mat(0, 0, 0, 0);
  m.R = mat(0, 0, 0, 0);
  switch (id) {
    case ModelId::P1:
      m.name = "P1";
      m.x1 = "v1";
      m.x2 = "v2";
      m.eta = mat(0, 1, 1, 0);
      m.has_euler = true;
      m.mu = mat(Gq(Rational(-1, 2)), 0, 0, Gq(Rational(1, 2)));
      m.R = mat(0, 0, 2, 0);
      break;
    case ModelId::XDi:
      m.name = "X_di";
      m.x1 = "u1";
      m.x2 = "u2";
      m.eta = mat(2, 1, 1, 0);
      break;
    case ModelId::XAd:
      m.name = "X_ad";
      m.x1 = "u1";
      m.x2 = "u2";
      m.eta = mat(0, 1, 1, 0);
      break;
  }
  const Gq det = m.eta(0, 0) * m.eta(1, 1) - m.eta(0, 1) * m.eta(1, 0);
  m.eta_inv = mat(m.eta(1, 1) / det, -m.eta(0, 1) / det, -m.eta(1, 0) / det, m.eta(0, 0) / det);
  return m;
}

}  // namespace

const char* model_name(ModelId id) {
  switch (id) {
    case ModelId::P1: return "P1";
    case ModelId::XDi: return "X_di";
    default: return "X_ad";
  }
}

const char* case_name(Case c) { return c == Case::Di ? "di" : "ad"; }

const FrobeniusModel& model_data(ModelId id) {
  static const FrobeniusModel p1 = make_model(ModelId::P1);
  static const FrobeniusModel di = make_model(ModelId::XDi);
  static const FrobeniusModel ad = make_model(ModelId::XAd);
  switch (id) {
    case ModelId::P1: return p1;
    case ModelId::XDi: return di;
    default: return ad;
  }
}

CoordRingElem potential(ModelId id, int q_cut) {
  const CoordRingElem cubic = CoordRingElem::monomial({2, 1, 0, 0}, Gq(Rational(1, 2)), q_cut);
  switch (id) {
    case ModelId::P1: return cubic + CoordRingElem::Q(1, q_cut);
    case ModelId::XDi: return cubic + CoordRingElem::monomial({3, 0, 0, 0}, Gq(Rational(1, 3)), q_cut) + polylog(3, q_cut);
    default: return cubic - polylog(3, q_cut);
  }
}

StructureConstants structure_constants(ModelId id, int q_cut) {
  const CoordRingElem F = potential(id, q_cut);
  auto d = [](const CoordRingElem& f, int i) { return i == 0 ? d_w1(f) : d_w2(f); };
  StructureConstants sc;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int g = 0; g < 2; ++g) sc.lower[a][b][g] = d(d(d(F, a), b), g);
  const Mat2q& ei = model_data(id).eta_inv;
  for (int g = 0; g < 2; ++g)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        sc.upper[g][a][b] = sc.lower[0][a][b] * ei(g, 0) + sc.lower[1][a][b] * ei(g, 1);
  return sc;
}

Mat2c intersection_form_p1(int q_cut) {
  Mat2c g;
  g(0, 0) = CoordRingElem::Q(1, q_cut) * Gq(2);
  g(0, 1) = CoordRingElem::w1(q_cut);
  g(1, 0) = CoordRingElem::w1(q_cut);
  g(1, 1) = CoordRingElem(Gq(2), q_cut);
  return g;
}

CoordRingElem pair_eta(ModelId id, const Vec2c& f, const Vec2c& g) {
  const Mat2q& ei = model_data(id).eta_inv;
  CoordRingElem s = CoordRingElem::monomial({}, Gq(0), std::min(f(0).q_cut(), g(0).q_cut()));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (!ei(a, b).is_zero()) s += f(a) * g(b) * ei(a, b);
  return s;
}

Gq b_coefficient(Case c, int beta, int n, int alpha, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("b_coefficient: negative index");
  auto ipow = [](int base, int e) { return e == 0 ? Rational(1) : Rational(base).pow(e); };  // 0^0 = 1
  const Rational fact_inv = Rational(1) / [&] {
    Rational f(1);
    for (int j = 2; j <= n; ++j) f *= Rational(j);
    return f;
  }();
  if (beta == 1) {
    Rational weight = alpha == 1 ? Rational(1) : (c == Case::Di ? Rational(2 * m) : Rational(2 * m + 1));
    Gq v(ipow(n, m) * fact_inv * weight);
    return c == Case::Di ? v : v * Gq::i_pow(n - 1);
  }
  if (alpha != 2) return Gq(0);
  Gq v(ipow(n + 1, m) * fact_inv);
  return c == Case::Di ? v : v * Gq::i_pow(n);
}

CoordinateMap coordinate_map(Case c, int q_cut) {
  const CoordRingElem one(Gq(1), q_cut);
  const CoordRingElem Q = CoordRingElem::Q(1, q_cut);
  const CoordRingElem e1 = CoordRingElem::exp_w1(1, q_cut);
  CoordinateMap m;
  if (c == Case::Di) {
    m.v1 = e1 * (one + Q);
    m.v2 = CoordRingElem::w1(q_cut) * Gq(2) + CoordRingElem::w2(q_cut);
    m.Qv = Q * CoordRingElem::exp_w1(2, q_cut);
  } else {
    m.v1 = e1 * (one - Q * Gq(2)) * Gq::i();
    m.v2 = CoordRingElem::w1(q_cut) * Gq(2) + CoordRingElem::w2(q_cut) + log(one - Q);
    m.Qv = Q * CoordRingElem::exp_w1(2, q_cut) * (one - Q);
  }
  return m;
}

CoordRingElem pull_back(Case c, const CoordRingElem& f, int q_cut) {
  const CoordinateMap m = coordinate_map(c, q_cut);
  SubstImages<CoordRingElem> im{CoordRingElem(Gq(1), q_cut), m.v1, m.v2, std::nullopt, std::nullopt, m.Qv};
  return substitute(f.truncated(q_cut), im);
}

Mat2c m_matrix(int q_cut) {
  const CoordRingElem Q = CoordRingElem::Q(1, q_cut);
  const CoordRingElem em = CoordRingElem::exp_w1(-1, q_cut);
  Mat2c M;
  M(0, 0) = em;
  M(0, 1) = Q * Gq::i();
  M(1, 0) = -em;
  M(1, 1) = (CoordRingElem(Gq(1), q_cut) - Q) * Gq::i();
  return M;
}

}  // namespace fv
