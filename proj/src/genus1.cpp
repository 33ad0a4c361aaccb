#include <map>
#include <memory>
#include <stdexcept>

#include "fv/genus12.hpp"

namespace fv {

namespace {

// log(lambda) for a unit lambda = c e^{m w1}(1 + O(Q)); log c is split off.
CoordRingElem log_unit(const CoordRingElem& lambda, Gq* constant) {
  Gq c;
  bool found = false;
  for (const auto& [key, v] : lambda.terms()) {
    const Mono mo = CoordRingElem::unpack(key);
    if (mo.d != 0) continue;
    if (found || mo.a || mo.b) throw SeriesError("log_unit: Q^0 part is not a single exponential");
    c = v;
    found = true;
  }
  if (!found) throw SeriesError("log_unit: vanishing leading part");
  if (constant) *constant = c;
  return log(lambda * c.inverse());
}

ModelId other_model(Case c) { return x_model(c); }

// d/ds^{1,0} on u-jets: d/dx, plus the t^{2,0} flow in the anti-diagonal case.
struct SourceDerivation {
  SourceDerivation(Case c, int q_cut) : c_(c), q_cut_(q_cut) {
    if (c == Case::Ad) {
      const CoordRingElem xi = polylog(0, q_cut);
      h_ = std::make_unique<JetFlow>(-JetPoly::var(2, 1, q_cut) * xi, JetPoly::var(1, 1, q_cut));
    }
  }
  const JetPoly& image(int a, int k) {
    auto& slot = cache_[{a, k}];
    if (slot.is_zero()) {
      slot = JetPoly::var(a, k + 1, q_cut_);
      if (h_) slot += h_->image(a, k);
    }
    return slot;
  }
  Case c_;
  int q_cut_;
  std::unique_ptr<JetFlow> h_;
  std::map<std::pair<int, int>, JetPoly> cache_;
};

}  // namespace

JetChangeOfVariables jet_transform(Case c, int order, int q_cut) {
  if (order < 0 || order >= kMaxJet) throw std::invalid_argument("jet_transform: order out of range");
  JetChangeOfVariables t;
  t.c = c;
  t.order = order;
  t.q_cut = q_cut;
  const CoordinateMap map = coordinate_map(c, q_cut);
  t.v0 = {map.v1, map.v2};
  SourceDerivation ds(c, q_cut);
  auto img = [&](int a, int k) -> const JetPoly& { return ds.image(a, k); };
  for (int a = 0; a < 2; ++a) {
    t.vk[a].push_back(JetPoly(t.v0[a]));
    for (int k = 1; k <= order; ++k) t.vk[a].push_back(apply_derivation(t.vk[a].back(), img));
  }
  if (order >= 1) {
    const JetPoly p = t.vk[0][1] * t.vk[0][1] - t.vk[1][1] * t.vk[1][1] * map.Qv;
    t.disc_factor = p.coefficient(jet_unit(1, 1) * 2);
    const auto& d = *jet_model(other_model(c), q_cut)->disc;
    if (!(p == d * t.disc_factor)) throw std::logic_error("jet_transform: P1 discriminant is not a multiple of D_X");
  }
  return t;
}

JetPoly jet_transform_residual(const JetChangeOfVariables& t, int alpha, int k) {
  const int q = t.q_cut;
  const JetPoly& prev = t.vk[alpha - 1][k - 1];
  JetPoly r(q);
  // sum_{l >= 1} u^b_l d v_{k-1} / d u^b_{l-1}
  for (int b = 1; b <= 2; ++b)
    for (int l = 1; l <= prev.max_order() + 1; ++l) r += partial(prev, b, l - 1) * JetPoly::var(b, l, q);
  if (t.c == Case::Ad) {
    // sum_{m >= 0} d v_{k-1} / d u^g_m (sum_l u^b_l d/du^b_{l-1})^m h^g
    const CoordRingElem xi = polylog(0, q);
    JetPoly h[2] = {-JetPoly::var(2, 1, q) * xi, JetPoly::var(1, 1, q)};
    for (int m = 0; m <= prev.max_order(); ++m) {
      for (int g = 1; g <= 2; ++g) r += partial(prev, g, m) * h[g - 1];
      for (auto& x : h) x = total_x(x);
    }
  }
  return r - t.vk[alpha - 1][k];
}

JetFunction push_forward(const JetChangeOfVariables& t, const JetFunction& f) {
  const auto xm = jet_model(other_model(t.c), t.q_cut);
  if (f.num().max_order() > t.order) throw std::invalid_argument("push_forward: jet order exceeds the transform");
  auto img = [&](int a, int k) -> const JetPoly& { return t.vk[a - 1][k]; };
  auto coef = [&](const CoordRingElem& c) { return pull_back(t.c, c, t.q_cut); };
  JetPoly num = substitute(f.num(), img, coef);
  if (f.pow()) num *= pow(inverse(t.disc_factor), f.pow());
  if (!f.log_coeff().is_zero()) {
    // c log P = c log(lambda) + c log D_X; the constant log of lambda's leading coefficient is dropped
    JetPoly extra(log_unit(t.disc_factor, nullptr) * f.log_coeff());
    num += f.pow() ? extra * pow(*xm->disc, f.pow()) : extra;
  }
  return JetFunction(xm->disc, std::move(num), f.pow(), f.log_coeff());
}

JetFunction f1(ModelId id, int q_cut) {
  const auto m = jet_model(id, q_cut);
  CoordRingElem r = CoordRingElem::w2(q_cut) * Gq(Rational(-1, 24));
  if (id == ModelId::XDi) r -= polylog(1, q_cut) * Gq(Rational(1, 12));
  if (id == ModelId::XAd) r += polylog(1, q_cut) * Gq(Rational(1, 12));
  return JetFunction(m->disc, JetPoly(r), 0, Gq(Rational(1, 24)));
}

JetFunction derived_f1(Case c, int q_cut, Gq* dropped_constant) {
  const JetChangeOfVariables t = jet_transform(c, 1, q_cut);
  if (dropped_constant) log_unit(t.disc_factor, dropped_constant);
  // genus-one sign (-1)^{g-1} = +1 in both cases
  return push_forward(t, f1(ModelId::P1, q_cut));
}

JetFunction g_function1(ModelId id, int q_cut) {
  const auto m = jet_model(id, q_cut);
  const auto& v = m->v_mat;
  const JetPoly det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
  const CoordRingElem lambda = det.coefficient(jet_unit(1, 1) * 2);
  if (!(det == *m->disc * lambda)) throw std::logic_error("g_function1: det(c(w_x)) is not a multiple of the discriminant");
  const JetFunction f = f1(id, q_cut);
  JetPoly num = f.num();
  num -= JetPoly(log_unit(lambda, nullptr) * Gq(Rational(1, 24)));
  return JetFunction(m->disc, std::move(num), f.pow(), f.log_coeff() - Gq(Rational(1, 24)));
}

}  // namespace fv
