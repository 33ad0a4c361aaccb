#include "fv/hierarchy.hpp"

#include <stdexcept>

#include "fv/special.hpp"

namespace fv {

PointEvaluator::PointEvaluator(TimeSeries u1, TimeSeries u2)
    : space_(u1.space()), u1_(std::move(u1)), u2_(std::move(u2)) {}

const TimeSeries& PointEvaluator::poly(int a, int b) {
  auto it = poly_.find({a, b});
  if (it != poly_.end()) return it->second;
  TimeSeries v = a == 0 && b == 0 ? TimeSeries::constant(space_, Gq(1))
                 : a > 0          ? poly(a - 1, b) * u1_
                                  : poly(a, b - 1) * u2_;
  return poly_.emplace(std::make_pair(a, b), std::move(v)).first->second;
}

const TimeSeries& PointEvaluator::prefactor(int m, int d) {
  auto it = pre_.find({m, d});
  if (it != pre_.end()) return it->second;
  TimeSeries v;
  if (m == 0 && d == 0) v = TimeSeries::constant(space_, Gq(1));
  else if (m == 1 && d == 0) v = exp(u1_);
  else if (m == -1 && d == 0) v = exp(-u1_);
  else if (m == 0 && d == 1) v = exp(u2_).q_shift(1);
  else if (d > 0) v = prefactor(m, d - 1) * prefactor(0, 1);
  else v = m > 0 ? prefactor(m - 1, 0) * prefactor(1, 0) : prefactor(m + 1, 0) * prefactor(-1, 0);
  return pre_.emplace(std::make_pair(m, d), std::move(v)).first->second;
}

TimeSeries PointEvaluator::eval(const CoordRingElem& f) { return eval_combination({{TimeSeries(), f}}); }

TimeSeries PointEvaluator::eval_combination(const std::vector<std::pair<TimeSeries, CoordRingElem>>& terms) {
  std::map<std::pair<int, int>, TimeSeries> acc;
  for (const auto& [mult, f] : terms) {
    std::map<std::pair<int, int>, TimeSeries> lin;
    for (const auto& [key, c] : f.terms()) {
      const Mono mo = CoordRingElem::unpack(key);
      if (mo.d > space_->q_cut()) continue;
      auto [it, fresh] = lin.try_emplace({mo.m, mo.d}, space_);
      it->second.add_scaled(poly(mo.a, mo.b), c);
    }
    for (auto& [md, l] : lin) {
      auto [it, fresh] = acc.try_emplace(md, space_);
      if (mult.space()) it->second += mult * l;
      else it->second += l;
    }
  }
  TimeSeries out(space_);
  for (const auto& [md, a] : acc) {
    if (md.first == 0 && md.second == 0) out += a;
    else out += prefactor(md.first, md.second) * a;
  }
  return out;
}

TimeSeries shifted_time(const TimeConfig& cfg, const TimeSpacePtr& space, int alpha, int k) {
  TimeSeries s = TimeSeries::variable(space, alpha, k);
  if (alpha == 1 && k == 0) s += TimeSeries::constant(space, cfg.base);
  if (alpha == 1 && k == 1) s -= TimeSeries::constant(space, Gq(1));
  return s;
}

CoordRingElem el_function(const TimeConfig& cfg, int alpha, int k) {
  return cfg.kind == SolutionKind::Plain ? theta(cfg.model, alpha, k, cfg.q_cut)
                                         : contracted_theta(cfg.composed, alpha, k, cfg.q_cut);
}

CoordRingElem el_omega(const TimeConfig& cfg, int a, int k, int b, int l) {
  return cfg.kind == SolutionKind::Plain ? omega(cfg.model, a, k, b, l, cfg.q_cut)
                                         : contracted_omega(cfg.composed, a, k, b, l, cfg.q_cut);
}

namespace {

struct ElData {
  std::vector<std::pair<int, int>> labels;
  std::vector<std::array<CoordRingElem, 2>> grads;
};

ElData el_data(const TimeConfig& cfg) {
  ElData d;
  for (int a = 1; a <= 2; ++a)
    for (int k = 0; k <= cfg.k_max; ++k) {
      const CoordRingElem f = el_function(cfg, a, k);
      d.labels.emplace_back(a, k);
      d.grads.push_back({d_w1(f), d_w2(f)});
    }
  return d;
}

std::array<TimeSeries, 2> el_eval(const TimeConfig& cfg, const ElData& d, const TimeSpacePtr& space,
                                  const std::array<TimeSeries, 2>& w) {
  PointEvaluator pe(w[0], w[1]);
  std::array<TimeSeries, 2> g;
  for (int beta = 0; beta < 2; ++beta) {
    std::vector<std::pair<TimeSeries, CoordRingElem>> terms;
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      TimeSeries s = shifted_time(cfg, space, d.labels[i].first, d.labels[i].second);
      if (s.is_zero()) continue;
      terms.emplace_back(std::move(s), d.grads[i][beta]);
    }
    g[beta] = pe.eval_combination(terms);
  }
  return g;
}

using Mat2t = std::array<std::array<TimeSeries, 2>, 2>;

/// Jacobian of the EL system at a q-only point.
Mat2t el_jacobian(const TimeConfig& cfg, const TimeSpacePtr& space0, const std::array<TimeSeries, 2>& w) {
  PointEvaluator pe(w[0], w[1]);
  Mat2t j;
  for (int b = 0; b < 2; ++b)
    for (int g = 0; g < 2; ++g) {
      std::vector<std::pair<TimeSeries, CoordRingElem>> terms;
      for (auto [a, k] : {std::pair{1, 0}, std::pair{1, 1}}) {
        TimeSeries s = shifted_time(cfg, space0, a, k);
        if (s.is_zero()) continue;
        const CoordRingElem f = el_function(cfg, a, k);
        const CoordRingElem fb = b == 0 ? d_w1(f) : d_w2(f);
        terms.emplace_back(std::move(s), g == 0 ? d_w1(fb) : d_w2(fb));
      }
      j[b][g] = pe.eval_combination(terms);
    }
  return j;
}

Mat2t invert(const Mat2t& m) {
  const TimeSeries det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const TimeSeries di = inverse(det);
  return {{{m[1][1] * di, -(m[0][1] * di)}, {-(m[1][0] * di), m[0][0] * di}}};
}

std::array<TimeSeries, 2> mat_apply(const Mat2t& m, const std::array<TimeSeries, 2>& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

TimeSeries embed(const TimeSpacePtr& space, const TimeSeries& x0) { return TimeSeries::q_constant(space, x0.series(0)); }

}  // namespace

TopologicalSolution topological_solution(const TimeConfig& cfg) {
  TopologicalSolution sol;
  sol.cfg = cfg;
  sol.space = std::make_shared<const TimeSpace>(cfg.k_max, cfg.deg, cfg.q_cut);
  const TimeSpacePtr space0 = std::make_shared<const TimeSpace>(cfg.k_max, 0, cfg.q_cut);
  const ElData data = el_data(cfg);

  // base point: q-adic Newton on the times-free system
  std::array<TimeSeries, 2> w0{TimeSeries(space0), TimeSeries(space0)};
  bool converged = false;
  for (int it = 0; it < 2 * cfg.q_cut + 8; ++it) {
    const auto g = el_eval(cfg, data, space0, w0);
    if (g[0].is_zero() && g[1].is_zero()) {
      converged = true;
      break;
    }
    const Mat2t j = el_jacobian(cfg, space0, w0);
    if ((j[0][0] * j[1][1] - j[0][1] * j[1][0]).at(0, 0).is_zero())
      throw std::runtime_error("topological_solution: singular Jacobian at the base point");
    const auto step = mat_apply(invert(j), g);
    w0[0] -= step[0];
    w0[1] -= step[1];
  }
  if (!converged) throw std::runtime_error("topological_solution: base point did not converge");
  sol.base[0] = w0[0].series(0);
  sol.base[1] = w0[1].series(0);

  // chord iteration graded by time degree with the base-point Jacobian
  Mat2t jinv0 = invert(el_jacobian(cfg, space0, w0));
  Mat2t jinv;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) jinv[a][b] = embed(sol.space, jinv0[a][b]);
  std::array<TimeSeries, 2> w{embed(sol.space, w0[0]), embed(sol.space, w0[1])};
  converged = false;
  for (int it = 0; it <= cfg.deg + 2; ++it) {
    const auto g = el_eval(cfg, data, sol.space, w);
    sol.iterations = it;
    if (g[0].is_zero() && g[1].is_zero()) {
      converged = true;
      break;
    }
    const auto step = mat_apply(jinv, g);
    w[0] -= step[0];
    w[1] -= step[1];
  }
  if (!converged) throw std::runtime_error("topological_solution: truncation exhausted before the fixpoint");
  sol.w = w;
  return sol;
}

std::array<TimeSeries, 2> el_residual(const TopologicalSolution& sol) {
  return el_eval(sol.cfg, el_data(sol.cfg), sol.space, sol.w);
}

TimeSeries genus0_free_energy(const TopologicalSolution& sol) {
  const TimeConfig& cfg = sol.cfg;
  std::vector<std::pair<int, int>> labels;
  for (int a = 1; a <= 2; ++a)
    for (int k = 0; k <= cfg.k_max; ++k) labels.emplace_back(a, k);
  std::vector<std::pair<TimeSeries, CoordRingElem>> terms;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i; j < labels.size(); ++j) {
      const auto [a, k] = labels[i];
      const auto [b, l] = labels[j];
      TimeSeries m = shifted_time(cfg, sol.space, a, k) * shifted_time(cfg, sol.space, b, l);
      if (i == j) m *= Gq(Rational(1, 2));
      if (m.is_zero()) continue;
      terms.emplace_back(std::move(m), el_omega(cfg, a, k, b, l));
    }
  PointEvaluator pe(sol.w[0], sol.w[1]);
  return pe.eval_combination(terms);
}

TimeSeries a_shift(Case c, const TimeConfig& cfg, const TimeSpacePtr& space) {
  auto s = [&](int a, int k) {
    TimeSeries x = shifted_time(cfg, space, a, k);
    if (a == 1 && k == 1) x += TimeSeries::constant(space, Gq(1));
    return x;
  };
  TimeSeries out(space);
  for (int k = 0; k <= cfg.k_max; ++k) {
    const Rational fk = factorial(k);
    for (int l = 0; l <= cfg.k_max; ++l) {
      Gq coef(Rational(1) / (Rational(k + l + 1) * fk * factorial(l)));
      if (c == Case::Ad) coef *= Gq::i_pow(k + l + 1);
      out += s(1, k) * s(2, l) * coef;
    }
    Gq lin(Rational(1) / (Rational(k + 2) * fk));
    if (c == Case::Di) lin = -lin;
    else lin *= Gq::i_pow(k);
    out.add_scaled(s(2, k), lin);
  }
  return out;
}

Mat2c flow_matrix(ModelId id, int beta, int p, int q_cut) {
  const CoordRingElem th = theta(id, beta, p + 1, q_cut);
  const Mat2q& ei = model_data(id).eta_inv;
  const CoordRingElem h[2][2] = {{d_w1(d_w1(th)), d_w1(d_w2(th))}, {d_w2(d_w1(th)), d_w2(d_w2(th))}};
  Mat2c a;
  for (int al = 0; al < 2; ++al)
    for (int la = 0; la < 2; ++la) {
      CoordRingElem s(Gq(0), q_cut);
      for (int g = 0; g < 2; ++g)
        if (!ei(al, g).is_zero()) s += h[g][la] * ei(al, g);
      a(al, la) = s;
    }
  return a;
}

std::vector<std::pair<std::map<std::pair<int, int>, int>, std::vector<Gq>>> nonzero_terms(const TimeSeries& x) {
  std::vector<std::pair<std::map<std::pair<int, int>, int>, std::vector<Gq>>> out;
  const TimeSpace& sp = *x.space();
  for (int i = 0; i < sp.nmono(); ++i) {
    if (x.mono_is_zero(i)) continue;
    std::map<std::pair<int, int>, int> mono;
    for (int v = 0; v < sp.nvars(); ++v)
      if (const int e = sp.exponent(i, v)) mono[sp.var_label(v)] = e;
    out.emplace_back(std::move(mono), x.series(i));
  }
  return out;
}

}  // namespace fv
