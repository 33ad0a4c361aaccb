#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "fv/genus12.hpp"

namespace fv {

namespace {

JetPoly jp(const CoordRingElem& c) { return JetPoly(c); }

std::shared_ptr<const JetModel> build_model(ModelId id, int q_cut) {
  auto m = std::make_shared<JetModel>();
  m->id = id;
  m->q_cut = q_cut;
  const FrobeniusModel& fm = model_data(id);
  m->eta = fm.eta;
  m->eta_inv = fm.eta_inv;
  const CoordRingElem f = potential(id, q_cut);
  const CoordRingElem g[2] = {d_w1(f), d_w2(f)};
  m->hess = {{{d_w1(g[0]), d_w2(g[0])}, {d_w1(g[1]), d_w2(g[1])}}};
  const StructureConstants sc = structure_constants(id, q_cut);
  m->c_up = sc.upper;

  const JetPoly w11 = JetPoly::var(1, 1, q_cut), w21 = JetPoly::var(2, 1, q_cut);
  JetPoly d;
  switch (id) {
    case ModelId::P1:
      d = w11 * w11 - w21 * w21 * CoordRingElem::Q(1, q_cut);
      break;
    case ModelId::XDi: {
      const CoordRingElem xi = polylog(0, q_cut);
      d = w11 * w11 - w11 * w21 * (xi * Gq(2)) - w21 * w21 * xi;
      break;
    }
    case ModelId::XAd:
      d = w11 * w11 + w21 * w21 * polylog(0, q_cut);
      break;
  }
  m->disc = std::make_shared<const JetPoly>(std::move(d));

  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      CoordRingElem u(Gq(0), q_cut);
      for (int c = 0; c < 2; ++c)
        if (!m->eta_inv(b, c).is_zero()) u += m->hess[a][c] * m->eta_inv(b, c);
      m->u_mat[b][a] = jp(u);
      JetPoly v(q_cut);
      for (int e = 0; e < 2; ++e) v += JetPoly::var(e + 1, 1, q_cut) * m->c_up[b][a][e];
      m->v_mat[b][a] = v;
    }
  return m;
}

}  // namespace

std::shared_ptr<const JetModel> jet_model(ModelId id, int q_cut) {
  static std::mutex mu;
  static std::map<std::pair<ModelId, int>, std::shared_ptr<const JetModel>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{id, q_cut}];
  if (!slot) slot = build_model(id, q_cut);
  return slot;
}

JetFlow::JetFlow(JetPoly y1, JetPoly y2) {
  img_[0].push_back(std::move(y1));
  img_[1].push_back(std::move(y2));
}

const JetPoly& JetFlow::image(int alpha, int k) {
  auto& v = img_[alpha - 1];
  while (static_cast<int>(v.size()) <= k) v.push_back(total_x(v.back()));
  return v[k];
}

JetFlow time_flow(const JetModel& m, int alpha, int p) {
  const CoordRingElem th = theta(m.id, alpha, p + 1, m.q_cut);
  const JetPoly dx[2] = {total_x(jp(d_w1(th))), total_x(jp(d_w2(th)))};
  JetPoly y[2] = {JetPoly(m.q_cut), JetPoly(m.q_cut)};
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c)
      if (!m.eta_inv(b, c).is_zero()) y[b] += dx[c] * m.eta_inv(b, c);
  return JetFlow(std::move(y[0]), std::move(y[1]));
}

const char* reading_name(OperatorReading r) { return r == OperatorReading::Literal ? "literal" : "derived"; }

TrrOperator::TrrOperator(std::shared_ptr<const JetModel> m, int alpha, int order, OperatorReading reading)
    : m_(std::move(m)), alpha_(alpha), order_(order), reading_(reading), zero_(m_->q_cut) {
  if (order < 0) throw std::invalid_argument("TrrOperator: negative order");
  g_.push_back({reading == OperatorReading::Derived ? m_->v_mat : m_->u_mat});
}

const JetPoly& TrrOperator::image(int beta, int p) {
  const Mat& gen = reading_ == OperatorReading::Derived ? m_->v_mat : m_->u_mat;
  auto mul = [&](const Mat& a, const Mat& b) {
    Mat r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
  };
  while (static_cast<int>(g_.size()) <= p) {
    const auto& prev = g_.back();
    std::vector<Mat> next(prev.size() + 1);
    for (std::size_t j = 0; j < next.size(); ++j) {
      Mat r;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r[a][b] = JetPoly(m_->q_cut);
      if (j < prev.size())
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) r[a][b] = total_x(prev[j][a][b]);
      if (j >= 1 && j - 1 < prev.size()) {
        const Mat t = reading_ == OperatorReading::Derived ? mul(prev[j - 1], gen) : mul(gen, prev[j - 1]);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) r[a][b] += t[a][b];
      }
      next[j] = std::move(r);
    }
    g_.push_back(std::move(next));
  }
  const auto& gp = g_[p];
  if (order_ >= static_cast<int>(gp.size())) return zero_;
  return gp[order_][beta - 1][alpha_ - 1];
}

Gq primary_jet(int alpha, int k) { return alpha == 1 && k == 1 ? Gq(1) : Gq(0); }

JetFunction prune_for_primary(const JetFunction& f, int budget) {
  std::vector<JetPoly::Term> keep;
  for (const auto& t : f.num().terms()) {
    int bad = 0;
    for (int k = 1; k <= kMaxJet; ++k) bad += jet_exponent(t.first, 2, k) + (k >= 2 ? jet_exponent(t.first, 1, k) : 0);
    if (bad <= budget) keep.push_back(t);
  }
  if (keep.size() == f.num().size()) return f;
  return JetFunction(f.disc(), JetPoly::from_terms(std::move(keep), f.num().q_cut()), f.pow(), f.log_coeff());
}

Correlators::Correlators(std::shared_ptr<const JetModel> m, JetFunction f1, std::optional<JetFunction> f2)
    : m_(std::move(m)), f1_(std::move(f1)), f2_(std::move(f2)) {}

JetFlow& Correlators::flow(const Insertion& x) {
  auto& slot = flows_[x];
  if (!slot) slot = std::make_unique<JetFlow>(time_flow(*m_, x.alpha, x.p));
  return *slot;
}

JetFunction Correlators::base(int genus, const std::vector<Insertion>& ins) const {
  switch (genus) {
    case 0: {
      const CoordRingElem o = omega(m_->id, ins[0].alpha, ins[0].p, ins[1].alpha, ins[1].p, m_->q_cut);
      return JetFunction(m_->disc, JetPoly(o), 0);
    }
    case 1:
      return f1_;
    case 2:
      if (!f2_) throw std::logic_error("Correlators: no genus-two free energy available");
      return *f2_;
    default:
      throw std::invalid_argument("Correlators: genus out of range");
  }
}

JetFunction Correlators::build(int genus, const std::vector<Insertion>& ins, int prune) {
  const std::size_t floor = genus == 0 ? 2 : 0;
  if (ins.size() < floor) throw std::invalid_argument("Correlators: genus-zero correlators need two insertions");
  auto key = std::make_tuple(genus, ins, prune);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  JetFunction r;
  if (ins.size() == floor) {
    r = base(genus, ins);
  } else {
    std::vector<Insertion> head(ins.begin(), ins.end() - 1);
    const JetFunction h = build(genus, head, prune < 0 ? -1 : prune + 1);
    r = apply_derivation(h, flow(ins.back()).fn());
  }
  if (prune >= 0) r = prune_for_primary(r, prune);
  return cache_.emplace(std::move(key), r).first->second;
}

JetFunction Correlators::get(int genus, std::vector<Insertion> ins) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  std::sort(ins.begin(), ins.end());
  return build(genus, ins, -1);
}

CoordRingElem Correlators::at_primary(int genus, std::vector<Insertion> ins) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  std::sort(ins.begin(), ins.end());
  return evaluate_jets(build(genus, ins, 0), primary_jet);
}

}  // namespace fv
