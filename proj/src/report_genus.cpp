#include <algorithm>
#include <stdexcept>

#include "fv/report.hpp"
#include "fv/report_detail.hpp"
#include "fv/special.hpp"

namespace fv {

using namespace detail;

namespace {

const ModelId kModels[] = {ModelId::P1, ModelId::XDi, ModelId::XAd};

int x_cut(const SuiteParams& p) { return std::max(p.qmax, appendix_b().q_cut); }

JetFunction pushed(Case c, const JetFunction& f2, int qc, bool correspondence_sign) {
  JetFunction f = push_forward(jet_transform(c, 4, qc), f2);
  return correspondence_sign && c == Case::Ad ? -f : f;
}

std::string ins_label(const std::vector<Insertion>& ins) {
  std::string s;
  for (const auto& x : ins) s += std::string("t") + std::to_string(x.p) + "p" + std::to_string(x.alpha);
  return s.empty() ? "empty" : s;
}

}  // namespace

Genus2Context::Genus2Context(const SuiteParams& p) : q_cut_(x_cut(p)) {
  const Calibration cal = calibrate_reading();
  reading_ = cal.reading;
  cal_log_ = cal.log;
  const int pq = CoordRingElem::kExact;
  if (!p.f2_in.empty()) {
    f2_ = import_f2(p.f2_in);
    source_ = "file";
  } else {
    rec_ = reconstruct_f2_p1(reading_, p.jobs);
    f2_ = rec_->consistent ? rec_->f2 : JetFunction(jet_model(ModelId::P1, pq)->disc, JetPoly(pq));
    source_ = "reconstructed";
  }
  f2_di_ = pushed(Case::Di, f2_, q_cut_, true);
  f2_ad_ = pushed(Case::Ad, f2_, q_cut_, true);
  corr_[ModelId::P1] = std::make_unique<Correlators>(jet_model(ModelId::P1, pq), f1(ModelId::P1, pq), f2_);
  corr_[ModelId::XDi] = std::make_unique<Correlators>(jet_model(ModelId::XDi, q_cut_), f1(ModelId::XDi, q_cut_), f2_di_);
  corr_[ModelId::XAd] = std::make_unique<Correlators>(jet_model(ModelId::XAd, q_cut_), f1(ModelId::XAd, q_cut_), f2_ad_);
}

Correlators& Genus2Context::correlators(ModelId id) { return *corr_.at(id); }

Correlators& Genus2Context::ad_opposite_sign() {
  std::call_once(ad_plus_once_, [&] {
    ad_plus_ = std::make_unique<Correlators>(jet_model(ModelId::XAd, q_cut_), f1(ModelId::XAd, q_cut_),
                                             pushed(Case::Ad, f2_, q_cut_, false));
  });
  return *ad_plus_;
}

bool needs_genus2(const std::string& name) { return name == "genus2" || name == "bp" || name == "appendixB"; }

namespace {

std::vector<Task> genus1(const SuiteParams& p) {
  std::vector<Task> t;
  const int qc = p.qmax;
  for (Case cs : {Case::Di, Case::Ad}) {
    auto tr = std::make_shared<JetChangeOfVariables>(jet_transform(cs, 4, qc));
    for (int a = 1; a <= 2; ++a)
      for (int k = 1; k <= 4; ++k)
        t.push_back([=] {
          Check c = make_check(std::string("genus1.jet_transform.") + case_name(cs) + "." + std::to_string(a) + "." + std::to_string(k),
                               "jet change of variables satisfies its defining recursion",
                               {{"case", case_name(cs)}, {"alpha", a}, {"k", k}, {"D_q", qc}});
          const JetPoly r = jet_transform_residual(*tr, a, k);
          c.ok = r.is_zero();
          if (!c.ok) c.residual = r.str().substr(0, 200);
          return c;
        });
    t.push_back([=] {
      Check c = make_check(std::string("genus1.f1.") + case_name(cs), "derived F1 equals the closed form",
                           {{"case", case_name(cs)}, {"D_q", qc}});
      Gq dropped;
      const JetFunction d = derived_f1(cs, qc, &dropped);
      c.params["dropped_log_argument"] = dropped.str();
      set_residual(c, (d - f1(x_model(cs), qc)).reduced());
      return c;
    });
    t.push_back([=] {
      Check c = make_check(std::string("genus1.g1.") + case_name(cs), "G1 extraction matches the reference expression",
                           {{"case", case_name(cs)}, {"D_q", qc}});
      c.provenance = "paper";
      set_residual(c, (g_function1(x_model(cs), qc) - reference_jet_function(model_key(x_model(cs)), "G1", qc)).reduced());
      return c;
    });
  }
  t.push_back([=] {
    Check c = make_check("genus1.chain_rule.di", "d_x commutes with the diagonal jet change on F1", {{"case", "di"}, {"D_q", qc}});
    const auto tr = jet_transform(Case::Di, 4, qc);
    const int pq = CoordRingElem::kExact;
    const JetFunction fp = f1(ModelId::P1, pq);
    std::map<std::pair<int, int>, JetPoly> next;
    auto shift = [&next](int q) {
      return [&next, q](int a, int k) -> const JetPoly& {
        auto it = next.find({a, k});
        if (it == next.end()) it = next.emplace(std::make_pair(a, k), JetPoly::var(a, k + 1, q)).first;
        return it->second;
      };
    };
    const JetFunction lhs = push_forward(tr, apply_derivation(fp, shift(pq)));
    next.clear();
    const JetFunction rhs = apply_derivation(derived_f1(Case::Di, qc), shift(qc));
    set_residual(c, (lhs - rhs).reduced());
    return c;
  });
  t.push_back([] {
    Check c = make_check("genus1.calibration", "TRR operator reading calibrated on F1 of P1", {{"max_k", 3}});
    try {
      const Calibration cal = calibrate_reading();
      c.ok = true;
      c.params["reading"] = reading_name(cal.reading);
      c.params["log"] = cal.log;
    } catch (const std::exception& e) {
      c.residual = e.what();
    }
    return c;
  });
  for (ModelId id : kModels)
    for (int a = 1; a <= 2; ++a)
      for (int k = 1; k <= 3; ++k)
        t.push_back([=] {
          const int q = id == ModelId::P1 ? CoordRingElem::kExact : qc;
          Check c = make_check(std::string("genus1.trr1.") + model_key(id) + "." + std::to_string(a) + "." + std::to_string(k),
                               "genus-one TRR D_{a,k}F1 = delta_{k,1}/24 <<phi_a phi_g phi^g>>_0",
                               {{"model", model_key(id)}, {"alpha", a}, {"k", k}, {"D_q", id == ModelId::P1 ? Json("exact") : Json(qc)}});
          Correlators corr(jet_model(id, q), f1(id, q));
          set_residual(c, trr1_residual(corr, a, k, OperatorReading::Derived));
          return c;
        });
  for (ModelId id : kModels)
    t.push_back([=] {
      const int q = std::min(qc, 4);
      Check c = make_check(std::string("genus1.primary_jets.") + model_key(id), "primary-slice jets from the topological solution",
                           {{"model", model_key(id)}, {"D", 3}, {"D_q", q}});
      const auto r = check_primary_jets(id, q);
      c.ok = r.ok;
      if (!r.ok) c.residual = r.detail;
      c.params["detail"] = r.detail;
      return c;
    });
  return t;
}

}  // namespace

std::vector<Task> genus2_tasks(const SuiteParams& p, Genus2Context& ctx);
std::vector<Task> bp_tasks(Genus2Context& ctx);
std::vector<Task> appendix_b_tasks(Genus2Context& ctx);

std::vector<Task> genus12_tasks(const std::string& name, const SuiteParams& p, Genus2Context* ctx) {
  if (name == "genus1") return genus1(p);
  if (!ctx) throw std::logic_error("section " + name + " needs genus-two data");
  if (name == "genus2") return genus2_tasks(p, *ctx);
  if (name == "bp") return bp_tasks(*ctx);
  if (name == "appendixB") return appendix_b_tasks(*ctx);
  throw std::invalid_argument("unknown section " + name);
}

std::vector<Task> bp_tasks(Genus2Context& ctx) {
  std::vector<Task> t;
  const std::vector<Insertion> kinds = {{1, 0}, {2, 0}, {1, 1}, {2, 1}};
  std::vector<std::array<Insertion, 3>> triples;
  for (std::size_t i = 0; i < kinds.size(); ++i)
    for (std::size_t j = i; j < kinds.size(); ++j)
      for (std::size_t k = j; k < kinds.size(); ++k) triples.push_back({kinds[i], kinds[j], kinds[k]});
  Genus2Context* cx = &ctx;
  for (ModelId id : {ModelId::XDi, ModelId::XAd})
    for (const auto& tr : triples)
      t.push_back([=] {
        const std::string lab = ins_label({tr[0], tr[1], tr[2]});
        Check c = make_check(std::string("bp.") + model_key(id) + "." + lab, "genus-two BP relation on the primary slice",
                             {{"model", model_key(id)}, {"insertions", lab}, {"D_q", cx->q_cut()}});
        set_residual(c, bp_residual(cx->correlators(id), tr));
        return c;
      });
  t.push_back([=] {
    Check c = make_check("bp.diagnostic.XAd.opposite_sign", "BP relation for X_ad with F2 = +push(F2 of P1)",
                         {{"model", "XAd"}, {"triples", triples.size()}, {"D_q", cx->q_cut()}});
    c.ok = true;
    for (const auto& tr : triples)
      if (c.ok) set_residual(c, bp_residual(cx->ad_opposite_sign(), tr));
    return c;
  });
  return t;
}

std::vector<Task> appendix_b_tasks(Genus2Context& ctx) {
  std::vector<Task> t;
  const AppendixB& b = appendix_b();
  Genus2Context* cx = &ctx;
  for (const auto& o : b.correlators)
    t.push_back([&o, cx, qc = b.q_cut] {
      std::vector<Insertion> ins;
      for (const auto& [k, a] : o.insertions) ins.push_back({a, k});
      const std::string lab = ins_label(ins);
      Check c = make_check("appendixB." + std::string(model_key(o.model)) + ".g" + std::to_string(o.genus) + "." + lab,
                           "partial correlation function on the primary slice",
                           {{"model", model_key(o.model)}, {"genus", o.genus}, {"insertions", lab}, {"D_q", qc}});
      if (!o.note.empty()) c.params["note"] = o.note;
      c.provenance = o.provenance;
      const CoordRingElem v = correlation(cx->correlators(o.model), o.genus, ins).truncated(qc);
      set_residual(c, v - o.value);
      return c;
    });
  return t;
}

}  // namespace fv
