#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "fv/report.hpp"
#include "fv/report_detail.hpp"
#include "fv/special.hpp"

namespace fv {

using namespace detail;

namespace {

const ModelId kModels[] = {ModelId::P1, ModelId::XDi, ModelId::XAd};

// The displayed leading terms: coefficient (in xi = Li_0) of a jet monomial in the j-th D-adic digit.
struct LeadingTerm {
  Case c;
  int digit;
  JetKey jets;
  std::function<CoordRingElem(const CoordRingElem& xi)> coeff;
};

std::vector<LeadingTerm> leading_terms() {
  auto u = [](int a, int k, int e) { return jet_unit(a, k) * static_cast<unsigned>(e); };
  auto poly = [](const CoordRingElem& xi, std::initializer_list<int> c) {
    CoordRingElem r(Gq(0), xi.q_cut());
    for (int x : c) r = r * xi + CoordRingElem(Gq(x), xi.q_cut());
    return r;
  };
  auto base = [](const CoordRingElem& xi, int a, int b) { return pow(xi, a) * pow(xi + CoordRingElem(Gq(1), xi.q_cut()), b); };
  return {
      {Case::Di, 0, u(2, 1, 10), [=](const CoordRingElem& x) { return base(x, 4, 4) * poly(x, {64, 80, 24, 1}) * Gq(Rational(1, 90)); }},
      {Case::Di, 0, u(1, 1, 1) + u(2, 1, 9),
       [=](const CoordRingElem& x) { return base(x, 4, 4) * poly(x, {16, 24, 10, 1}) * Gq(Rational(4, 45)); }},
      {Case::Di, 1, u(2, 1, 8),
       [=](const CoordRingElem& x) { return base(x, 3, 3) * poly(x, {4096, 13888, 12240, 3160, 121}) * Gq(Rational(1, 5760)); }},
      {Case::Ad, 0, u(2, 1, 10), [=](const CoordRingElem& x) { return base(x, 4, 3) * Gq(Rational(-1, 90)); }},
      {Case::Ad, 0, u(2, 1, 8) + u(2, 2, 1), [=](const CoordRingElem& x) { return base(x, 4, 2) * Gq(Rational(-1, 15)); }},
  };
}

// primary genus-two closed forms: sign * (1 + 12 sign' Q ...) / (2880 (1-Q)^2)
CoordRingElem primary_closed_form(Case c, int qc) {
  const CoordRingElem q = CoordRingElem::Q(1, qc), one(Gq(1), qc);
  const CoordRingElem den = inverse(pow(one - q, 2)) * Gq(Rational(1, 2880));
  if (c == Case::Di) return -(one - q * Gq(14) + q * q) * den;
  return (one + q * Gq(10) + q * q) * den;
}

std::string jet_label(JetKey k) { return JetPoly::monomial(k, CoordRingElem(Gq(1))).str(); }

}  // namespace

std::vector<Task> genus2_tasks(const SuiteParams&, Genus2Context& ctx) {
  std::vector<Task> t;
  Genus2Context* cx = &ctx;
  t.push_back([cx] {
    Check c = make_check("genus2.f2_source", "F2 of P1 from the TRR2/TRR3 linear system or an ingested file",
                         {{"source", cx->source()}, {"reading", reading_name(cx->reading())}});
    if (const auto& r = cx->reconstruction()) {
      c.params["unknowns"] = r->unknowns;
      c.params["equations"] = r->equations;
      c.params["rank"] = r->rank;
      c.params["kernel_dim"] = r->kernel_dim;
      c.ok = r->consistent && r->kernel_dim == 0;
      if (!r->consistent) c.residual = "inconsistent linear system";
      else if (r->kernel_dim) c.residual = "kernel dimension " + std::to_string(r->kernel_dim);
    } else {
      c.ok = !cx->f2_p1().is_zero();
      if (!c.ok) c.residual = "ingested F2 is zero";
    }
    return c;
  });
  for (ModelId id : kModels) {
    const Json dq = id == ModelId::P1 ? Json("exact") : Json(cx->q_cut());
    for (int a = 1; a <= 2; ++a)
      for (int k = 2; k <= 6; ++k)
        t.push_back([=] {
          Check c = make_check(std::string("genus2.trr2.") + model_key(id) + "." + std::to_string(a) + "." + std::to_string(k),
                               "genus-two TRR D_{a,k}F2 = R_{a,k} (R = 0 for k > 4)",
                               {{"model", model_key(id)}, {"alpha", a}, {"k", k}, {"D_q", dq}});
          set_residual(c, trr2_residual(cx->correlators(id), a, k, cx->reading()));
          return c;
        });
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        t.push_back([=] {
          Check c = make_check(std::string("genus2.trr3.") + model_key(id) + "." + std::to_string(a) + "." + std::to_string(b),
                               "genus-two TRR D_{a,1}D_{b,1}F2 - 3<<phi_a phi_b phi^g>>_0 D_{g,1}F2 = R_{a,1;b,1}",
                               {{"model", model_key(id)}, {"alpha", a}, {"beta", b}, {"D_q", dq}});
          set_residual(c, trr3_residual(cx->correlators(id), a, b, cx->reading()));
          return c;
        });
  }
  t.push_back([cx] {
    Check c = make_check("genus2.diagnostic.XAd.opposite_sign", "genus-two TRRs for X_ad with F2 = +push(F2 of P1)",
                         {{"model", "XAd"}, {"D_q", cx->q_cut()}});
    c.ok = true;
    Correlators& corr = cx->ad_opposite_sign();
    for (int a = 1; a <= 2; ++a) {
      for (int k = 2; k <= 6 && c.ok; ++k) set_residual(c, trr2_residual(corr, a, k, cx->reading()));
      for (int b = 1; b <= 2 && c.ok; ++b) set_residual(c, trr3_residual(corr, a, b, cx->reading()));
    }
    return c;
  });
  int n = 0;
  for (const auto& lt : leading_terms())
    t.push_back([cx, lt, i = ++n] {
      Check c = make_check("genus2.leading." + std::string(case_name(lt.c)) + "." + std::to_string(i),
                           "displayed leading term of the X free energy F2",
                           {{"case", case_name(lt.c)}, {"disc_power", 4 - lt.digit}, {"jets", jet_label(lt.jets)}, {"D_q", cx->q_cut()}});
      c.provenance = "paper";
      const JetFunction& f = cx->f2_x(lt.c);
      const auto digits = disc_expansion(f.num_over(4), *f.disc());
      const CoordRingElem got = lt.digit < static_cast<int>(digits.size()) ? digits[lt.digit].coefficient(lt.jets)
                                                                         : CoordRingElem(Gq(0), cx->q_cut());
      set_residual(c, got - lt.coeff(polylog(0, cx->q_cut())));
      return c;
    });
  for (Case cs : {Case::Di, Case::Ad}) {
    t.push_back([cx, cs] {
      Check c = make_check(std::string("genus2.primary.") + case_name(cs), "primary restriction of the X free energy F2",
                           {{"case", case_name(cs)}, {"D_q", cx->q_cut()}});
      c.provenance = "paper";
      set_residual(c, evaluate_jets(cx->f2_x(cs), primary_jet) - primary_closed_form(cs, cx->q_cut()));
      return c;
    });
    t.push_back([cs] {
      constexpr int order = 8;
      Check c = make_check(std::string("genus2.polylog.") + case_name(cs), "primary F2 closed form as constant + Li_{-1}(Q)/240",
                           {{"case", case_name(cs)}, {"order", order}});
      const CoordRingElem one(Gq(1), order);
      const Gq c0(Rational(cs == Case::Di ? -1 : 1, 2880));
      set_residual(c, primary_closed_form(cs, order) - one * c0 - polylog(-1, order) * Gq(Rational(1, 240)));
      return c;
    });
  }
  t.push_back([] {
    constexpr int g = 2;
    Check c = make_check("genus2.bernoulli", "|B4 B2|/(2g(2g-2)(2g-2)!) = 1/2880 and |B4|/(2g(2g-2)!) = 1/240 at g = 2", {{"g", g}});
    auto fact = [](int n) {
      long f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f;
    };
    Rational b4 = bernoulli(2 * g), b2 = bernoulli(2 * g - 2);
    if (b4 < Rational(0)) b4 = -b4;
    if (b2 < Rational(0)) b2 = -b2;
    const Rational constant = b4 * b2 / Rational((2 * g) * (2 * g - 2) * fact(2 * g - 2));
    const Rational li = b4 / Rational((2 * g) * fact(2 * g - 2));
    c.params["constant"] = constant.str();
    c.params["li_coefficient"] = li.str();
    c.ok = constant == Rational(1, 2880) && li == Rational(1, 240);
    if (!c.ok) c.residual = "constant " + constant.str() + ", Li coefficient " + li.str();
    return c;
  });
  return t;
}

bool Section::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

bool VerificationReport::ok() const {
  return std::all_of(sections.begin(), sections.end(), [](const Section& s) { return s.ok(); });
}

int VerificationReport::count(bool passed) const {
  int n = 0;
  for (const auto& s : sections)
    for (const auto& c : s.checks) n += c.ok == passed;
  return n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {"theta", "omega", "lemmas", "genus0", "genus1", "genus2",
                                             "bp",    "appendixA", "appendixB", "all"};
  return n;
}

std::vector<std::string> suite_sections(const std::string& suite) {
  if (suite == "theta") return {"theta_table", "theta_dual", "theta_axioms"};
  if (suite == "omega") return {"omega_table", "omega_symmetry"};
  if (suite == "lemmas") return {"lemma_theta", "lemma_omega"};
  if (suite == "genus0" || suite == "genus1" || suite == "genus2" || suite == "bp" || suite == "appendixB") return {suite};
  if (suite == "appendixA") return {"theta_table", "omega_table", "topsol"};
  if (suite == "all")
    return {"theta_table", "theta_dual", "theta_axioms", "omega_table", "omega_symmetry", "lemma_theta", "lemma_omega",
            "genus0",      "topsol",     "genus1",       "genus2",      "bp",             "appendixB"};
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

Section run_section(const std::string& name, const SuiteParams& p, std::unique_ptr<Genus2Context>& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  Section s;
  s.name = name;
  std::vector<Task> tasks;
  if (name == "genus1" || needs_genus2(name)) {
    if (needs_genus2(name) && !ctx) ctx = std::make_unique<Genus2Context>(p);
    tasks = genus12_tasks(name, p, ctx.get());
  } else {
    tasks = genus0_side_tasks(name, p);
  }
  s.checks = run_tasks(std::move(tasks), p.jobs);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

VerificationReport run_suite(const std::string& suite, const SuiteParams& p) {
  validate(p);
  VerificationReport r;
  r.suite = suite;
  r.params = p;
  std::unique_ptr<Genus2Context> ctx;
  for (const auto& name : suite_sections(suite)) r.sections.push_back(run_section(name, p, ctx));
  r.f2_source = ctx ? ctx->source() : "none";
  if (ctx) r.f2_p1 = ctx->f2_p1();
  return r;
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["schema"] = "report_v1";
  j["suite"] = r.suite;
  j["params"] = {{"D", r.params.deg}, {"D_q", r.params.qmax}, {"K_max", r.params.kmax}, {"Z_max", r.params.zmax}};
  j["f2_source"] = r.f2_source;
  j["status"] = r.ok() ? "pass" : "fail";
  j["counts"] = {{"checks", r.count(true) + r.count(false)}, {"passed", r.count(true)}, {"failed", r.count(false)}};
  Json sections = Json::array();
  for (const auto& s : r.sections) {
    Json checks = Json::array();
    for (const auto& c : s.checks) {
      Json x;
      x["id"] = c.id;
      x["anchor"] = c.anchor;
      x["params"] = c.params;
      x["status"] = c.ok ? "pass" : "fail";
      x["residual"] = c.residual;
      if (!c.provenance.empty()) x["provenance"] = c.provenance;
      checks.push_back(std::move(x));
    }
    sections.push_back({{"name", s.name}, {"status", s.ok() ? "pass" : "fail"}, {"checks", std::move(checks)}});
  }
  j["sections"] = std::move(sections);
  return j;
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream out;
  char buf[64];
  out << "suite " << r.suite << "  D=" << r.params.deg << " D_q=" << r.params.qmax << " K_max=" << r.params.kmax
      << " Z_max=" << r.params.zmax << "  F2 source: " << r.f2_source << "\n";
  for (const auto& s : r.sections) {
    int pass = 0;
    for (const auto& c : s.checks) pass += c.ok;
    std::snprintf(buf, sizeof buf, "%.2fs", s.seconds);
    out << "\n== " << s.name << "  " << pass << "/" << s.checks.size() << " pass  (" << buf << ")\n";
    for (const auto& c : s.checks) {
      std::snprintf(buf, sizeof buf, "%.2fs", c.seconds);
      out << (c.ok ? "  PASS " : "  FAIL ") << c.id;
      if (!c.provenance.empty()) out << " [" << c.provenance << "]";
      out << "  " << buf << "\n";
      if (!c.ok) out << "       residual: " << c.residual << "\n";
    }
  }
  out << "\n" << (r.ok() ? "PASS" : "FAIL") << ": " << r.count(true) << " passed, " << r.count(false) << " failed\n";
  return out.str();
}

}  // namespace fv
