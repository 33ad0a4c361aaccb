#include "fv/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fv/hierarchy.hpp"
#include "fv/report_detail.hpp"
#include "fv/verify.hpp"

namespace fv {

namespace detail {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int extra = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)))) - 1;
  for (int t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::vector<Check> run_tasks(std::vector<Task> tasks, int jobs) {
  std::vector<Check> out(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    out[i] = tasks[i]();
    out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  return out;
}

Check make_check(std::string id, std::string anchor, Json params) {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.params = std::move(params);
  return c;
}

void set_residual(Check& c, const CoordRingElem& r) {
  c.ok = r.is_zero();
  c.residual = residual_summary(r);
}

void set_residual(Check& c, const JetFunction& r) {
  c.ok = r.is_zero();
  c.residual = residual_summary(r);
}

std::string series_mismatch(const std::vector<Gq>& got, const std::vector<Gq>& want) {
  const std::size_t n = std::min(got.size(), want.size());
  for (std::size_t d = 0; d < n; ++d)
    if (!(got[d] == want[d])) return "q^" + std::to_string(d) + ": computed " + got[d].str() + ", stored " + want[d].str();
  return "0";
}

}  // namespace detail

using namespace detail;

std::string residual_summary(const CoordRingElem& x) {
  if (x.is_zero()) return "0";
  return CoordRingElem::from_terms({x.terms().front()}, x.q_cut()).str();
}

std::string residual_summary(const JetFunction& x) {
  if (x.is_zero()) return "0";
  if (x.num().is_zero()) return "log coefficient " + x.log_coeff().str();
  const auto& [key, c] = x.num().terms().front();
  std::string s = JetPoly::monomial(key, CoordRingElem::from_terms({c.terms().front()}, c.q_cut())).str();
  if (x.pow() > 0) s += " / D^" + std::to_string(x.pow());
  return s;
}

void validate(const SuiteParams& p) {
  auto in = [](int v, int lo, int hi, const char* name) {
    if (v < lo || v > hi)
      throw std::invalid_argument(std::string(name) + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
  };
  in(p.deg, 1, 6, "deg");
  in(p.qmax, 2, 10, "qmax");
  in(p.kmax, 1, 6, "kmax");
  in(p.zmax, 2, 10, "zmax");
  in(p.jobs, 1, 256, "jobs");
}

namespace {

const ModelId kModels[] = {ModelId::P1, ModelId::XDi, ModelId::XAd};

std::string label(ModelId id, int a, int k) {
  return std::string(model_key(id)) + "." + std::to_string(a) + "." + std::to_string(k);
}

std::vector<Task> theta_table() {
  std::vector<Task> t;
  const AppendixA& a = appendix_a();
  for (const auto& o : a.theta)
    t.push_back([&o, qc = a.q_cut] {
      Check c = make_check("theta.table." + label(o.model, o.alpha, o.k), "theta_{alpha,k} table",
                           {{"model", model_key(o.model)}, {"alpha", o.alpha}, {"k", o.k}, {"D_q", qc}});
      c.provenance = o.provenance;
      set_residual(c, theta(o.model, o.alpha, o.k, qc) - o.value);
      return c;
    });
  return t;
}

std::vector<Task> theta_dual(const SuiteParams& p) {
  std::vector<Task> t;
  for (ModelId id : kModels)
    for (int a = 1; a <= 2; ++a)
      for (int k = 0; k < p.zmax; ++k)
        t.push_back([=] {
          Check c = make_check("theta.dual." + label(id, a, k), "closed-form theta vs recursive theta",
                               {{"model", model_key(id)}, {"alpha", a}, {"k", k}, {"D_q", p.qmax}});
          set_residual(c, theta(id, a, k, p.qmax) - theta_recursive(id, a, k, p.qmax));
          return c;
        });
  return t;
}

std::vector<Task> theta_axioms(const SuiteParams& p) {
  std::vector<Task> t;
  for (ModelId id : kModels)
    t.push_back([=] {
      Check c = make_check(std::string("theta.axioms.") + model_key(id),
                           "theta recursion, normalization, orthogonality, quasi-homogeneity, conserved densities",
                           {{"model", model_key(id)}, {"Z_max", p.zmax}, {"D_q", p.qmax}});
      int n = 0;
      c.ok = true;
      for (const auto& r : verify_theta_axioms(id, p.zmax, p.qmax)) {
        ++n;
        if (!r.ok() && c.ok) {
          c.ok = false;
          c.residual = r.id + ": " + residual_summary(r.value);
        }
      }
      c.params["relations"] = n;
      return c;
    });
  return t;
}

std::vector<Task> omega_table() {
  std::vector<Task> t;
  const AppendixA& a = appendix_a();
  for (const auto& o : a.omega)
    t.push_back([&o, qc = a.q_cut] {
      Check c = make_check("omega.table." + std::string(model_key(o.model)) + "." + std::to_string(o.a) +
                               std::to_string(o.k) + "." + std::to_string(o.b) + std::to_string(o.l),
                           "two-point function Omega_{a,k;b,l} table",
                           {{"model", model_key(o.model)}, {"a", o.a}, {"k", o.k}, {"b", o.b}, {"l", o.l}, {"D_q", qc}});
      c.provenance = o.provenance;
      set_residual(c, omega(o.model, o.a, o.k, o.b, o.l, qc) - o.value);
      return c;
    });
  return t;
}

std::vector<Task> omega_symmetry(const SuiteParams& p) {
  std::vector<Task> t;
  const int kl = std::min(p.kmax, 3);
  for (ModelId id : kModels)
    t.push_back([=] {
      Check c = make_check(std::string("omega.symmetry.") + model_key(id),
                           "Omega_{a,k;b,l} = Omega_{b,l;a,k} and d Omega_{a,0;b,0} = c_{ab.}",
                           {{"model", model_key(id)}, {"k_max", kl}, {"D_q", p.qmax}});
      c.ok = true;
      const auto sc = structure_constants(id, p.qmax);
      for (int a = 1; a <= 2 && c.ok; ++a)
        for (int b = 1; b <= 2 && c.ok; ++b) {
          const CoordRingElem o = omega(id, a, 0, b, 0, p.qmax);
          for (int g = 0; g < 2 && c.ok; ++g) set_residual(c, grad(o)(g) - sc.lower[a - 1][b - 1][g]);
          for (int k = 0; k <= kl && c.ok; ++k)
            for (int l = 0; l <= kl && c.ok; ++l)
              set_residual(c, omega(id, a, k, b, l, p.qmax) - omega(id, b, l, a, k, p.qmax));
        }
      return c;
    });
  return t;
}

std::vector<Task> lemma_theta(const SuiteParams& p) {
  std::vector<Task> t;
  for (Case cs : {Case::Di, Case::Ad})
    for (int a = 1; a <= 2; ++a)
      for (int k = 0; k <= p.kmax; ++k)
        t.push_back([=] {
          Check c = make_check(std::string("lemma.theta.") + case_name(cs) + "." + std::to_string(a) + "." + std::to_string(k),
                               "theta relation between P1 and X", {{"case", case_name(cs)}, {"alpha", a}, {"k", k}, {"D_q", p.qmax}});
          c.ok = true;
          for (const auto& r : verify_theta_relation(cs, a, k, p.qmax))
            if (c.ok) set_residual(c, r);
          return c;
        });
  return t;
}

std::vector<Task> lemma_omega(const SuiteParams& p) {
  std::vector<Task> t;
  const int kl = std::min(p.kmax, 3), qc = std::min(p.qmax, 4);
  for (Case cs : {Case::Di, Case::Ad})
    for (int k = 0; k <= kl; ++k)
      for (int l = 0; l <= kl; ++l)
        t.push_back([=] {
          Check c = make_check(std::string("lemma.omega.") + case_name(cs) + "." + std::to_string(k) + "." + std::to_string(l),
                               "Omega bilinear relation between P1 and X", {{"case", case_name(cs)}, {"k", k}, {"l", l}, {"D_q", qc}});
          c.ok = true;
          for (int a = 1; a <= 2 && c.ok; ++a)
            for (int b = 1; b <= 2 && c.ok; ++b) set_residual(c, verify_omega_bilinear(cs, a, k, b, l, qc));
          return c;
        });
  return t;
}

std::vector<Task> genus0(const SuiteParams& p) {
  std::vector<Task> t;
  for (Case cs : {Case::Di, Case::Ad})
    t.push_back([=] {
      Check c = make_check(std::string("genus0.") + case_name(cs), "genus-zero correspondence (topological solutions and F0)",
                           {{"case", case_name(cs)}, {"D", p.deg}, {"D_q", p.qmax}, {"K_max", p.kmax}});
      c.ok = true;
      for (const auto& r : verify_genus0(cs, p.kmax, p.deg, p.qmax))
        if (!r.ok && c.ok) {
          c.ok = false;
          c.residual = r.id + ": " + r.detail;
        }
      return c;
    });
  return t;
}

std::vector<Task> topsol() {
  const AppendixA& a = appendix_a();
  int kmax = 1, deg = 1;
  for (const auto& o : a.topsol) {
    int d = 0;
    for (const auto& [v, e] : o.times) kmax = std::max(kmax, v.second), d += e;
    deg = std::max(deg, d);
  }
  auto sols = std::make_shared<std::map<ModelId, TopologicalSolution>>();
  for (ModelId id : kModels)
    (*sols)[id] = topological_solution(TimeConfig{SolutionKind::Plain, id, Case::Di, Gq(0), kmax, deg, a.q_cut});
  std::vector<Task> t;
  for (const auto& o : a.topsol)
    t.push_back([&o, sols, kmax, deg, qc = a.q_cut] {
      std::string mono;
      for (const auto& [v, e] : o.times)
        mono += "s" + std::to_string(v.first) + std::to_string(v.second) + (e > 1 ? "^" + std::to_string(e) : "");
      Check c = make_check("topsol." + std::string(model_key(o.model)) + ".w" + std::to_string(o.component) + "." + mono,
                           "topological solution coefficient",
                           {{"model", model_key(o.model)}, {"component", o.component}, {"monomial", mono},
                            {"K_max", kmax}, {"D", deg}, {"D_q", qc}});
      c.provenance = o.provenance;
      const auto got = sols->at(o.model).w[o.component - 1].coefficient(o.times);
      c.residual = series_mismatch(got, o.series);
      c.ok = c.residual == "0";
      // corrected entries must keep matching their stored correction
      if (!c.ok && o.provenance == "paper-typo-corrected") c.residual = "CORRECTED ENTRY DRIFT: " + c.residual;
      return c;
    });
  return t;
}

}  // namespace

std::vector<Task> genus0_side_tasks(const std::string& name, const SuiteParams& p) {
  if (name == "theta_table") return theta_table();
  if (name == "theta_dual") return theta_dual(p);
  if (name == "theta_axioms") return theta_axioms(p);
  if (name == "omega_table") return omega_table();
  if (name == "omega_symmetry") return omega_symmetry(p);
  if (name == "lemma_theta") return lemma_theta(p);
  if (name == "lemma_omega") return lemma_omega(p);
  if (name == "genus0") return genus0(p);
  if (name == "topsol") return topsol();
  throw std::invalid_argument("unknown section " + name);
}

}  // namespace fv
