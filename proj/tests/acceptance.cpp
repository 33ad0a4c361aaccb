// Acceptance run: one PASS/FAIL line per criterion, exact (zero) tolerance throughout.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "fv/hierarchy.hpp"
#include "fv/report.hpp"

using namespace fv;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
  std::vector<std::string> failures;
};

using Clock = std::chrono::steady_clock;

Outcome from_sections(const std::vector<Section>& secs, const std::string& what) {
  Outcome o;
  int pass = 0, total = 0;
  for (const auto& s : secs)
    for (const auto& c : s.checks) {
      ++total;
      pass += c.ok;
      if (!c.ok) o.failures.push_back(c.id + (c.provenance.empty() ? "" : " [" + c.provenance + "]") + ": " + c.residual);
    }
  o.ok = pass == total && total > 0;
  o.detail = std::to_string(pass) + "/" + std::to_string(total) + " " + what;
  return o;
}

std::unique_ptr<Genus2Context> g2;

Outcome sections(std::initializer_list<const char*> names, const SuiteParams& p, const std::string& what) {
  std::vector<Section> secs;
  for (const char* n : names) secs.push_back(run_section(n, p, g2));
  return from_sections(secs, what);
}

SuiteParams params(int deg, int qmax, int kmax, int zmax) {
  SuiteParams p;
  p.deg = deg, p.qmax = qmax, p.kmax = kmax, p.zmax = zmax;
  p.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return p;
}

// ---------------------------------------------------------------------------
// randomized property suites

constexpr int kCases = 100;
const ModelId kModels[] = {ModelId::P1, ModelId::XDi, ModelId::XAd};

CoordRingElem random_elem(std::mt19937& rng, int qc, int min_d = 0) {
  std::uniform_int_distribution<int> small(0, 2), m(-1, 1), c(-4, 4);
  CoordRingElem x(Gq(0), qc);
  for (int i = 0; i < 3; ++i)
    x += CoordRingElem::monomial({small(rng), small(rng), m(rng), min_d + small(rng)}, Gq(Rational(c(rng), 1 + small(rng))), qc);
  return x;
}

std::pair<int, int> property_wdvv(std::mt19937& rng) {
  int ok = 0;
  constexpr int qc = 5;
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int t = 0; t < kCases; ++t) {
    const ModelId id = kModels[t % 3];
    const auto sc = structure_constants(id, qc);
    auto prod = [&](const Vec2c& x, const Vec2c& y) {
      Vec2c r(CoordRingElem(Gq(0), qc), CoordRingElem(Gq(0), qc));
      for (int g = 0; g < 2; ++g)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) r(g) += sc.upper[g][a][b] * x(a) * y(b);
      return r;
    };
    auto v = [&] { return Vec2c(CoordRingElem(Gq(coef(rng)), qc), CoordRingElem(Gq(coef(rng)), qc)); };
    const Vec2c x = v(), y = v(), z = v();
    const Vec2c l = prod(prod(x, y), z), r = prod(x, prod(y, z));
    ok += l(0) == r(0) && l(1) == r(1);
  }
  return {ok, kCases};
}

std::pair<int, int> property_omega_symmetry(std::mt19937& rng) {
  int ok = 0;
  std::uniform_int_distribution<int> idx(1, 2), ord(0, 4);
  for (int t = 0; t < kCases; ++t) {
    const ModelId id = kModels[rng() % 3];
    const int a = idx(rng), b = idx(rng), k = ord(rng), l = ord(rng);
    ok += omega(id, a, k, b, l, 4) == omega(id, b, l, a, k, 4);
  }
  return {ok, kCases};
}

std::pair<int, int> property_flows_commute(std::mt19937& rng) {
  int ok = 0;
  std::uniform_int_distribution<int> idx(1, 2), ord(0, 3);
  for (int t = 0; t < kCases; ++t) {
    const ModelId id = kModels[rng() % 3];
    const Mat2c a = flow_matrix(id, idx(rng), ord(rng), 4), b = flow_matrix(id, idx(rng), ord(rng), 4);
    const Mat2c c = a * b - b * a;
    ok += c(0, 0).is_zero() && c(0, 1).is_zero() && c(1, 0).is_zero() && c(1, 1).is_zero();
  }
  return {ok, kCases};
}

std::pair<int, int> property_substitution(std::mt19937& rng) {
  int ok = 0;
  constexpr int qc = 3;
  auto sp = std::make_shared<const TimeSpace>(1, 3, qc);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < kCases; ++t) {
    const TimeSeries u1 = TimeSeries::variable(sp, 1, 0) * Gq(c(rng)) + TimeSeries::variable(sp, 2, 1) * Gq(c(rng));
    const TimeSeries u2 = TimeSeries::variable(sp, 2, 0) * Gq(c(rng)) + TimeSeries::variable(sp, 1, 1) * Gq(c(rng));
    PointEvaluator pe(u1, u2);
    const CoordRingElem f = random_elem(rng, qc), g = random_elem(rng, qc);
    ok += pe.eval(f * g) == pe.eval(f) * pe.eval(g) && pe.eval(f + g) == pe.eval(f) + pe.eval(g);
  }
  return {ok, kCases};
}

std::pair<int, int> property_exp_log(std::mt19937& rng) {
  int ok = 0;
  constexpr int qc = 4;
  for (int t = 0; t < kCases; ++t) {
    const CoordRingElem x = random_elem(rng, qc, 1);  // positive Q-degree: nilpotent modulo the cut
    const CoordRingElem one(Gq(1), qc);
    ok += log(exp(x)) == x && exp(log(one + x)) == one + x;
  }
  return {ok, kCases};
}

std::pair<int, int> property_f0_second_derivatives(std::mt19937& rng) {
  constexpr int K = 2, D = 4, qc = 3;
  std::map<ModelId, TopologicalSolution> sols;
  std::map<ModelId, TimeSeries> f0;
  for (ModelId id : kModels) {
    sols.emplace(id, topological_solution(TimeConfig{SolutionKind::Plain, id, Case::Di, Gq(0), K, D, qc}));
    f0.emplace(id, genus0_free_energy(sols.at(id)));
  }
  int ok = 0;
  std::uniform_int_distribution<int> idx(1, 2), ord(0, K);
  for (int t = 0; t < kCases; ++t) {
    const ModelId id = kModels[rng() % 3];
    const int a = idx(rng), k = ord(rng), b = idx(rng), l = ord(rng);
    PointEvaluator pe(sols.at(id).w[0], sols.at(id).w[1]);
    ok += f0.at(id).derivative(a, k).derivative(b, l).truncated_deg(D - 2) == pe.eval(omega(id, a, k, b, l, qc)).truncated_deg(D - 2);
  }
  return {ok, kCases};
}

Outcome properties() {
  std::mt19937 rng(20241015);
  const std::vector<std::pair<std::string, std::function<std::pair<int, int>(std::mt19937&)>>> suites = {
      {"WDVV", property_wdvv},
      {"Omega symmetry", property_omega_symmetry},
      {"flow commutativity", property_flows_commute},
      {"substitution homomorphism", property_substitution},
      {"exp/log inverses", property_exp_log},
      {"d^2 F0 = Omega", property_f0_second_derivatives},
  };
  Outcome o;
  o.ok = true;
  for (const auto& [name, fn] : suites) {
    const auto [pass, total] = fn(rng);
    o.detail += (o.detail.empty() ? "" : ", ") + name + " " + std::to_string(pass) + "/" + std::to_string(total);
    if (pass != total || total < kCases) {
      o.ok = false;
      o.failures.push_back(name);
    }
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  const std::string dir = std::filesystem::temp_directory_path().string();
  std::string out[2];
  for (int i = 0; i < 2; ++i) {
    const std::string path = dir + "/fv_acceptance_report_" + std::to_string(i) + ".json";
    const std::string cmd = std::string("\"") + FV_CLI_PATH + "\" run --suite all --format json --jobs " + std::to_string(i ? 1 : 4) +
                            " --out \"" + path + "\"";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) {
      o.detail = "could not start " + std::string(FV_CLI_PATH);
      return o;
    }
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    out[i] = ss.str();
    std::filesystem::remove(path);
  }
  o.ok = !out[0].empty() && out[0] == out[1];
  o.detail = o.ok ? "two `run --suite all` reports byte-identical (" + std::to_string(out[0].size()) + " bytes, jobs 4 vs 1)"
                  : "reports differ or are empty";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int n;
    std::string title;
    double budget;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "theta tables", 1, [] { return sections({"theta_table"}, params(4, 5, 5, 8), "table entries"); }},
      {2, "theta axioms (k <= 7, D_q = 5)", 30, [] { return sections({"theta_axioms"}, params(4, 5, 5, 8), "models"); }},
      {3, "closed-form vs recursive theta (k <= 7)", 0, [] { return sections({"theta_dual"}, params(4, 5, 5, 8), "(model, alpha, k)"); }},
      {4, "Omega table", 0, [] { return sections({"omega_table"}, params(4, 5, 5, 8), "two-point entries"); }},
      {5, "theta relations (k <= 5, D_q = 5)", 0, [] { return sections({"lemma_theta"}, params(4, 5, 5, 8), "(case, alpha, k)"); }},
      {6, "Omega bilinear identities (k, l <= 3, D_q = 4)", 0,
       [] { return sections({"lemma_omega"}, params(4, 4, 3, 8), "(case, k, l)"); }},
      {7, "topological solution coefficients", 0, [] { return sections({"topsol"}, params(4, 5, 5, 8), "displayed coefficients"); }},
      {8, "genus-zero correspondence (D = 4, D_q = 4, K_max = 5)", 300,
       [] { return sections({"genus0"}, params(4, 4, 5, 8), "cases"); }},
      {9, "genus one", 0, [] { return sections({"genus1"}, params(4, 5, 5, 8), "checks"); }},
      {10, "genus two", 900, [] { return sections({"genus2"}, params(4, 5, 5, 8), "checks"); }},
      {11, "partial correlation functions", 0, [] { return sections({"appendixB"}, params(4, 5, 5, 8), "correlators"); }},
      {12, "BP residuals (k_i in {0,1}, both X models)", 0, [] { return sections({"bp"}, params(4, 5, 5, 8), "checks"); }},
      {13, "property suites (>= 100 random cases each)", 0, properties},
      {14, "determinism of `run --suite all`", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget > 0 && s > c.budget) {
      o.ok = false;
      o.detail += "; over the runtime budget";
    }
    failed += !o.ok;
    char head[160];
    std::snprintf(head, sizeof head, "criterion %2d %s  %s: ", c.n, o.ok ? "PASS" : "FAIL", c.title.c_str());
    std::printf("%s%s (%.2fs%s)\n", head, o.detail.c_str(), s,
                c.budget > 0 ? (", budget " + std::to_string(static_cast<int>(c.budget)) + "s").c_str() : "");
    for (const auto& f : o.failures) std::printf("      - %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
