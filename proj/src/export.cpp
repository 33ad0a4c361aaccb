#include <stdexcept>

#include "fv/hierarchy.hpp"
#include "fv/report.hpp"

namespace fv {

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("export: " + what);
}

Json coord_doc(const std::string& kind, ModelId id, int q_cut, const CoordRingElem& x) {
  Json j;
  j["kind"] = kind;
  j["model"] = model_key(id);
  j["q_cut"] = q_cut;
  j["terms"] = to_json(x);
  return j;
}

}  // namespace

Json export_expression(const ExportRequest& r, const SuiteParams& p) {
  const int qc = p.qmax;
  if (r.kind == "theta") {
    need(r.alpha == 1 || r.alpha == 2, "alpha must be 1 or 2");
    need(r.k >= 0 && r.k <= 10, "k must be in [0, 10]");
    Json j = coord_doc("theta", r.model, qc, theta(r.model, r.alpha, r.k, qc));
    j["alpha"] = r.alpha;
    j["k"] = r.k;
    return j;
  }
  if (r.kind == "omega") {
    need(r.alpha >= 1 && r.alpha <= 2 && r.beta >= 1 && r.beta <= 2, "indices must be 1 or 2");
    need(r.k >= 0 && r.l >= 0 && r.k <= 8 && r.l <= 8, "orders must be in [0, 8]");
    Json j = coord_doc("omega", r.model, qc, omega(r.model, r.alpha, r.k, r.beta, r.l, qc));
    j["a"] = r.alpha, j["k"] = r.k, j["b"] = r.beta, j["l"] = r.l;
    return j;
  }
  if (r.kind == "topsol") {
    const auto sol = topological_solution(TimeConfig{SolutionKind::Plain, r.model, Case::Di, Gq(0), p.kmax, p.deg, qc});
    Json j;
    j["kind"] = "topsol";
    j["model"] = model_key(r.model);
    j["q_cut"] = qc;
    j["K_max"] = p.kmax;
    j["D"] = p.deg;
    for (int c = 0; c < 2; ++c) {
      Json rows = Json::array();
      for (const auto& [mono, series] : nonzero_terms(sol.w[c])) {
        Json times = Json::object(), s = Json::array();
        for (const auto& [v, e] : mono) times[std::to_string(v.first) + "," + std::to_string(v.second)] = e;
        for (const auto& x : series) s.push_back(to_json(x));
        rows.push_back({{"times", times}, {"series", s}});
      }
      j["w" + std::to_string(c + 1)] = std::move(rows);
    }
    return j;
  }
  if (r.kind == "f1") {
    const int q = r.model == ModelId::P1 ? CoordRingElem::kExact : qc;
    return jet_function_to_json(f1(r.model, q), r.model, "F1");
  }
  if (r.kind == "g1") {
    need(r.model != ModelId::P1, "g1 is defined for the X models");
    return jet_function_to_json(g_function1(r.model, qc), r.model, "G1");
  }
  if (r.kind == "f2" || r.kind == "correlator") {
    Genus2Context ctx(p);
    if (r.kind == "f2") {
      if (r.model == ModelId::P1) return jet_function_to_json(ctx.f2_p1(), ModelId::P1, "F2");
      const Case c = r.model == ModelId::XDi ? Case::Di : Case::Ad;
      return jet_function_to_json(ctx.f2_x(c), r.model, "F2");
    }
    need(r.genus >= 0 && r.genus <= 2, "genus must be 0, 1 or 2");
    for (const auto& x : r.insertions) need(x.alpha >= 1 && x.alpha <= 2 && x.p >= 0 && x.p <= 1, "insertions are tau_{0,1}(phi_{1,2})");
    const CoordRingElem v = correlation(ctx.correlators(r.model), r.genus, r.insertions);
    Json j = coord_doc("correlator", r.model, v.q_cut() >= CoordRingElem::kExact ? -1 : v.q_cut(), v);
    j["genus"] = r.genus;
    Json ins = Json::array();
    for (const auto& x : r.insertions) ins.push_back({{"k", x.p}, {"alpha", x.alpha}});
    j["insertions"] = ins;
    return j;
  }
  throw std::invalid_argument("export: unknown kind '" + r.kind + "'");
}

CoordRingElem import_coord(const Json& j) {
  try {
    const int qc = j.at("q_cut").get<int>();
    return coord_from_json(j.at("terms"), qc < 0 ? CoordRingElem::kExact : qc);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("coordinate-ring JSON: ") + e.what());
  }
}

JetFunction import_f2(const std::string& path) {
  Json j;
  try {
    j = load_json_file(path);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  if (!j.is_object() || j.value("model", "") != "P1") throw std::invalid_argument(path + ": expected a jet function of model P1");
  try {
    return jet_function_from_json(j, CoordRingElem::kExact);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace fv
