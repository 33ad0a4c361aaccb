#include <algorithm>
#include <stdexcept>
#include <string>

#include "fv/genus12.hpp"

namespace fv {

namespace {

std::string jet_label(int a, int k) { return std::to_string(a) + "," + std::to_string(k); }

Json terms_to_json(const JetPoly& p) {
  struct Row {
    Mono m;
    JetKey jets;
    Gq c;
  };
  std::vector<Row> rows;
  for (const auto& [key, c] : p.terms())
    for (const auto& [ck, v] : c.terms()) rows.push_back({CoordRingElem::unpack(ck), key, v});
  // canonical order (d, a, b, m, jets)
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (x.m.d != y.m.d) return x.m.d < y.m.d;
    if (x.m.a != y.m.a) return x.m.a < y.m.a;
    if (x.m.b != y.m.b) return x.m.b < y.m.b;
    if (x.m.m != y.m.m) return x.m.m < y.m.m;
    return x.jets < y.jets;
  });
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json t;
    t["a"] = r.m.a;
    t["b"] = r.m.b;
    t["m"] = r.m.m;
    t["d"] = r.m.d;
    t["c"] = to_json(r.c);
    Json jets = Json::object();
    for (int a = 1; a <= 2; ++a)
      for (int k = 1; k <= kMaxJet; ++k)
        if (const int e = jet_exponent(r.jets, a, k)) jets[jet_label(a, k)] = e;
    t["jets"] = std::move(jets);
    arr.push_back(std::move(t));
  }
  return arr;
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw std::invalid_argument("jet function JSON: " + where + ": " + what);
}

}  // namespace

JetPoly jet_poly_from_json(const Json& terms, int q_cut) {
  if (!terms.is_array()) schema_error("terms", "expected an array");
  std::vector<JetPoly::Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Json& t = terms[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    try {
      const Mono m{t.at("a").get<int>(), t.at("b").get<int>(), t.at("m").get<int>(), t.at("d").get<int>()};
      if (m.a < 0 || m.b < 0 || m.d < 0) schema_error(where, "negative exponent");
      JetKey key = 0;
      if (t.contains("jets"))
        for (const auto& [label, e] : t.at("jets").items()) {
          const auto comma = label.find(',');
          if (comma == std::string::npos) schema_error(where, "bad jet label '" + label + "'");
          const int a = std::stoi(label.substr(0, comma)), k = std::stoi(label.substr(comma + 1));
          const int p = e.get<int>();
          if (a < 1 || a > 2 || k < 1 || k > kMaxJet || p < 0 || p > 255) schema_error(where, "jet out of range");
          key += jet_unit(a, k) * static_cast<unsigned>(p);
        }
      out.emplace_back(key, CoordRingElem::monomial(m, gq_from_json(t.at("c")), q_cut));
    } catch (const Json::exception& e) {
      schema_error(where, e.what());
    }
  }
  return JetPoly::from_terms(std::move(out), q_cut);
}

Json jet_function_to_json(const JetFunction& f, ModelId model, const std::string& name) {
  Json j;
  j["model"] = model_key(model);
  j["name"] = name;
  j["terms"] = terms_to_json(f.num());
  j["denominator"] = Json::array();
  if (f.pow()) j["denominator"].push_back(Json{{"poly", terms_to_json(*f.disc())}, {"power", f.pow()}});
  j["logs"] = Json::array();
  if (!f.log_coeff().is_zero())
    j["logs"].push_back(Json{{"coeff", to_json(CoordRingElem(f.log_coeff()))}, {"arg", terms_to_json(*f.disc())}});
  return j;
}

JetFunction jet_function_from_json(const Json& j, int q_cut) {
  ModelId id;
  try {
    id = model_from_name(j.at("model").get<std::string>());
  } catch (const std::exception& e) {
    schema_error("model", e.what());
  }
  const auto m = jet_model(id, q_cut);
  JetPoly num = jet_poly_from_json(j.at("terms"), q_cut);
  int pow = 0;
  if (j.contains("denominator")) {
    const Json& den = j.at("denominator");
    if (den.size() > 1) schema_error("denominator", "at most one factor is supported");
    if (den.size() == 1) {
      const JetPoly d = jet_poly_from_json(den[0].at("poly"), q_cut);
      if (d.is_zero()) schema_error("denominator[0]", "zero denominator");
      if (!(d == *m->disc)) schema_error("denominator[0]", "denominator is not the model discriminant");
      pow = den[0].at("power").get<int>();
      if (pow < 0) schema_error("denominator[0]", "negative power");
    }
  }
  Gq lc(0);
  if (j.contains("logs"))
    for (std::size_t i = 0; i < j.at("logs").size(); ++i) {
      const Json& l = j.at("logs")[i];
      const std::string where = "logs[" + std::to_string(i) + "]";
      const CoordRingElem c = coord_from_json(l.at("coeff"), q_cut);
      if (!c.is_constant()) schema_error(where, "log coefficient must be constant");
      if (!(jet_poly_from_json(l.at("arg"), q_cut) == *m->disc)) schema_error(where, "log argument is not the discriminant");
      lc += c.constant_term();
    }
  return JetFunction(m->disc, std::move(num), pow, lc);
}

JetFunction reference_jet_function(const std::string& model, const std::string& name, int q_cut) {
  for (const auto& f : g2_reference().at("functions"))
    if (f.at("model") == model && f.at("name") == name) return jet_function_from_json(f, q_cut);
  throw std::out_of_range("reference_jet_function: no entry " + model + "/" + name);
}

}  // namespace fv
