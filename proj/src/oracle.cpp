#include "fv/oracle.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace fv {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Gq& z) {
  Json j;
  j["re"] = z.re().str();
  j["im"] = z.im().str();
  return j;
}

Json to_json(const CoordRingElem& x) {
  Json arr = Json::array();
  for (const auto& [key, c] : x.terms()) {
    const Mono m = CoordRingElem::unpack(key);
    Json t;
    t["a"] = m.a;
    t["b"] = m.b;
    t["m"] = m.m;
    t["d"] = m.d;
    t["c"] = to_json(c);
    arr.push_back(std::move(t));
  }
  return arr;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return Rational::parse(j.get<std::string>());
}

Gq gq_from_json(const Json& j) {
  if (!j.is_object()) return Gq(rational_from_json(j));
  return Gq(rational_from_json(j.at("re")), j.contains("im") ? rational_from_json(j.at("im")) : Rational(0));
}

CoordRingElem coord_from_json(const Json& terms, int q_cut) {
  std::vector<CoordRingElem::Term> out;
  for (const auto& t : terms) {
    const Mono m{t.at("a").get<int>(), t.at("b").get<int>(), t.at("m").get<int>(), t.at("d").get<int>()};
    out.emplace_back(CoordRingElem::pack(m), gq_from_json(t.at("c")));
  }
  return CoordRingElem::from_terms(std::move(out), q_cut);
}

ModelId model_from_name(const std::string& name) {
  if (name == "P1") return ModelId::P1;
  if (name == "XDi") return ModelId::XDi;
  if (name == "XAd") return ModelId::XAd;
  throw std::invalid_argument("unknown model: " + name);
}

const char* model_key(ModelId id) {
  switch (id) {
    case ModelId::P1: return "P1";
    case ModelId::XDi: return "XDi";
    default: return "XAd";
  }
}

std::string data_dir() {
  if (const char* env = std::getenv("FV_DATA_DIR"); env && *env) return env;
  return FV_DATA_DIR;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

namespace {

AppendixA parse_a(const Json& doc) {
  AppendixA a;
  a.q_cut = doc.at("q_cut").get<int>();
  for (const auto& e : doc.at("theta")) {
    a.theta.push_back({model_from_name(e.at("model")), e.at("alpha").get<int>(), e.at("k").get<int>(),
                       e.at("provenance"), coord_from_json(e.at("terms"), a.q_cut)});
  }
  for (const auto& e : doc.at("omega")) {
    a.omega.push_back({model_from_name(e.at("model")), e.at("a").get<int>(), e.at("k").get<int>(),
                       e.at("b").get<int>(), e.at("l").get<int>(), e.at("provenance"),
                       coord_from_json(e.at("terms"), a.q_cut)});
  }
  for (const auto& comp : doc.at("topsol")) {
    for (const auto& e : comp.at("entries")) {
      TopsolOracle t{model_from_name(comp.at("model")), comp.at("component").get<int>(), {}, e.at("provenance"), {}, {}};
      for (const auto& [var, pw] : e.at("times").items()) {
        const auto comma = var.find(',');
        t.times[{std::stoi(var.substr(0, comma)), std::stoi(var.substr(comma + 1))}] = pw.get<int>();
      }
      for (const auto& c : e.at("series")) t.series.push_back(gq_from_json(c));
      if (e.contains("printed")) t.printed = e.at("printed");
      a.topsol.push_back(std::move(t));
    }
  }
  return a;
}

AppendixB parse_b(const Json& doc) {
  AppendixB b;
  b.q_cut = doc.at("q_cut").get<int>();
  for (const auto& e : doc.at("correlators")) {
    CorrelatorOracle c{model_from_name(e.at("model")), e.at("genus").get<int>(), {}, e.value("note", ""),
                       e.at("provenance"), coord_from_json(e.at("terms"), b.q_cut)};
    for (const auto& ins : e.at("insertions")) c.insertions.emplace_back(ins.at("k").get<int>(), ins.at("alpha").get<int>());
    b.correlators.push_back(std::move(c));
  }
  return b;
}

}  // namespace

const AppendixA& appendix_a() {
  static const AppendixA a = parse_a(load_json_file(data_dir() + "/appendix_a.json"));
  return a;
}

const AppendixB& appendix_b() {
  static const AppendixB b = parse_b(load_json_file(data_dir() + "/appendix_b.json"));
  return b;
}

const Json& g2_reference() {
  static const Json j = load_json_file(data_dir() + "/g2_reference.json");
  return j;
}

}  // namespace fv
