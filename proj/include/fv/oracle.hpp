#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fv/coord_ring.hpp"
#include "fv/frobenius.hpp"

namespace fv {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const Gq& z);
/// Coord-ring term list in canonical (d, a, b, m) order.
Json to_json(const CoordRingElem& x);
Rational rational_from_json(const Json& j);
Gq gq_from_json(const Json& j);
CoordRingElem coord_from_json(const Json& terms, int q_cut);

ModelId model_from_name(const std::string& name);
/// Inverse of model_from_name (the key used in data files).
const char* model_key(ModelId id);

/// Directory holding the bundled oracle tables ($FV_DATA_DIR overrides the build default).
std::string data_dir();
Json load_json_file(const std::string& path);

struct ThetaOracle {
  ModelId model;
  int alpha, k;
  std::string provenance;
  CoordRingElem value;
};

struct OmegaOracle {
  ModelId model;
  int a, k, b, l;
  std::string provenance;
  CoordRingElem value;
};

/// One displayed time monomial of a topological solution component.
struct TopsolOracle {
  ModelId model;
  int component;
  std::map<std::pair<int, int>, int> times;  // (alpha, k) -> power
  std::string provenance;
  std::vector<Gq> series;  // q^0 .. q^{q_cut}
  std::string printed;     // original (broken) text for corrected entries
};

struct CorrelatorOracle {
  ModelId model;
  int genus;
  std::vector<std::pair<int, int>> insertions;  // (k, alpha)
  std::string note;
  std::string provenance;
  CoordRingElem value;
};

struct AppendixA {
  int q_cut = 0;
  std::vector<ThetaOracle> theta;
  std::vector<OmegaOracle> omega;
  std::vector<TopsolOracle> topsol;
};

struct AppendixB {
  int q_cut = 0;
  std::vector<CorrelatorOracle> correlators;
};

const AppendixA& appendix_a();
const AppendixB& appendix_b();
const Json& g2_reference();

}  // namespace fv
