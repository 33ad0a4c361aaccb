#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fv/genus12.hpp"
#include "fv/oracle.hpp"

namespace fv {

struct SuiteParams {
  int deg = 4;    // D: total time degree of topological solutions
  int qmax = 5;   // D_q: Q truncation order
  int kmax = 5;   // K_max: highest descendant order
  int zmax = 8;   // Z_max: theta orders checked are k <= Z_max - 1
  int jobs = 1;
  std::string f2_in;  // optional jet-function JSON for F2 of P1 (otherwise reconstructed)
};

/// Throws std::invalid_argument for parameters outside the supported ranges.
void validate(const SuiteParams& p);

struct Check {
  std::string id;
  std::string anchor;
  Json params = Json::object();
  bool ok = false;
  std::string residual = "0";  // "0" or the first nonzero term / a failure detail
  std::string provenance;      // oracle provenance tag, empty for derived checks
  double seconds = 0;          // text rendering only
};

struct Section {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0;
  bool ok() const;
};

struct VerificationReport {
  std::string suite;
  SuiteParams params;
  std::string f2_source;
  std::vector<Section> sections;
  std::optional<JetFunction> f2_p1;  // not serialized
  bool ok() const;
  int count(bool passed) const;
};

const std::vector<std::string>& suite_names();
/// Section names run by a suite ("all" is the duplicate-free union).
std::vector<std::string> suite_sections(const std::string& suite);

/// Shared genus-two state: F2 of P1 and correlators of all three models.
class Genus2Context {
 public:
  explicit Genus2Context(const SuiteParams& p);
  const JetFunction& f2_p1() const { return f2_; }
  const std::string& source() const { return source_; }
  const std::optional<F2Reconstruction>& reconstruction() const { return rec_; }
  OperatorReading reading() const { return reading_; }
  const std::vector<std::string>& calibration_log() const { return cal_log_; }
  /// F2 of an X model with the correspondence sign (+ di, - ad).
  const JetFunction& f2_x(Case c) const { return c == Case::Di ? f2_di_ : f2_ad_; }
  Correlators& correlators(ModelId id);
  /// X_ad correlators with F2 = +push(F2 of P1), for the sign diagnostic.
  Correlators& ad_opposite_sign();
  int q_cut() const { return q_cut_; }

 private:
  int q_cut_;
  OperatorReading reading_ = OperatorReading::Derived;
  std::vector<std::string> cal_log_;
  std::optional<F2Reconstruction> rec_;
  JetFunction f2_, f2_di_, f2_ad_;
  std::string source_;
  std::map<ModelId, std::unique_ptr<Correlators>> corr_;
  std::once_flag ad_plus_once_;
  std::unique_ptr<Correlators> ad_plus_;
};

/// Runs one named section. `ctx` is created lazily when a section needs genus-two data.
Section run_section(const std::string& name, const SuiteParams& p, std::unique_ptr<Genus2Context>& ctx);
VerificationReport run_suite(const std::string& suite, const SuiteParams& p);

/// Schema "report_v1"; contains no timing so identical inputs give identical bytes.
Json report_json(const VerificationReport& r);
std::string report_text(const VerificationReport& r);

struct ExportRequest {
  std::string kind;  // theta, omega, topsol, f1, f2, g1, correlator
  ModelId model = ModelId::P1;
  int alpha = 1, k = 0, beta = 1, l = 0;
  int genus = 0;
  std::vector<Insertion> insertions;
};
/// Serializes one expression; kind-specific fields are validated.
Json export_expression(const ExportRequest& req, const SuiteParams& p);
/// Reads an exported coordinate-ring expression (theta, omega, correlator).
CoordRingElem import_coord(const Json& j);
/// Reads an F2 jet-function file of P1; schema errors name the offending position.
JetFunction import_f2(const std::string& path);

/// First nonzero term of a residual, or "0".
std::string residual_summary(const CoordRingElem& x);
std::string residual_summary(const JetFunction& x);

}  // namespace fv
