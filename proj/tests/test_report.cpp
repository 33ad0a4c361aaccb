#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "fv/report.hpp"

using namespace fv;

TEST(Report, SuiteSections) {
  EXPECT_EQ(suite_sections("theta").size(), 3u);
  const auto all = suite_sections("all");
  for (const auto& s : suite_names()) {
    if (s == "all") continue;
    for (const auto& sec : suite_sections(s)) EXPECT_NE(std::find(all.begin(), all.end(), sec), all.end()) << sec;
  }
  EXPECT_THROW(suite_sections("genus3"), std::invalid_argument);
}

TEST(Report, ValidatesParams) {
  SuiteParams p;
  EXPECT_NO_THROW(validate(p));
  p.qmax = 40;
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = SuiteParams{};
  p.jobs = 0;
  EXPECT_THROW(run_suite("theta", p), std::invalid_argument);
}

TEST(Report, JsonIsDeterministicAndCarriesProvenance) {
  SuiteParams p;
  p.jobs = 3;
  const VerificationReport a = run_suite("appendixA", p);
  p.jobs = 1;
  const VerificationReport b = run_suite("appendixA", p);
  const Json ja = report_json(a);
  EXPECT_EQ(ja.dump(2), report_json(b).dump(2));
  EXPECT_EQ(ja["schema"], "report_v1");
  int tagged = 0;
  for (const auto& s : ja["sections"])
    for (const auto& c : s["checks"]) {
      tagged += c.contains("provenance");
      EXPECT_TRUE(c["residual"] == "0" || c["status"] == "fail");
    }
  EXPECT_GT(tagged, 90);
  // the status is pass iff every residual is zero
  EXPECT_EQ(ja["status"] == "pass", a.count(false) == 0);
}

TEST(Report, TypoCorrectedEntriesMatch) {
  std::unique_ptr<Genus2Context> ctx;
  const Section s = run_section("topsol", SuiteParams{}, ctx);
  int corrected = 0;
  for (const auto& c : s.checks)
    if (c.provenance == "paper-typo-corrected") {
      ++corrected;
      EXPECT_TRUE(c.ok) << c.id << ": " << c.residual;
    }
  EXPECT_EQ(corrected, 2);
  EXPECT_FALSE(ctx);
}

TEST(Report, ResidualSummaryShowsFirstTerm) {
  EXPECT_EQ(residual_summary(CoordRingElem(Gq(0))), "0");
  const CoordRingElem x = CoordRingElem::Q(2) * Gq(3) + CoordRingElem::w1() * Gq(Rational(1, 2));
  const std::string s = residual_summary(x);
  EXPECT_NE(s, "0");
  EXPECT_EQ(s.find('+'), std::string::npos);
}

TEST(Export, ThetaRoundTrip) {
  SuiteParams p;
  ExportRequest r;
  r.kind = "theta";
  r.model = ModelId::P1;
  r.alpha = 2;
  r.k = 1;
  const Json j = export_expression(r, p);
  EXPECT_EQ(import_coord(j), theta(ModelId::P1, 2, 1, p.qmax));
  r.alpha = 3;
  EXPECT_THROW(export_expression(r, p), std::invalid_argument);
  r.kind = "spline";
  EXPECT_THROW(export_expression(r, p), std::invalid_argument);
}

TEST(Export, F1HasOneLogOfTheDiscriminant) {
  ExportRequest r;
  r.kind = "f1";
  r.model = ModelId::XDi;
  const Json j = export_expression(r, SuiteParams{});
  ASSERT_EQ(j["logs"].size(), 1u);
  EXPECT_EQ(j["logs"][0]["coeff"][0]["c"]["re"], "1/24");
}

TEST(Export, ImportRejectsZeroDenominator) {
  const std::string path = ::testing::TempDir() + "bad_f2.json";
  {
    std::ofstream out(path);
    out << R"({"model": "P1", "name": "F2", "terms": [], "denominator": [{"poly": [], "power": 2}]})";
  }
  try {
    import_f2(path);
    FAIL() << "accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("zero denominator"), std::string::npos);
  }
  {
    std::ofstream out(path);
    out << R"({"model": "P1", "name": "F2"})";
  }
  EXPECT_THROW(import_f2(path), std::invalid_argument);
  std::remove(path.c_str());
}
