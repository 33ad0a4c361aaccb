#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fv/report.hpp"

using namespace fv;

namespace {

void add_params(CLI::App* app, SuiteParams& p) {
  app->add_option("--deg", p.deg, "total time degree D of topological solutions")->capture_default_str();
  app->add_option("--qmax", p.qmax, "Q truncation order D_q")->capture_default_str();
  app->add_option("--kmax", p.kmax, "highest descendant order K_max")->capture_default_str();
  app->add_option("--zmax", p.zmax, "theta orders k < Z_max")->capture_default_str();
  app->add_option("--jobs", p.jobs, "worker threads")->capture_default_str();
  app->add_option("--f2-in", p.f2_in, "F2 jet-function JSON for P1 (skips the reconstruction)");
}

void write(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Insertion parse_insertion(const std::string& s) {
  // "k:alpha", e.g. 1:2 for tau_1(phi_2)
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("insertion '" + s + "' is not k:alpha");
  return {std::stoi(s.substr(colon + 1)), std::stoi(s.substr(0, colon))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the P1 / resolved-conifold Frobenius manifold correspondence"};
  app.require_subcommand(1);

  SuiteParams params;
  std::string suite = "all", format = "text", f2_out, report_out;
  auto* run = app.add_subcommand("run", "run a verification suite");
  run->add_option("--suite", suite, "suite")->check(CLI::IsMember(suite_names()))->capture_default_str();
  run->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  run->add_option("--f2-out", f2_out, "write F2 of P1 as jet-function JSON");
  run->add_option("--out", report_out, "write the report to a file instead of stdout");
  add_params(run, params);

  ExportRequest req;
  std::string model = "P1", export_out;
  std::vector<std::string> ins;
  auto* exp = app.add_subcommand("export", "export one expression as JSON");
  exp->add_option("--kind", req.kind, "theta, omega, topsol, f1, f2, g1, correlator")
      ->required()
      ->check(CLI::IsMember({"theta", "omega", "topsol", "f1", "f2", "g1", "correlator"}));
  exp->add_option("--model", model, "P1, XDi or XAd")->check(CLI::IsMember({"P1", "XDi", "XAd"}))->capture_default_str();
  exp->add_option("--alpha", req.alpha, "first index");
  exp->add_option("--k", req.k, "first order");
  exp->add_option("--beta", req.beta, "second index (omega)");
  exp->add_option("--l", req.l, "second order (omega)");
  exp->add_option("--genus", req.genus, "correlator genus");
  exp->add_option("--ins", ins, "correlator insertions k:alpha");
  exp->add_option("--out", export_out, "output path (stdout if omitted)");
  add_params(exp, params);

  std::string import_path;
  auto* imp = app.add_subcommand("import-f2", "validate an F2 jet-function file of P1");
  imp->add_option("path", import_path, "JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const VerificationReport r = run_suite(suite, params);
      write(report_out, format == "json" ? report_json(r).dump(2) + "\n" : report_text(r));
      if (!f2_out.empty()) {
        const JetFunction f2 = r.f2_p1 ? *r.f2_p1 : Genus2Context(params).f2_p1();
        write(f2_out, jet_function_to_json(f2, ModelId::P1, "F2").dump(1) + "\n");
      }
      return r.ok() ? 0 : 1;
    }
    if (*exp) {
      validate(params);
      req.model = model_from_name(model);
      for (const auto& s : ins) req.insertions.push_back(parse_insertion(s));
      write(export_out, export_expression(req, params).dump(1) + "\n");
      return 0;
    }
    const JetFunction f = import_f2(import_path);
    std::cout << "F2 of P1: " << f.num().size() << " numerator terms over D^" << f.pow() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
