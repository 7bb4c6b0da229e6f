#include "conicscope/certify.hpp"
#include "conicscope/corpus.hpp"
#include "conicscope/facial.hpp"
#include "conicscope/homogenize.hpp"
#include "conicscope/io.hpp"
#include "conicscope/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace conicscope;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInputError = 1, kUnresolved = 2, kInvalid = 3 };

struct RunConfig {
  double tol = kDefaultTol;
  int max_iters = 200;
  double rho = 1e6;
  long long max_den = 1000000;
  double radius = 1e-4;
  int samples = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  bool exact = false;
  std::string format = "json";

  OracleOptions oracle() const { return {tol, max_iters}; }
  ClassifyOptions classify() const { return {oracle(), rho, true}; }
};

// CONIC_SCOPE_LOG: 0 silent (default), 1 timings, 2 timings and notes.
int log_level() {
  const char* v = std::getenv("CONIC_SCOPE_LOG");
  if (!v || !*v) return 0;
  const std::string s(v);
  if (s == "debug") return 2;
  if (s == "info") return 1;
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    return 1;
  }
}

void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "[conic-scope] " << msg << "\n";
}

class Timer {
 public:
  explicit Timer(std::string what) : what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    log(1, what_ + " took " + std::to_string(s) + " s");
  }

 private:
  std::string what_;
  std::chrono::steady_clock::time_point t0_;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int cmd_classify(const std::string& input, const RunConfig& cfg) {
  const LoadedProblem lp = load_input(input);
  Timer t("classify " + input);
  try {
    const FeasibilityReport r = classify(lp.pencil, cfg.classify());
    if (log_level() >= 2)
      for (const auto& n : r.diagnostics.notes) log(2, n);
    if (cfg.format == "text") {
      std::cout << report_to_text(r);
    } else {
      json j = report_to_json(r);
      j["source"] = lp.source;
      emit(j);
    }
    return kOk;
  } catch (const UnresolvedError& e) {
    if (cfg.format == "text") {
      std::cout << "type: Unresolved\nreason: " << e.what() << "\n";
    } else {
      emit({{"version", kReportVersion},
            {"type", "Unresolved"},
            {"source", lp.source},
            {"reason", e.what()},
            {"diagnostics", diagnostics_to_json(e.diagnostics())}});
    }
    return kUnresolved;
  }
}

// Classifies, then rounds the affine certificate to a rational one checked in
// exact arithmetic against the rational input.
int cmd_certify(const std::string& input, const RunConfig& cfg) {
  const LoadedProblem lp = load_input(input);
  Timer t("certify " + input);
  FeasibilityReport r;
  try {
    r = classify(lp.pencil, cfg.classify());
  } catch (const UnresolvedError& e) {
    emit({{"version", kReportVersion}, {"type", "Unresolved"}, {"reason", e.what()}});
    return kUnresolved;
  }
  json j = report_to_json(r);
  j["source"] = lp.source;
  if (r.affine_cert && lp.exact) {
    const RationalizeResult rr = rationalize_certificate(*lp.exact, r.affine_cert->c, cfg.max_den);
    json rj{{"ok", rr.ok},
            {"max_den", cfg.max_den},
            {"denominator_bound", rr.denominator_bound},
            {"best_residual", rr.best_residual},
            {"message", rr.message}};
    if (rr.certificate) rj["certificate"] = affine_to_json(*rr.certificate);
    j["rational_certificate"] = rj;
  } else {
    j["rational_certificate"] = nullptr;
  }
  emit(j);
  return kOk;
}

int cmd_verify(const std::string& input, const std::string& cert_file, const RunConfig& cfg) {
  const LoadedProblem lp = load_input(input);
  const Index d = lp.pencil.dim();
  json cert = parse_json_file(cert_file);
  // A full report is accepted; the chain takes precedence over the affine certificate.
  if (cert.contains("version") && cert.contains("type")) {
    if (cert.contains("chain") && !cert["chain"].is_null()) {
      cert = cert["chain"];
    } else if (cert.contains("rational_certificate") && !cert["rational_certificate"].is_null() &&
               cert["rational_certificate"].contains("certificate")) {
      cert = cert["rational_certificate"]["certificate"];
    } else if (cert.contains("affine_certificate") && !cert["affine_certificate"].is_null()) {
      cert = cert["affine_certificate"];
    } else {
      throw ParseError("report carries no certificate");
    }
  }
  const std::string kind = cert.is_array() ? "chain" : cert.value("kind", cert.contains("links") ? "chain" : "affine");
  Timer t("verify " + kind);
  VerificationResult v;
  if (kind == "chain") {
    if (cfg.exact) throw ParseError("--exact applies to affine certificates only");
    v = verify_chain(lp.pencil, chain_from_json(cert, d), cfg.tol);
  } else if (kind == "affine") {
    if (cfg.exact) {
      if (!lp.exact) throw ParseError("--exact needs rational input data");
      v = verify_affine(*lp.exact, affine_from_json_exact(cert, d));
    } else {
      v = verify_affine(lp.pencil, affine_from_json(cert, d), cfg.tol);
    }
  } else {
    throw ParseError("unknown certificate kind '" + kind + "'");
  }
  json j = verification_to_json(v);
  j["mode"] = cfg.exact ? "exact" : "float";
  j["certificate_kind"] = kind;
  if (cfg.format == "text") {
    std::cout << (v.valid ? "valid" : "invalid: " + to_string(v.failed_check) + " at " + std::to_string(v.index) +
                                          " (" + v.message + ")")
              << "\n";
  } else {
    emit(j);
  }
  return v.valid ? kOk : kInvalid;
}

template <typename Scalar>
json lifted_to_json(const LiftedLMI<Scalar>& l) {
  json j;
  j["block_sizes"] = l.block_sizes;
  j["variables"] = json::array();
  j["variables"].push_back("x0");
  for (Index i = 1; i + 1 < l.num_vars(); ++i) j["variables"].push_back("x" + std::to_string(i));
  j["variables"].push_back("r");
  j["coefficients"] = json::array();
  for (const auto& c : l.coefficients) j["coefficients"].push_back(matrix_to_json(c));
  return j;
}

int cmd_lift(const std::string& input, const RunConfig& cfg) {
  const LoadedProblem lp = load_input(input);
  json j = lp.exact ? lifted_to_json(lift_full(*lp.exact)) : lifted_to_json(lift_full(lp.pencil));
  j["arith"] = lp.exact ? "rational" : "f64";
  j["source"] = lp.source;
  const LiftVerdict v = infeasible_by_lift(lp.pencil, cfg.oracle());
  j["verdict"] = {{"infeasible", v.infeasible},
                  {"unresolved", v.unresolved},
                  {"steps", v.steps},
                  {"relint_point", std::vector<double>(v.coordinates.data(), v.coordinates.data() + v.coordinates.size())},
                  {"note", v.note}};
  emit(j);
  return v.unresolved ? kUnresolved : kOk;
}

int cmd_probe(const std::string& input, const RunConfig& cfg) {
  const LoadedProblem lp = load_input(input);
  Timer t("probe " + input);
  ProbeOptions po;
  po.radius = cfg.radius;
  po.samples = cfg.samples;
  po.seed = cfg.seed;
  po.threads = cfg.threads;
  po.oracle = cfg.oracle();
  const ProbeCounts c = perturbation_probe(lp.pencil, po);
  emit({{"version", kReportVersion},
        {"source", lp.source},
        {"radius", cfg.radius},
        {"samples", cfg.samples},
        {"seed", cfg.seed},
        {"feasible", c.feasible},
        {"infeasible", c.infeasible},
        {"unresolved", c.unresolved}});
  return kOk;
}

json entry_summary(const CorpusEntry& e) {
  return {{"name", e.name},
          {"d", e.pencil.dim()},
          {"n", e.pencil.num_vars()},
          {"expected_type", e.expected_type ? json(to_string(*e.expected_type)) : json(nullptr)},
          {"expected_infeasible", e.expected_infeasible},
          {"expected_stable", e.expected_stable},
          {"expected_chain_length", e.expected_chain_length ? json(*e.expected_chain_length) : json(nullptr)},
          {"provenance", e.provenance}};
}

int cmd_corpus_list(const RunConfig& cfg) {
  const auto entries = corpus_list();
  if (cfg.format == "text") {
    for (const auto& e : entries) std::cout << e.name << "\n";
    return kOk;
  }
  json j = json::array();
  for (const auto& e : entries) j.push_back(entry_summary(e));
  emit(j);
  return kOk;
}

int cmd_corpus_export(const std::string& name, Index d) {
  const CorpusEntry e = corpus_get(name, d);
  json j = pencil_to_json(e.pencil);
  j["name"] = e.name;
  j["provenance"] = e.provenance;
  emit(j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasibility types of semidefinite systems: classification, certificates, verification"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--tol", cfg.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    s->add_option("--max-iters", cfg.max_iters, "interior-point iteration cap")->check(CLI::PositiveNumber);
    s->add_option("--rho", cfg.rho, "trace cap for the strong separation SDP")->check(CLI::PositiveNumber);
    s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  std::string input, cert_file, corpus_name;
  Index corpus_d = 0;

  auto* classify_cmd = app.add_subcommand("classify", "feasibility type with witness or certificates");
  classify_cmd->add_option("input", input, "file path or corpus:NAME")->required();
  add_common(classify_cmd);

  auto* certify_cmd = app.add_subcommand("certify", "classify and round the affine certificate to rationals");
  certify_cmd->add_option("input", input, "file path or corpus:NAME")->required();
  add_common(certify_cmd);
  certify_cmd->add_option("--max-den", cfg.max_den, "largest denominator tried")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate chain or affine certificate");
  verify_cmd->add_option("input", input, "file path or corpus:NAME")->required();
  verify_cmd->add_option("certificate", cert_file, "certificate or report JSON")->required();
  add_common(verify_cmd);
  verify_cmd->add_flag("--exact", cfg.exact, "exact rational verification");

  auto* lift_cmd = app.add_subcommand("lift", "lifted LMI with 2x2 blocks and its verdict");
  lift_cmd->add_option("input", input, "file path or corpus:NAME")->required();
  add_common(lift_cmd);

  auto* probe_cmd = app.add_subcommand("probe", "classify random perturbations of the data");
  probe_cmd->add_option("input", input, "file path or corpus:NAME")->required();
  add_common(probe_cmd);
  probe_cmd->add_option("--radius", cfg.radius, "entrywise perturbation radius")->check(CLI::NonNegativeNumber);
  probe_cmd->add_option("--samples", cfg.samples, "number of perturbations")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--seed", cfg.seed, "random seed");
  probe_cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* corpus_cmd = app.add_subcommand("corpus", "built-in examples");
  corpus_cmd->require_subcommand(1);
  auto* list_cmd = corpus_cmd->add_subcommand("list", "list entries");
  list_cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  auto* export_cmd = corpus_cmd->add_subcommand("export", "entry as a JSON pencil");
  export_cmd->add_option("name", corpus_name, "entry name")->required();
  export_cmd->add_option("--d", corpus_d, "matrix size for longest_chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*classify_cmd) return cmd_classify(input, cfg);
    if (*certify_cmd) return cmd_certify(input, cfg);
    if (*verify_cmd) return cmd_verify(input, cert_file, cfg);
    if (*lift_cmd) return cmd_lift(input, cfg);
    if (*probe_cmd) return cmd_probe(input, cfg);
    if (*list_cmd) return cmd_corpus_list(cfg);
    if (*export_cmd) return cmd_corpus_export(corpus_name, corpus_d);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnresolvedError& e) {
    std::cerr << "unresolved: " << e.what() << "\n";
    return kUnresolved;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
