// Command-line front end: spinor classification for the metric and for a
// deformed bilinear form, property verification suites and the randomized
// classical/deformed correspondence table.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcliff/io.hpp"
#include "qcliff/quantum.hpp"
#include "qcliff/random.hpp"
#include "qcliff/verify.hpp"

namespace {

using namespace qcliff;

struct Options {
  std::string input;
  std::string a_matrix;
  double a_random = 0.0;
  bool has_a_random = false;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string backend = "exact";
  std::uint64_t samples = 0;
  std::string out;
  std::string format = "json";
  std::vector<std::string> suites;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

std::string csv_real(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string classify_csv(const Json& records) {
  std::ostringstream out;
  out << "index,class,sigma,J0,J1,J2,J3,S01,S02,S03,S12,S13,S23,K0,K1,K2,K3,omega\n";
  static const char* kPairNames[6] = {"01", "02", "03", "12", "13", "23"};
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Json& r = records[i];
    out << i << ',';
    if (r["class"].is_null())
      out << "unclassifiable";
    else
      out << r["class"].get<int>();
    out << ',' << csv_real(r["sigma"].get<double>());
    for (int k = 0; k < 4; ++k) out << ',' << csv_real(r["J"][k].get<double>());
    for (const char* p : kPairNames) out << ',' << csv_real(r["S"][p].get<double>());
    for (int k = 0; k < 4; ++k) out << ',' << csv_real(r["K"][k].get<double>());
    out << ',' << csv_real(r["omega"].get<double>()) << '\n';
  }
  return out.str();
}

std::string bclassify_csv(const Json& records) {
  std::ostringstream out;
  out << "index,class,b_class,admissible,degenerate,marginal,conditions\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Json& r = records[i];
    out << i << ',';
    if (r["class"].is_null())
      out << "unclassifiable";
    else
      out << r["class"].get<int>();
    out << ',';
    if (r["b_class"].is_null())
      out << "unclassifiable";
    else
      out << r["b_class"].get<int>();
    const Json& d = r["duality"];
    out << ',' << (d["admissible"].get<bool>() ? "yes" : "no");
    out << ',' << (d["degenerate"].get<bool>() ? "yes" : "no");
    out << ',' << (d["marginal"].get<bool>() ? "yes" : "no");
    out << ',';
    bool first = true;
    for (const auto& cond : d["conditions"]) {
      if (!first) out << "; ";
      out << cond.get<std::string>();
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

template <class S>
int do_classify(const Options& o) {
  Json in = load_json_file(o.input);
  bool batch = in.is_array();
  auto spinors = parse_spinor_file<S>(in);

  Json records = Json::array();
  bool any_unclassifiable = false;
  for (const auto& c : spinors) {
    auto cov = compute_covariants(c);
    auto fierz = fierz_residuals(cov);
    std::optional<int> label;
    try {
      label = classify(cov, o.tol);
    } catch (const UnclassifiableError&) {
      any_unclassifiable = true;
    }
    records.push_back(classification_record(cov, fierz, label));
  }

  if (o.format == "csv")
    emit(o, classify_csv(records));
  else
    emit(o, (batch ? records : records[0]).dump(2) + "\n");
  return any_unclassifiable ? 1 : 0;
}

template <class S>
FormOf<S> deformation_from_options(const Options& o) {
  using R = typename scalar_traits<S>::real_type;
  if (!o.a_matrix.empty()) return parse_a_matrix<R>(load_json_file(o.a_matrix));
  SplitMix64 rng(o.seed);
  return random_antisymmetric<R>(rng, o.a_random);
}

template <class S>
int do_bclassify(const Options& o) {
  Json in = load_json_file(o.input);
  bool batch = in.is_array();
  auto spinors = parse_spinor_file<S>(in);
  FormOf<S> a = deformation_from_options<S>(o);

  Json records = Json::array();
  bool any_unclassifiable = false;
  for (const auto& c : spinors) {
    auto qc = compute_b_covariants(c, a);
    std::optional<int> label;
    std::optional<int> b_label;
    try {
      label = classify(qc.classical, o.tol);
    } catch (const UnclassifiableError&) {
    }
    try {
      b_label = classify(qc.b, o.tol);
    } catch (const UnclassifiableError&) {
    }
    if (!label || !b_label) any_unclassifiable = true;
    auto rec = duality_record(c, a, o.tol);
    records.push_back(b_classification_record(qc, label, b_label, rec));
  }

  if (o.format == "csv")
    emit(o, bclassify_csv(records));
  else
    emit(o, (batch ? records : records[0]).dump(2) + "\n");
  return any_unclassifiable ? 1 : 0;
}

int do_verify(const Options& o) {
  VerifyOptions vo;
  vo.samples = o.samples;
  vo.seed = o.seed;
  vo.tol = o.tol;
  vo.magnitude = o.has_a_random ? o.a_random : 0.5;

  std::vector<std::string> names = o.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = verify_suite_names();

  bool any_failed = false;
  Json report = Json::array();
  std::ostringstream text;
  for (const auto& name : names) {
    VerifyOptions per = vo;
    if (name == "appendix-diff") per.out_path = o.out;
    SuiteResult res = run_verify_suite(name, per);
    if (!res.passed) any_failed = true;
    text << res.str() << '\n';
    Json j;
    j["suite"] = res.name;
    j["passed"] = res.passed;
    j["checks"] = res.checks;
    j["failures"] = res.failures;
    if (!res.info.empty()) j["info"] = res.info;
    report.push_back(j);
  }
  std::cout << text.str();
  if (!o.out.empty() && !(names.size() == 1 && names[0] == "appendix-diff")) {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << report.dump(2) << "\n";
  }
  return any_failed ? 1 : 0;
}

int do_duality_table(const Options& o) {
  std::uint64_t samples = o.samples > 0 ? o.samples : 10000;
  double magnitude = o.has_a_random ? o.a_random : 0.5;
  ScanResult scan = duality_table_scan(samples, magnitude, o.seed, o.tol);
  if (o.format == "json")
    emit(o, scan_to_json(scan).dump(2) + "\n");
  else
    emit(o, scan_to_csv(scan));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinor classification over a deformed Clifford product"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from an INI/TOML file");

  Options o;

  auto add_common = [&](CLI::App* cmd, bool with_backend) {
    cmd->add_option("--tol", o.tol, "classification tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_backend)
      cmd->add_option("--backend", o.backend, "scalar backend")
          ->check(CLI::IsMember({"exact", "float"}))
          ->capture_default_str();
    cmd->add_option("--out", o.out, "write the report to a file instead of stdout");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "label spinors by their covariants");
  classify_cmd->add_option("--input", o.input, "spinor JSON file")->required();
  classify_cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  add_common(classify_cmd, true);

  CLI::App* bclassify_cmd =
      app.add_subcommand("bclassify", "label spinors under a deformed product");
  bclassify_cmd->add_option("--input", o.input, "spinor JSON file")->required();
  CLI::Option* amat = bclassify_cmd->add_option("--a-matrix", o.a_matrix,
                                                "antisymmetric deformation matrix JSON file");
  CLI::Option* arand = bclassify_cmd->add_option("--a-random", o.a_random,
                                                 "draw a random deformation of this magnitude");
  CLI::Option* bseed = bclassify_cmd->add_option("--seed", o.seed, "random seed");
  arand->needs(bseed);
  arand->excludes(amat);
  bclassify_cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  add_common(bclassify_cmd, true);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run property verification suites");
  verify_cmd->add_option("--suite", o.suites, "suite name, repeatable; default all")
      ->check(CLI::IsMember({"all", "algebra-laws", "grading", "idempotents", "fierz",
                             "representations", "duality", "appendix-diff"}));
  verify_cmd->add_option("--samples", o.samples, "override the per-suite sample count")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  CLI::Option* vrand =
      verify_cmd->add_option("--a-random", o.a_random, "deformation magnitude for random scans");
  add_common(verify_cmd, false);

  CLI::App* table_cmd =
      app.add_subcommand("duality-table", "tabulate classical versus deformed labels");
  table_cmd->add_option("--samples", o.samples, "number of random samples")
      ->check(CLI::PositiveNumber);
  table_cmd->add_option("--seed", o.seed, "random seed")->required();
  CLI::Option* trand =
      table_cmd->add_option("--a-random", o.a_random, "deformation magnitude");
  CLI::Option* tfmt = table_cmd->add_option("--format", o.format, "output format")
                          ->check(CLI::IsMember({"json", "csv"}));
  add_common(table_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  o.has_a_random = arand->count() > 0 || vrand->count() > 0 || trand->count() > 0;
  if (table_cmd->parsed() && tfmt->count() == 0) o.format = "csv";

  try {
    if (classify_cmd->parsed())
      return o.backend == "float" ? do_classify<Complex64>(o) : do_classify<ExactComplex>(o);
    if (bclassify_cmd->parsed()) {
      if (o.a_matrix.empty() && !o.has_a_random)
        throw InputError("bclassify needs --a-matrix or --a-random");
      return o.backend == "float" ? do_bclassify<Complex64>(o) : do_bclassify<ExactComplex>(o);
    }
    if (verify_cmd->parsed()) return do_verify(o);
    if (table_cmd->parsed()) return do_duality_table(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const QcliffError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
