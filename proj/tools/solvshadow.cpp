#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "solvshadow/report.hpp"

namespace {

using namespace solvshadow;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("FileError", "cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FieldPolicy parse_policy(const std::string& s) {
  if (s == "auto") return FieldPolicy::Auto;
  if (s == "rational") return FieldPolicy::Rational;
  if (s == "gaussian") return FieldPolicy::Gaussian;
  if (s == "extend") return FieldPolicy::Extend;
  throw input_error("FlagError", "unknown --field value: " + s);
}

int emit(const Report& rep, const std::string& output) {
  OutputMode mode = output == "machine" ? OutputMode::Machine : OutputMode::Text;
  std::cout << render_report(rep, mode);
  return rep.exit_code();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation of completely solvable shadows of solvable Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string output = "text";
  std::string field = "auto";
  bool verbose = false;
  app.add_option("--output", output, "Report format: text or machine")
      ->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--field", field, "Scalar extension policy: auto, rational, gaussian, extend")
      ->check(CLI::IsMember({"auto", "rational", "gaussian", "extend"}));
  app.add_flag("--verbose", verbose, "Verbose text output");

  std::string analyze_file;
  auto* analyze = app.add_subcommand("analyze", "Structural analysis of one algebra");
  analyze->add_option("file", analyze_file, "Algebra document")->required();

  std::string shadow_file;
  int cartan_retries = 3;
  bool cross_check = false;
  auto* shadow_cmd = app.add_subcommand("shadow", "Completely solvable shadow with verification");
  shadow_cmd->add_option("file", shadow_file, "Algebra document")->required();
  shadow_cmd->add_option("--cartan-retries", cartan_retries,
                         "Distinct Cartan subalgebras to compare fingerprints across");
  shadow_cmd->add_flag("--cross-check", cross_check,
                       "Also compute the shadow as the Killing orthocomplement of the torus");

  std::string mod_base, mod_file;
  auto* modcheck = app.add_subcommand("modcheck", "Verify a modification document");
  modcheck->add_option("base-file", mod_base, "Completely solvable base document")->required();
  modcheck->add_option("mod-file", mod_file, "Modification document")->required();

  std::string fp_file;
  auto* fingerprint_cmd = app.add_subcommand("fingerprint", "Isomorphism-invariant fingerprint");
  fingerprint_cmd->add_option("file", fp_file, "Algebra document")->required();

  std::string filter;
  std::uint64_t seed = 0;
  auto* catalog_cmd = app.add_subcommand("catalog", "Run the suite over the built-in algebras");
  catalog_cmd->add_option("--filter", filter, "Substring filter on catalog names");
  catalog_cmd->add_option("--seed", seed, "Seed for the randomized parts");

  CLI11_PARSE(app, argc, argv);

  try {
    RunOptions opt;
    opt.policy = parse_policy(field);
    opt.verbose = verbose;
    opt.cartan_retries = cartan_retries;
    opt.cross_check = cross_check;
    if (const char* env = std::getenv("SOLVSHADOW_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
    else opt.seed = seed;

    if (*analyze) {
      return emit(run_analyze(parse_algebra_document(read_file(analyze_file)), opt), output);
    }
    if (*shadow_cmd) {
      return emit(run_shadow(parse_algebra_document(read_file(shadow_file)), opt), output);
    }
    if (*modcheck) {
      return emit(run_modcheck(parse_algebra_document(read_file(mod_base)),
                               parse_modification_document(read_file(mod_file)), opt),
                  output);
    }
    if (*fingerprint_cmd) {
      return emit(run_fingerprint(parse_algebra_document(read_file(fp_file)), opt), output);
    }
    if (*catalog_cmd) {
      return emit(run_catalog(filter, opt), output);
    }
  } catch (const solvshadow::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    switch (e.error_class()) {
      case ErrorClass::Input: return 2;
      case ErrorClass::Math: return 1;
      case ErrorClass::Internal: return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
