#ifndef SOLVSHADOW_REPORT_HPP
#define SOLVSHADOW_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "solvshadow/document.hpp"
#include "solvshadow/shadow.hpp"

namespace solvshadow {

enum class OutputMode { Text, Machine };

/// Result of a CLI-level run.  Machine rendering is canonical and carries no
/// timing, so identical runs are byte-identical; text rendering includes the
/// wall-clock time.
struct Report {
  std::string command;
  std::string input_digest;
  struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  /// Derived data as (key, canonical JSON text) pairs, in emission order.
  std::vector<std::pair<std::string, std::string>> derived;
  long timing_ms = 0;

  bool ok() const;
  /// 0 all checks pass, 1 otherwise.
  int exit_code() const { return ok() ? 0 : 1; }
};

std::string render_report(const Report& r, OutputMode mode);

struct RunOptions {
  FieldPolicy policy = FieldPolicy::Auto;
  int cartan_retries = 3;
  bool cross_check = true;
  std::uint64_t seed = 0;
  bool verbose = false;
};

Report run_analyze(const AlgebraDocument& doc, const RunOptions& opt);
Report run_shadow(const AlgebraDocument& doc, const RunOptions& opt);
Report run_modcheck(const AlgebraDocument& base_doc, const ModificationDocument& mod_doc,
                    const RunOptions& opt);
Report run_fingerprint(const AlgebraDocument& doc, const RunOptions& opt);
Report run_catalog(const std::string& filter, const RunOptions& opt);

/// JSON text helpers shared with the test suites.
std::string fingerprint_json(const Fingerprint& fp);
std::string subspace_json(const Subspace& s);

} // namespace solvshadow

#endif
