#include "solvshadow/report.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "solvshadow/catalog.hpp"
#include "solvshadow/errors.hpp"
#include "solvshadow/modification.hpp"
#include "solvshadow/randomgen.hpp"

namespace solvshadow {

using nlohmann::json;

namespace {

std::string scalar_json_str(const Scalar& s) {
  if (auto q = retract_rational(s)) return to_string(*q);
  AlgebraicCanon canon = canonical_algebraic(s);
  std::ostringstream os;
  os << "algebraic(" << canon.minpoly.str() << " # root " << canon.root_index << ")";
  return os.str();
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_json_str(s));
  return a;
}

json matrix_json_any(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_json_str(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json fingerprint_json_obj(const Fingerprint& fp) {
  json j;
  j["dim"] = fp.dim;
  j["derived_profile"] = fp.derived_profile;
  j["lower_central_profile"] = fp.lcs_profile;
  j["nilradical_dim"] = fp.nilradical_dim;
  j["center_dim"] = fp.center_dim;
  j["killing"] = {{"rank", fp.killing_rank},
                  {"positive", fp.killing_positive},
                  {"negative", fp.killing_negative}};
  j["unimodular"] = fp.unimodular;
  j["completely_solvable"] = fp.completely_solvable;
  j["weights"] = {{"count", fp.weight_count},
                  {"rank", fp.weight_rank},
                  {"multiplicities", fp.weight_multiplicities},
                  {"real", fp.real_weight_count},
                  {"zero", fp.zero_weight_count}};
  if (fp.ratio_pattern_defined) {
    json ratios = json::array();
    for (const auto& r : fp.ratio_pattern) {
      json e;
      e["minpoly"] = r.minpoly.str();
      e["root"] = r.root_index;
      ratios.push_back(e);
    }
    j["weights"]["ratio_pattern"] = ratios;
  }
  return j;
}

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void add_check(Report& r, const std::string& name, bool pass, const std::string& detail = "") {
  r.checks.push_back({name, pass, detail});
}

/// Runs f and converts a mathematical failure into a failed check instead of
/// a crash; internal errors still propagate.
template <typename F>
void guarded(Report& r, const std::string& name, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.error_class() == ErrorClass::Internal) throw;
    add_check(r, name, false, std::string(e.code()) + ": " + e.what());
  }
}

/// Validates the field policy by running the triangularization once with it;
/// restricted policies throw when the tower would exceed them.
void validate_policy(Report& r, const LieAlgebra& g, FieldPolicy policy) {
  if (policy == FieldPolicy::Auto || policy == FieldPolicy::Extend) return;
  if (!is_solvable(g)) return;
  guarded(r, "field_policy", [&] {
    triangularize(g, policy);
    add_check(r, "field_policy", true, "weights computable under the requested field policy");
  });
}

json shadow_json(const ShadowResult& res) {
  json j;
  j["torus_dim"] = static_cast<int>(res.torus.size());
  j["ambient_dim"] = res.ambient.algebra.dim();
  j["cartan_dim"] = res.cartan.dim();
  j["cartan_basis"] = matrix_json_any(res.cartan.basis());
  j["correspondence"] = matrix_json_any(res.correspondence);
  json torus = json::array();
  for (const auto& t : res.torus) torus.push_back(matrix_json_any(t));
  j["torus"] = torus;
  // Shadow structure constants: as a replayable document when rational,
  // otherwise as a field-tagged tensor.
  const LieAlgebra& s = res.shadow_algebra;
  bool rational = true;
  for (int i = 0; i < s.dim() && rational; ++i)
    for (int jj = 0; jj < s.dim() && rational; ++jj)
      for (int k = 0; k < s.dim() && rational; ++k)
        if (!retract_rational(s.c(i, jj, k))) rational = false;
  if (rational) {
    AlgebraDocument doc = document_from_algebra(s, "shadow");
    j["shadow_document"] = json::parse(serialize_algebra_document(doc));
  } else {
    json tensor = json::array();
    for (int i = 0; i < s.dim(); ++i)
      for (int jj = i + 1; jj < s.dim(); ++jj) {
        Vec v(s.dim());
        for (int k = 0; k < s.dim(); ++k) v[k] = s.c(i, jj, k);
        if (!vec_is_zero(v)) {
          json e;
          e["i"] = i;
          e["j"] = jj;
          e["c"] = vec_json(v);
          tensor.push_back(e);
        }
      }
    j["shadow_structure"] = tensor;
    if (s.field()) j["shadow_field_minpoly"] = s.field()->min_poly().str();
  }
  return j;
}

void shadow_battery(Report& rep, const LieAlgebra& r, const RunOptions& opt) {
  if (!is_unimodular(r))
    rep.warnings.push_back(
        "input is not unimodular; the construction applies, but the paper's headline "
        "hypotheses do not");
  ShadowResult res = shadow(r);
  ShadowReport sr = verify_shadow(res);
  for (const auto& c : sr.checks) add_check(rep, c.name, c.pass, c.detail);
  if (opt.cross_check) {
    int n = r.dim(), m = static_cast<int>(res.torus.size());
    std::vector<Vec> kvecs;
    for (int a = 0; a < m; ++a) {
      Vec v(n + m);
      v[n + a] = Scalar(Rational(1));
      kvecs.push_back(v);
    }
    Subspace kspace = Subspace::span(res.ambient.algebra, kvecs);
    guarded(rep, "killing_cross_check", [&] {
      Subspace via = shadow_via_killing(res.ambient.algebra, kspace);
      add_check(rep, "killing_cross_check", via == res.shadow_subspace,
                "Killing orthocomplement of the torus against the direct construction");
    });
  }
  // Fingerprint stability across distinct Cartan choices.
  {
    Fingerprint fp0 = fingerprint(res.shadow_algebra);
    std::vector<Subspace> seen{res.cartan};
    bool stable = true;
    int distinct = 1;
    for (std::uint64_t variant = 1; variant < static_cast<std::uint64_t>(4 * opt.cartan_retries) &&
                                    distinct < opt.cartan_retries;
         ++variant) {
      Subspace h = cartan_subalgebra(r, variant);
      bool eq = false;
      for (const auto& old : seen)
        if (old == h) eq = true;
      if (eq) continue;
      seen.push_back(h);
      ++distinct;
      ShadowResult alt = shadow(r, variant);
      if (!(fingerprint(alt.shadow_algebra) == fp0)) stable = false;
    }
    std::ostringstream os;
    os << distinct << " distinct Cartan subalgebras examined";
    add_check(rep, "fingerprint_stable_across_cartans", stable, os.str());
  }
  rep.derived.push_back({"shadow", shadow_json(res).dump(2)});
  rep.derived.push_back(
      {"shadow_fingerprint", fingerprint_json_obj(fingerprint(res.shadow_algebra)).dump(2)});
}

} // namespace

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string render_report(const Report& r, OutputMode mode) {
  if (mode == OutputMode::Machine) {
    json j;
    j["command"] = r.command;
    j["input_digest"] = r.input_digest;
    json checks = json::array();
    for (const auto& c : r.checks) {
      json e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      if (!c.detail.empty()) e["detail"] = c.detail;
      checks.push_back(e);
    }
    j["checks"] = checks;
    json warnings = json::array();
    for (const auto& w : r.warnings) warnings.push_back(w);
    j["warnings"] = warnings;
    json derived;
    for (const auto& [k, v] : r.derived) derived[k] = json::parse(v);
    j["derived"] = derived;
    j["ok"] = r.ok();
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  os << "input digest: " << r.input_digest << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  for (const auto& c : r.checks) {
    os << (c.pass ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& [k, v] : r.derived) os << k << ":\n" << v << "\n";
  os << "result: " << (r.ok() ? "ok" : "checks failed") << "  [" << r.timing_ms << " ms]\n";
  return os.str();
}

std::string fingerprint_json(const Fingerprint& fp) { return fingerprint_json_obj(fp).dump(2); }

std::string subspace_json(const Subspace& s) {
  json j;
  j["dim"] = s.dim();
  j["basis"] = matrix_json_any(s.canonical());
  return j.dump(2);
}

Report run_analyze(const AlgebraDocument& doc, const RunOptions& opt) {
  Timer timer;
  Report rep;
  rep.command = "analyze";
  rep.input_digest = digest_hex(serialize_algebra_document(doc));
  ParsedAlgebra pa = realize(doc);
  const LieAlgebra& g = pa.algebra;
  validate_policy(rep, g, opt.policy);

  bool solvable = is_solvable(g);
  add_check(rep, "solvable", solvable);
  {
    json j;
    j["dim"] = g.dim();
    std::vector<int> dd;
    for (const auto& s : derived_series(g)) dd.push_back(s.dim());
    j["derived_profile"] = dd;
    j["nilpotent"] = is_nilpotent(g);
    j["abelian"] = is_abelian(g);
    rep.derived.push_back({"structure", j.dump(2)});
  }
  bool unimodular = is_unimodular(g);
  add_check(rep, "unimodular", true,
            unimodular ? "trace ad X = 0 on the basis" : "not unimodular (recorded, not an error)");
  if (!unimodular)
    rep.warnings.push_back("algebra is not unimodular; several theorems assume unimodularity");

  guarded(rep, "completely_solvable", [&] {
    bool cs = is_completely_solvable(g);
    add_check(rep, "completely_solvable", true, cs ? "yes" : "no");
    json j;
    j["value"] = cs;
    rep.derived.push_back({"completely_solvable", j.dump(2)});
  });
  guarded(rep, "nilradical", [&] {
    Subspace nr = nilradical(g);
    rep.derived.push_back({"nilradical", subspace_json(nr)});
    add_check(rep, "nilradical", true, "dim " + std::to_string(nr.dim()));
  });
  guarded(rep, "max_completely_solvable_ideal", [&] {
    Subspace ideal = max_completely_solvable_ideal(g);
    rep.derived.push_back({"max_completely_solvable_ideal", subspace_json(ideal)});
    add_check(rep, "max_completely_solvable_ideal", true, "dim " + std::to_string(ideal.dim()));
  });
  guarded(rep, "cartan_subalgebra", [&] {
    Subspace h = cartan_subalgebra(g, opt.seed);
    rep.derived.push_back({"cartan_subalgebra", subspace_json(h)});
    add_check(rep, "cartan_subalgebra", true, "dim " + std::to_string(h.dim()));
  });
  {
    Matrix b = killing_form(g);
    SymmetricSignature sig = symmetric_signature(b);
    json j;
    j["matrix"] = matrix_json_any(b);
    j["rank"] = g.dim() - sig.zero;
    j["positive"] = sig.positive;
    j["negative"] = sig.negative;
    rep.derived.push_back({"killing_form", j.dump(2)});
  }
  add_check(rep, "derivation_algebra", true,
            "dim " + std::to_string(derivations(g).size()));
  guarded(rep, "weights", [&] {
    WeightData wd = triangularize(g);
    json rows = json::array();
    for (const auto& lam : wd.weights) rows.push_back(vec_json(lam));
    json j;
    j["values_on_basis"] = rows;
    if (wd.field) j["field_minpoly"] = wd.field->min_poly().str();
    rep.derived.push_back({"weights", j.dump(2)});
    add_check(rep, "weights", true, std::to_string(wd.weights.size()) + " weight functionals");
  });
  rep.timing_ms = timer.ms();
  return rep;
}

Report run_shadow(const AlgebraDocument& doc, const RunOptions& opt) {
  Timer timer;
  Report rep;
  rep.command = "shadow";
  rep.input_digest = digest_hex(serialize_algebra_document(doc));
  ParsedAlgebra pa = realize(doc);
  validate_policy(rep, pa.algebra, opt.policy);
  guarded(rep, "shadow_construction", [&] { shadow_battery(rep, pa.algebra, opt); });
  rep.timing_ms = timer.ms();
  return rep;
}

Report run_fingerprint(const AlgebraDocument& doc, const RunOptions& opt) {
  Timer timer;
  Report rep;
  rep.command = "fingerprint";
  rep.input_digest = digest_hex(serialize_algebra_document(doc));
  ParsedAlgebra pa = realize(doc);
  validate_policy(rep, pa.algebra, opt.policy);
  guarded(rep, "fingerprint", [&] {
    Fingerprint fp = fingerprint(pa.algebra);
    rep.derived.push_back({"fingerprint", fingerprint_json(fp)});
    add_check(rep, "fingerprint", true);
  });
  rep.timing_ms = timer.ms();
  return rep;
}

Report run_modcheck(const AlgebraDocument& base_doc, const ModificationDocument& mod_doc,
                    const RunOptions& opt) {
  Timer timer;
  Report rep;
  rep.command = "modcheck";
  rep.input_digest =
      digest_hex(serialize_algebra_document(base_doc) + serialize_modification_document(mod_doc));
  ParsedAlgebra pa = realize(base_doc);
  const LieAlgebra& s = pa.algebra;
  validate_policy(rep, s, opt.policy);
  if (mod_doc.base_dim != s.dim())
    throw input_error("SyntaxError", "modification base_dim does not match the base algebra");
  InnerProduct ip = pa.ip ? *pa.ip : InnerProduct::standard(s.dim());
  if (!pa.ip)
    rep.warnings.push_back("no inner product supplied; using the identity matrix");

  guarded(rep, "modification_closed", [&] {
    auto r = try_apply_modification(s, ip, mod_doc.torus, mod_doc.phi);
    if (auto* fail = std::get_if<ClosureFailure>(&r)) {
      std::ostringstream os;
      os << "NotClosed: bracket of pair (" << s.labels()[fail->i] << ", " << s.labels()[fail->j]
         << ") escapes the modified subspace; value " << vec_json(fail->bracket_value).dump();
      add_check(rep, "modification_closed", false, os.str());
      return;
    }
    Modification m = std::get<Modification>(std::move(r));
    add_check(rep, "modification_closed", true);
    add_check(rep, "normal_modification", is_normal_modification(m),
              "phi annihilates [s, s]");
    {
      int n = s.dim(), mm = static_cast<int>(m.torus.size());
      std::vector<Vec> svecs;
      for (int i = 0; i < n; ++i) {
        Vec v(n + mm);
        v[i] = Scalar(Rational(1));
        svecs.push_back(v);
      }
      Subspace semb = Subspace::span(m.ambient.algebra, svecs);
      add_check(rep, "mutual_bracket", check_mutual_bracket(m.ambient.algebra, semb, m.modified),
                "[s, r] inside s intersect r");
      std::vector<Vec> tvecs;
      for (int a = 0; a < mm; ++a) {
        Vec v(n + mm);
        v[n + a] = Scalar(Rational(1));
        tvecs.push_back(v);
      }
      Subspace tspan = Subspace::span(m.ambient.algebra, tvecs);
      add_check(rep, "transitivity_analogue",
                check_transitivity_analogue(m.ambient.algebra, tspan, m.modified),
                "ambient = t + r");
    }
    guarded(rep, "roundtrip_shadow_fingerprint", [&] {
      ShadowResult back = shadow(m.modified_algebra);
      bool eq = fingerprint(back.shadow_algebra) == fingerprint(s);
      add_check(rep, "roundtrip_shadow_fingerprint", eq,
                "shadow of the modification matches the base fingerprint");
    });
    rep.derived.push_back(
        {"modified_fingerprint", fingerprint_json(fingerprint(m.modified_algebra))});
  });
  rep.timing_ms = timer.ms();
  return rep;
}

Report run_catalog(const std::string& filter, const RunOptions& opt) {
  Timer timer;
  Report rep;
  rep.command = filter.empty() ? "catalog" : "catalog --filter " + filter;
  auto entries = catalog_filtered(filter);
  rep.input_digest = digest_hex(rep.command);
  if (entries.empty()) {
    rep.warnings.push_back("filter matched no catalog entries");
    rep.timing_ms = timer.ms();
    return rep;
  }
  for (const auto& entry : entries) {
    const LieAlgebra& g = entry.algebra;
    std::string p = entry.name + ".";
    guarded(rep, p + "battery", [&] {
      RunOptions local = opt;
      local.cartan_retries = 3;
      Report sub;
      shadow_battery(sub, g, local);
      for (const auto& c : sub.checks) add_check(rep, p + c.name, c.pass, c.detail);
      // Basis-conjugation stability of the shadow fingerprint.
      ShadowResult res = shadow(g);
      Fingerprint fp0 = fingerprint(res.shadow_algebra);
      bool stable = true;
      for (int t = 0; t < 2; ++t) {
        LieAlgebra scrambled = random_basis_scramble(g, opt.seed * 1299709 + t + 17);
        ShadowResult alt = shadow(scrambled);
        if (!(fingerprint(alt.shadow_algebra) == fp0)) stable = false;
      }
      add_check(rep, p + "fingerprint_stable_under_conjugation", stable);
    });
    // A short modification fuzz on completely solvable members.
    guarded(rep, p + "modification_fuzz", [&] {
      if (!is_completely_solvable(g)) return;
      InnerProduct ip = InnerProduct::standard(g.dim());
      int found = 0;
      bool all_normal = true;
      for (std::uint64_t sd = 0; sd < 5; ++sd) {
        auto m = random_modification(g, ip, opt.seed * 7919 + sd);
        if (m) {
          ++found;
          if (!is_normal_modification(*m)) all_normal = false;
        }
      }
      add_check(rep, p + "modifications_normal", all_normal,
                std::to_string(found) + " modifications sampled");
    });
  }
  rep.timing_ms = timer.ms();
  return rep;
}

} // namespace solvshadow
