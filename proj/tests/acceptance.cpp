// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion is exact; there are no tolerances anywhere.

#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

#include "solvshadow/catalog.hpp"
#include "solvshadow/document.hpp"
#include "solvshadow/modification.hpp"
#include "solvshadow/prng.hpp"
#include "solvshadow/randomgen.hpp"
#include "solvshadow/report.hpp"
#include "solvshadow/shadow.hpp"

using namespace solvshadow;

namespace {

int failures = 0;

class CriterionTimer {
public:
  CriterionTimer() : start_(std::chrono::steady_clock::now()) {}
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void report(int number, const std::string& name, bool pass, const std::string& detail,
            long ms) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << number << " (" << name << "): "
            << detail << "  [" << ms << " ms]" << std::endl;
  if (!pass) ++failures;
}

std::string dump_algebra(const LieAlgebra& g, const std::string& name) {
  return serialize_algebra_document(document_from_algebra(g, name));
}

Subspace torus_subspace(const ShadowResult& res) {
  int n = res.source.dim();
  int m = static_cast<int>(res.torus.size());
  std::vector<Vec> kvecs;
  for (int a = 0; a < m; ++a) {
    Vec v(n + m);
    v[n + a] = Scalar(Rational(1));
    kvecs.push_back(v);
  }
  return Subspace::span(res.ambient.algebra, kvecs);
}

std::vector<std::pair<std::string, LieAlgebra>> battery_instances() {
  std::vector<std::pair<std::string, LieAlgebra>> out;
  for (const auto& e : catalog()) out.push_back({e.name, e.algebra});
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::ostringstream name;
    name << "random_" << seed;
    out.push_back({name.str(), random_solvable_algebra(seed, 5)});
  }
  return out;
}

// ------------------------------------------------------------ criteria ----

void criterion_1_and_2() {
  CriterionTimer t1;
  bool pass1 = true, pass2 = true;
  std::string detail1, detail2;
  int count = 0;
  long cross_ms = 0;
  for (const auto& [name, g] : battery_instances()) {
    ++count;
    ShadowResult res = shadow(g);
    ShadowReport rep = verify_shadow(res);
    if (res.shadow_algebra.dim() != g.dim()) {
      pass1 = false;
      detail1 = "dimension changed on " + name;
    }
    if (!rep.all_pass()) {
      pass1 = false;
      std::ostringstream os;
      os << "checks failed on " << name << ":";
      for (const auto& c : rep.checks)
        if (!c.pass) os << " " << c.name;
      os << "\nreplayable input:\n" << dump_algebra(g, name);
      detail1 = os.str();
    }
    CriterionTimer tc;
    try {
      Subspace via = shadow_via_killing(res.ambient.algebra, torus_subspace(res));
      if (!(via == res.shadow_subspace)) {
        pass2 = false;
        detail2 = "cross-construction mismatch on " + name + "\nreplayable input:\n" +
                  dump_algebra(g, name);
      }
    } catch (const Error& e) {
      pass2 = false;
      detail2 = std::string("DegeneratePairing on ") + name + ": " + e.what() +
                "\nreplayable input:\n" + dump_algebra(g, name);
    }
    cross_ms += tc.ms();
  }
  long total = t1.ms();
  if (pass1) {
    std::ostringstream os;
    os << "verify_shadow (a)-(g) pass on " << count << " instances";
    detail1 = os.str();
  }
  report(1, "shadow correctness battery", pass1, detail1, total - cross_ms);
  if (pass2) {
    std::ostringstream os;
    os << "Killing orthocomplement equals {X - K_X} span on " << count << " instances";
    detail2 = os.str();
  }
  report(2, "cross-construction agreement", pass2, detail2, cross_ms);
}

void criterion_3() {
  CriterionTimer t;
  bool pass = true;
  std::ostringstream why;
  {
    ShadowResult res = shadow(make_e2tilde());
    if (!(is_abelian(res.shadow_algebra) && res.shadow_algebra.dim() == 3)) {
      pass = false;
      why << "motion-algebra shadow is not abelian of dim 3; ";
    }
  }
  {
    ShadowResult res = shadow(make_oscillator());
    LieAlgebra h3r = direct_sum(make_heisenberg3(), make_abelian(1));
    if (!(fingerprint(res.shadow_algebra) == fingerprint(h3r))) {
      pass = false;
      why << "oscillator shadow fingerprint differs from h3 + R; ";
    }
  }
  {
    ShadowResult res = shadow(make_blockdiag5());
    WeightData wd = triangularize(res.shadow_algebra);
    std::vector<Rational> vals;
    bool rational = true;
    for (const auto& lam : wd.weights) {
      auto q = retract_rational(lam[0]);
      if (!q) {
        rational = false;
        break;
      }
      vals.push_back(*q);
    }
    std::sort(vals.begin(), vals.end());
    std::vector<Rational> expect{Rational(-1), Rational(-1), Rational(0), Rational(1),
                                 Rational(1)};
    if (!rational || vals != expect) {
      pass = false;
      why << "blockdiag5 shadow weights differ from {0, 1, 1, -1, -1}; ";
    }
  }
  report(3, "worked-example exactness", pass,
         pass ? "motion algebra, oscillator, blockdiag5 all exact" : why.str(), t.ms());
}

void criterion_4() {
  CriterionTimer t;
  bool pass = true;
  std::string detail;
  std::vector<const CatalogEntry*> bases;
  for (const auto& e : catalog())
    if (is_completely_solvable(e.algebra)) bases.push_back(&e);
  int found = 0;
  for (std::uint64_t seed = 0; seed < 1000 && pass; ++seed) {
    const CatalogEntry& base = *bases[seed % bases.size()];
    InnerProduct ip = InnerProduct::standard(base.algebra.dim());
    auto m = random_modification(base.algebra, ip, seed);
    if (!m) continue;
    ++found;
    if (!is_normal_modification(*m)) {
      pass = false;
      ModificationDocument doc;
      doc.name = "counterexample_seed_" + std::to_string(seed);
      doc.base_dim = base.algebra.dim();
      doc.torus = m->torus;
      doc.phi = m->phi;
      detail = "non-normal modification found (seed " + std::to_string(seed) + ", base " +
               base.name + ")\nbase:\n" + dump_algebra(base.algebra, base.name) +
               "modification:\n" + serialize_modification_document(doc);
    }
  }
  if (pass)
    detail = std::to_string(found) + " modifications across 1000 seeds, all normal";
  report(4, "normal-modification harness", pass, detail, t.ms());
}

void criterion_5() {
  CriterionTimer t;
  bool pass = true;
  std::ostringstream detail;
  for (const auto& entry : catalog()) {
    const LieAlgebra& g = entry.algebra;
    Fingerprint fp0 = fingerprint(shadow(g, 0).shadow_algebra);
    // Distinct Cartan subalgebras, as many as reachable up to 3.
    std::vector<Subspace> seen{cartan_subalgebra(g, 0)};
    int distinct = 1;
    for (std::uint64_t v = 1; v < 16 && distinct < 3; ++v) {
      Subspace h = cartan_subalgebra(g, v);
      bool dup = false;
      for (const auto& old : seen)
        if (old == h) dup = true;
      if (dup) continue;
      seen.push_back(h);
      ++distinct;
      if (!(fingerprint(shadow(g, v).shadow_algebra) == fp0)) {
        pass = false;
        detail << entry.name << ": fingerprint changed with the Cartan choice; ";
      }
    }
    for (int c = 0; c < 5; ++c) {
      LieAlgebra scrambled = random_basis_scramble(g, 977 * c + 13);
      if (!(fingerprint(shadow(scrambled).shadow_algebra) == fp0)) {
        pass = false;
        detail << entry.name << ": fingerprint changed under conjugation; ";
      }
    }
    detail << entry.name << "=" << distinct << " ";
  }
  report(5, "uniqueness corroboration", pass,
         (pass ? "fingerprints stable; distinct Cartans found: " : "") + detail.str(), t.ms());
}

void criterion_6() {
  CriterionTimer t;
  bool pass = true;
  std::ostringstream why;
  Prng rng(2024);
  for (const auto& entry : catalog()) {
    const LieAlgebra& g = entry.algebra;
    int n = g.dim();
    bool cs = is_completely_solvable(g);
    // 200 random rational elements.
    bool sampled_all_real = true;
    for (int trial = 0; trial < 200; ++trial) {
      Vec x(n);
      for (auto& c : x) c = Scalar(Rational(rng.range(-3, 3), 1 + rng.below(2)));
      if (!all_eigenvalues_real(ad(g, x))) {
        sampled_all_real = false;
        break;
      }
    }
    if (cs != sampled_all_real && cs) {
      pass = false;
      why << entry.name << ": completely solvable but a sample had complex spectrum; ";
    }
    // Exhaustive {-1,0,1} combinations at dimension <= 4.
    if (n <= 4) {
      bool exhaustive_all_real = true;
      std::vector<int> idx(n, -1);
      while (true) {
        Vec x(n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
          x[i] = Scalar(Rational(idx[i]));
          if (idx[i] != 0) nonzero = true;
        }
        if (nonzero && !all_eigenvalues_real(ad(g, x))) exhaustive_all_real = false;
        int p = 0;
        while (p < n && idx[p] == 1) idx[p++] = -1;
        if (p == n) break;
        ++idx[p];
      }
      if (cs != exhaustive_all_real) {
        pass = false;
        why << entry.name << ": exhaustive spectrum check disagrees with the weights; ";
      }
    } else if (cs != sampled_all_real) {
      pass = false;
      why << entry.name << ": sampled spectrum check disagrees with the weights; ";
    }
    // Nilradical against the brute-force grid at dimension <= 3.
    if (n <= 3 && n > 0) {
      Subspace nil = nilradical(g);
      std::vector<Vec> nilpotents;
      std::vector<int> gidx(n, -3);
      while (true) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = Scalar(Rational(gidx[i]));
        Matrix a = ad(g, x);
        if (mat_pow(a, n).is_zero()) {
          if (!nil.contains(x)) {
            pass = false;
            why << entry.name << ": grid nilpotent escapes the nilradical; ";
          }
          nilpotents.push_back(x);
        }
        int p = 0;
        while (p < n && gidx[p] == 3) gidx[p++] = -3;
        if (p == n) break;
        ++gidx[p];
      }
      Subspace spanned = Subspace::span(g, nilpotents);
      if (!(spanned == nil)) {
        pass = false;
        why << entry.name << ": grid nilpotents span dim " << spanned.dim()
            << " != nilradical dim " << nil.dim() << "; ";
      }
    }
  }
  // Also run the grid comparison on a few random 3-dimensional algebras.
  for (std::uint64_t seed = 300; seed < 305; ++seed) {
    LieAlgebra g = random_solvable_algebra(seed, 3);
    if (g.dim() != 3) continue;
    Subspace nil = nilradical(g);
    std::vector<Vec> nilpotents;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        for (int c = -3; c <= 3; ++c) {
          Vec x{Scalar(Rational(a)), Scalar(Rational(b)), Scalar(Rational(c))};
          if (mat_pow(ad(g, x), 3).is_zero()) nilpotents.push_back(x);
        }
    if (!(Subspace::span(g, nilpotents) == nil)) {
      pass = false;
      why << "random seed " << seed << ": grid nilradical mismatch; ";
    }
  }
  report(6, "oracle equivalence at small scale", pass,
         pass ? "weights agree with brute-force spectra and grid nilradicals" : why.str(),
         t.ms());
}

void criterion_7() {
  CriterionTimer t;
  bool pass = true;
  std::ostringstream why;
  Prng rng(555);
  int done = 0;
  while (done < 500 && pass) {
    int n = 2 + static_cast<int>(rng.below(4));  // 2..5
    // Known decomposition: commuting semisimple + nilpotent blocks.
    Matrix s0(n, n), n0(n, n), sre0(n, n), sim0(n, n);
    int i = 0;
    int prev_start = -1;
    long prev_a = 0, prev_b = 0;
    bool prev_rot = false;
    while (i < n) {
      bool rot = (i + 1 < n) && rng.chance(1, 2);
      if (rot) {
        long a = rng.range(-2, 2);
        long b = rng.range(1, 2);
        s0(i, i) = Scalar(Rational(a));
        s0(i + 1, i + 1) = Scalar(Rational(a));
        s0(i, i + 1) = Scalar(Rational(-b));
        s0(i + 1, i) = Scalar(Rational(b));
        sre0(i, i) = Scalar(Rational(a));
        sre0(i + 1, i + 1) = Scalar(Rational(a));
        sim0(i, i + 1) = Scalar(Rational(-b));
        sim0(i + 1, i) = Scalar(Rational(b));
        // A nilpotent coupling to an identical previous block commutes.
        if (prev_start >= 0 && prev_rot && prev_a == a && prev_b == b && prev_start == i - 2) {
          n0(prev_start, i) = Scalar(Rational(1));
          n0(prev_start + 1, i + 1) = Scalar(Rational(1));
        }
        prev_rot = true;
        prev_a = a;
        prev_b = b;
        prev_start = i;
        i += 2;
      } else {
        long d = rng.range(-2, 2);
        s0(i, i) = Scalar(Rational(d));
        sre0(i, i) = Scalar(Rational(d));
        if (prev_start == i - 1 && prev_start >= 0 && !prev_rot && prev_a == d)
          n0(prev_start, i) = Scalar(Rational(1));
        prev_rot = false;
        prev_a = d;
        prev_start = i;
        i += 1;
      }
    }
    Matrix p = random_unimodular_matrix(n, rng.next());
    Matrix pinv = *inverse(p);
    Matrix m = p * (s0 + n0) * pinv;
    JordanParts jp = jordan_chevalley(m);
    if (!(jp.semisimple == p * s0 * pinv && jp.nilpotent == p * n0 * pinv)) {
      pass = false;
      why << "Jordan-Chevalley differs from the constructed decomposition (trial " << done
          << ")";
      break;
    }
    SplitParts sp = split_real_imag(jp.semisimple);
    if (!(sp.real_part == p * sre0 * pinv && sp.imag_part == p * sim0 * pinv)) {
      pass = false;
      why << "real/imaginary split differs from the constructed one (trial " << done << ")";
      break;
    }
    ++done;
  }
  report(7, "exact linear-algebra kernels", pass,
         pass ? "500 constructed decompositions matched exactly" : why.str(), t.ms());
}

void criterion_8() {
  CriterionTimer t;
  RunOptions opt;
  Report a = run_catalog("", opt);
  Report b = run_catalog("", opt);
  std::string ra = render_report(a, OutputMode::Machine);
  std::string rb = render_report(b, OutputMode::Machine);
  bool pass = (ra == rb) && a.ok() && b.ok();
  std::string detail = pass ? "two catalog runs are byte-identical and fully green"
                            : (ra == rb ? "catalog checks failed" : "machine reports differ");
  report(8, "determinism", pass, detail, t.ms());
}

} // namespace

int main() {
  std::cout << "acceptance suite (exact arithmetic; no tolerances)" << std::endl;
  try {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
  } catch (const Error& e) {
    std::cout << "FAIL  suite aborted by error [" << e.code() << "]: " << e.what() << std::endl;
    return 3;
  }
  if (failures == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " criteria failed" << std::endl;
  return 1;
}
