#ifndef SOLVSHADOW_SHADOW_HPP
#define SOLVSHADOW_SHADOW_HPP

#include <string>

#include "solvshadow/liealgebra.hpp"

namespace solvshadow {

/// The compact-part map of a solvable algebra with respect to a Cartan
/// subalgebra: theta(X) is the imaginary semisimple part of ad of the Cartan
/// component of X, extended by zero on the weight-adapted complement.  All
/// outputs are commuting derivations with purely imaginary spectrum,
/// vanishing on the nilradical (verified).
struct CompactPartMap {
  std::vector<Matrix> theta;  // one n x n matrix per basis element of r
  FieldPtr field;             // possibly an extension of the algebra field
  FieldHom embed;             // algebra field -> field
};
CompactPartMap compact_part_map(const LieAlgebra& r, const Subspace& cartan);

/// The completely solvable shadow of a solvable algebra: the span of
/// X - theta(X) inside r extended by the torus k spanned by the theta values.
struct ShadowResult {
  LieAlgebra source;          // r
  Subspace cartan;            // the Cartan subalgebra used
  CompactPartMap theta;
  std::vector<Matrix> torus;  // basis of k (deduplicated theta values)
  SemidirectSum ambient;      // g = r x| k
  Subspace shadow_subspace;   // s as a subspace of g
  Matrix correspondence;      // (n+m) x n: column i is the image of e_i in s
  LieAlgebra shadow_algebra;  // structure constants of s in that basis
};
ShadowResult shadow(const LieAlgebra& r, std::uint64_t cartan_variant = 0);

/// The Killing-orthogonal complement of the torus inside the ambient algebra:
/// { X : B(X, Y) = 0 for all Y in k }.  Raises DegeneratePairing when the
/// dimension differs from dim g - dim k.
Subspace shadow_via_killing(const LieAlgebra& g, const Subspace& k);

/// Structural checks (a)-(g) on a ShadowResult, reported individually.
struct ShadowCheck {
  std::string name;
  bool pass;
  std::string detail;
};
struct ShadowReport {
  std::vector<ShadowCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};
ShadowReport verify_shadow(const ShadowResult& res);

/// Necessary-condition isomorphism invariants, exactly computed and invariant
/// under change of basis.
struct Fingerprint {
  int dim = 0;
  std::vector<int> derived_profile;
  std::vector<int> lcs_profile;
  int nilradical_dim = 0;
  int center_dim = 0;
  int killing_rank = 0;
  int killing_positive = 0;
  int killing_negative = 0;
  bool unimodular = false;
  bool completely_solvable = false;
  int weight_count = 0;                  // distinct weight functionals
  std::vector<int> weight_multiplicities;
  int weight_rank = 0;
  int real_weight_count = 0;
  int zero_weight_count = 0;
  bool ratio_pattern_defined = false;    // only when weight_rank <= 1
  std::vector<AlgebraicCanon> ratio_pattern;

  bool operator==(const Fingerprint& o) const;
  std::string str() const;
};
Fingerprint fingerprint(const LieAlgebra& g);

/// Signature data of a symmetric matrix over a real field (eigenvalue counts
/// with multiplicity, via Descartes on the characteristic polynomial).
struct SymmetricSignature {
  int positive = 0, negative = 0, zero = 0;
};
SymmetricSignature symmetric_signature(const Matrix& m);

} // namespace solvshadow

#endif
