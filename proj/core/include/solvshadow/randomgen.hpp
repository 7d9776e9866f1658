#ifndef SOLVSHADOW_RANDOMGEN_HPP
#define SOLVSHADOW_RANDOMGEN_HPP

#include "solvshadow/liealgebra.hpp"

namespace solvshadow {

/// Seeded random solvable Lie algebra with rational structure constants and
/// dimension at most max_dim (>= 2).  Mixes several constructions: abelian
/// ideals extended by derivations (with rotation blocks forcing complex
/// weights), nilpotent matrix spans, upper-triangular spans, direct sums, and
/// random unimodular basis scrambles.  Deterministic per seed.
LieAlgebra random_solvable_algebra(std::uint64_t seed, int max_dim = 5);

/// Integer matrix with determinant +-1 built from elementary operations.
Matrix random_unimodular_matrix(int n, std::uint64_t seed);

/// The same algebra written in a random unimodular basis.
LieAlgebra random_basis_scramble(const LieAlgebra& g, std::uint64_t seed);

} // namespace solvshadow

#endif
