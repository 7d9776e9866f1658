#ifndef SOLVSHADOW_CATALOG_HPP
#define SOLVSHADOW_CATALOG_HPP

#include <string>
#include <vector>

#include "solvshadow/liealgebra.hpp"

namespace solvshadow {

/// Built-in test algebras used by the catalog command and the test suites.
struct CatalogEntry {
  std::string name;
  std::string description;
  LieAlgebra algebra;
};

const std::vector<CatalogEntry>& catalog();

/// Entries whose names contain the filter substring (case-sensitive); the
/// empty filter matches everything.
std::vector<CatalogEntry> catalog_filtered(const std::string& filter);

/// Convenience accessors for the algebras used throughout the tests.
LieAlgebra make_abelian(int n);
LieAlgebra make_heisenberg3();
LieAlgebra make_affine();     // [X, Y] = Y
LieAlgebra make_e2tilde();    // [T, X] = Y, [T, Y] = -X
LieAlgebra make_oscillator(); // [T, X] = Y, [T, Y] = -X, [X, Y] = Z
LieAlgebra make_blockdiag5();
LieAlgebra make_split_diag3(); // [T, X] = X, [T, Y] = -Y

} // namespace solvshadow

#endif
