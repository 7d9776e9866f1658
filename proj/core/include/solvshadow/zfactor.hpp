#ifndef SOLVSHADOW_ZFACTOR_HPP
#define SOLVSHADOW_ZFACTOR_HPP

#include <vector>

#include "solvshadow/qpoly.hpp"

namespace solvshadow {

/// Monic irreducible factors of p over Q with multiplicities, sorted
/// canonically (degree, then coefficient order).  p must be nonzero; the
/// rational leading content is dropped.
std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& p);

/// Irreducibility over Q (degree >= 1).
bool is_irreducible(const QPoly& p);

} // namespace solvshadow

#endif
