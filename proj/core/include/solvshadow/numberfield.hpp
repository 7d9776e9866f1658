#ifndef SOLVSHADOW_NUMBERFIELD_HPP
#define SOLVSHADOW_NUMBERFIELD_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "solvshadow/qpoly.hpp"
#include "solvshadow/rootbox.hpp"

namespace solvshadow {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// An algebraic number field Q(a), presented by the monic irreducible minimal
/// polynomial of the generator together with an isolating box that pins down
/// which complex root the generator denotes.  The box may be refined on
/// demand; refinement never changes the distinguished root.
class NumberField {
public:
  /// Verifies monicity, irreducibility (by factoring over Q) and that the box
  /// isolates exactly one root.  Degree must be >= 2; rationals are
  /// represented without a field.
  static FieldPtr create(QPoly min_poly, Box box);

  /// Field generated by the root_index-th root (canonical root order) of a
  /// monic irreducible polynomial over Q.
  static FieldPtr from_root(const QPoly& min_poly, int root_index);

  const QPoly& min_poly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  bool generator_is_real() const { return real_; }

  /// Snapshot of the current isolating box.
  Box box() const;

  /// One refinement step (box shrinks, same root).
  void refine() const;

  /// Canonical isolating boxes for all roots of the minimal polynomial,
  /// computed once and cached.
  const std::vector<Box>& all_root_boxes() const;

  /// Index of the distinguished root in the canonical root order.
  int distinguished_root_index() const;

private:
  NumberField() = default;

  QPoly minpoly_;
  bool real_ = false;
  mutable std::mutex mu_;
  mutable Box box_;
  mutable std::optional<std::vector<Box>> roots_;
  mutable std::optional<int> root_index_;
};

/// Guards operations whose meaning depends on a real embedding.
inline void require_field_real(const FieldPtr& f) {
  if (f && !f->generator_is_real())
    throw math_error("NonRealField", "operation requires a real-embedded scalar field");
}

} // namespace solvshadow

#endif
