#include "solvshadow/numberfield.hpp"

#include "solvshadow/errors.hpp"
#include "solvshadow/zfactor.hpp"

namespace solvshadow {

FieldPtr NumberField::create(QPoly min_poly, Box box) {
  check_internal(min_poly.degree() >= 2, "number fields need degree >= 2");
  check_internal(min_poly.is_monic(), "minimal polynomial must be monic");
  check_internal(is_irreducible(min_poly), "minimal polynomial must be irreducible");
  auto count = count_roots_in_box(min_poly, box);
  check_internal(count && *count == 1, "field box must isolate exactly one root");

  auto f = std::shared_ptr<NumberField>(new NumberField());
  f->minpoly_ = std::move(min_poly);
  f->box_ = box;
  if (box.is_real_segment()) {
    f->real_ = true;
  } else if (!box.y.contains(0)) {
    f->real_ = false;
  } else {
    // The box straddles the real axis; the unique root inside is real iff a
    // real root of the minimal polynomial falls in the x-range.
    f->real_ = count_real_roots_interval(f->minpoly_, box.x.lo, box.x.hi) > 0 ||
               f->minpoly_.eval(box.x.lo) == 0;
    // A real generator gets a degenerate segment box: the proper box holds
    // exactly one root and y covers 0, so its x-range isolates the real root.
    if (f->real_) f->box_ = Box{box.x, {Rational(0), Rational(0)}};
  }
  return f;
}

FieldPtr NumberField::from_root(const QPoly& min_poly, int root_index) {
  auto boxes = isolate_complex_roots(min_poly);
  check_internal(root_index >= 0 && root_index < static_cast<int>(boxes.size()),
                 "root index out of range");
  return create(min_poly, boxes[root_index]);
}

Box NumberField::box() const {
  std::lock_guard<std::mutex> lock(mu_);
  return box_;
}

void NumberField::refine() const {
  std::lock_guard<std::mutex> lock(mu_);
  box_ = refine_box(minpoly_, box_);
}

const std::vector<Box>& NumberField::all_root_boxes() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!roots_) roots_ = isolate_complex_roots(minpoly_);
  return *roots_;
}

int NumberField::distinguished_root_index() const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (root_index_) return *root_index_;
  }
  const auto& roots = all_root_boxes();
  // Shrink our box until it is disjoint from all but one canonical root box.
  Box mine = box();
  for (int iter = 0; iter < 256; ++iter) {
    int candidate = -1;
    int overlaps = 0;
    for (size_t i = 0; i < roots.size(); ++i) {
      if (!box_disjoint(mine, roots[i])) {
        ++overlaps;
        candidate = static_cast<int>(i);
      }
    }
    check_internal(overlaps >= 1, "distinguished root escaped all canonical boxes");
    if (overlaps == 1) {
      std::lock_guard<std::mutex> lock(mu_);
      root_index_ = candidate;
      return candidate;
    }
    refine();
    mine = box();
  }
  throw internal_error("could not identify distinguished root index");
}

} // namespace solvshadow
