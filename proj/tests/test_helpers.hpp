#ifndef SOLVSHADOW_TEST_HELPERS_HPP
#define SOLVSHADOW_TEST_HELPERS_HPP

#include "solvshadow/matrix.hpp"

namespace solvshadow::testing {

inline Matrix mat(std::vector<std::vector<long>> rows) {
  std::vector<Vec> r;
  for (auto& row : rows) {
    Vec v;
    for (long x : row) v.push_back(Scalar(Rational(x)));
    r.push_back(v);
  }
  return Matrix::from_rows(r);
}

inline Vec coef(std::vector<long> cs) {
  Vec v;
  for (long c : cs) v.push_back(Scalar(Rational(c)));
  return v;
}

inline QPoly qp(std::vector<long> cs) {
  std::vector<Rational> r;
  for (long c : cs) r.push_back(Rational(c));
  return QPoly(std::move(r));
}

} // namespace solvshadow::testing

#endif
