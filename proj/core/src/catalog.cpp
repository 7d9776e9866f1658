#include "solvshadow/catalog.hpp"

namespace solvshadow {

namespace {

Vec coef(std::vector<long> cs) {
  Vec v;
  v.reserve(cs.size());
  for (long c : cs) v.push_back(Scalar(Rational(c)));
  return v;
}

} // namespace

LieAlgebra make_abelian(int n) { return LieAlgebra::create(n, {}, {}); }

LieAlgebra make_heisenberg3() {
  return LieAlgebra::create(3, {"X", "Y", "Z"}, {{0, 1, coef({0, 0, 1})}});
}

LieAlgebra make_affine() {
  return LieAlgebra::create(2, {"X", "Y"}, {{0, 1, coef({0, 1})}});
}

LieAlgebra make_e2tilde() {
  return LieAlgebra::create(3, {"T", "X", "Y"},
                            {{0, 1, coef({0, 0, 1})}, {0, 2, coef({0, -1, 0})}});
}

LieAlgebra make_oscillator() {
  return LieAlgebra::create(4, {"T", "X", "Y", "Z"},
                            {{0, 1, coef({0, 0, 1, 0})},
                             {0, 2, coef({0, -1, 0, 0})},
                             {1, 2, coef({0, 0, 0, 1})}});
}

LieAlgebra make_blockdiag5() {
  // ad T = blockdiag([[1,-1],[1,1]], [[-1,-1],[1,-1]]) on the abelian ideal.
  return LieAlgebra::create(5, {"T", "A", "B", "C", "D"},
                            {{0, 1, coef({0, 1, 1, 0, 0})},
                             {0, 2, coef({0, -1, 1, 0, 0})},
                             {0, 3, coef({0, 0, 0, -1, 1})},
                             {0, 4, coef({0, 0, 0, -1, -1})}});
}

LieAlgebra make_split_diag3() {
  return LieAlgebra::create(3, {"T", "X", "Y"},
                            {{0, 1, coef({0, 1, 0})}, {0, 2, coef({0, 0, -1})}});
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    v.push_back({"abelian1", "abelian line", make_abelian(1)});
    v.push_back({"abelian2", "abelian plane", make_abelian(2)});
    v.push_back({"abelian3", "abelian 3-space", make_abelian(3)});
    v.push_back({"abelian4", "abelian 4-space", make_abelian(4)});
    v.push_back({"heisenberg3", "Heisenberg algebra [X,Y]=Z", make_heisenberg3()});
    v.push_back({"h3_plus_line", "Heisenberg algebra plus a central line",
                 direct_sum(make_heisenberg3(), make_abelian(1))});
    v.push_back({"affine", "affine line algebra [X,Y]=Y", make_affine()});
    v.push_back({"e2tilde", "universal cover of the plane motion algebra", make_e2tilde()});
    v.push_back({"oscillator", "oscillator algebra", make_oscillator()});
    v.push_back({"blockdiag5", "R x| R^4 with two rotation-scale blocks", make_blockdiag5()});
    v.push_back({"split_diag3", "completely solvable diag(1,-1) x| R^2", make_split_diag3()});
    v.push_back({"e2tilde_double", "direct sum of two motion algebras",
                 direct_sum(make_e2tilde(), make_e2tilde())});
    v.push_back({"osc_plus_affine", "oscillator plus the affine algebra",
                 direct_sum(make_oscillator(), make_affine())});
    return v;
  }();
  return entries;
}

std::vector<CatalogEntry> catalog_filtered(const std::string& filter) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog()) {
    if (filter.empty() || e.name.find(filter) != std::string::npos) out.push_back(e);
  }
  return out;
}

} // namespace solvshadow
