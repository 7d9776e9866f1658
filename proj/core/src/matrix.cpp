#include "solvshadow/matrix.hpp"

#include <algorithm>

#include "solvshadow/errors.hpp"

namespace solvshadow {

Vec vec_add(const Vec& a, const Vec& b) {
  check_internal(a.size() == b.size(), "vector size mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  check_internal(a.size() == b.size(), "vector size mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Vec& a, const Scalar& c) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(Rational(1));
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    check_internal(static_cast<int>(rows[i].size()) == c, "ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols) {
  int c = static_cast<int>(cols.size());
  int r = c == 0 ? 0 : static_cast<int>(cols[0].size());
  Matrix m(r, c);
  for (int j = 0; j < c; ++j) {
    check_internal(static_cast<int>(cols[j].size()) == r, "ragged columns");
    for (int i = 0; i < r; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_internal(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_internal(cols_ == o.rows_, "matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + aik * o(k, j);
    }
  return r;
}

Matrix Matrix::operator*(const Scalar& c) const {
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

Vec Matrix::apply(const Vec& v) const {
  check_internal(static_cast<int>(v.size()) == cols_, "apply: dimension mismatch");
  Vec r(rows_);
  for (int i = 0; i < rows_; ++i) {
    Scalar acc;
    for (int j = 0; j < cols_; ++j) acc = acc + (*this)(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Scalar Matrix::trace() const {
  check_internal(is_square(), "trace of non-square matrix");
  Scalar acc;
  for (int i = 0; i < rows_; ++i) acc = acc + (*this)(i, i);
  return acc;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Vec Matrix::column(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Matrix::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void Matrix::set_column(int j, const Vec& v) {
  check_internal(static_cast<int>(v.size()) == rows_, "set_column size mismatch");
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

FieldPtr Matrix::field() const {
  for (const auto& x : a_)
    if (x.field()) return x.field();
  return nullptr;
}

Matrix map_matrix(const Matrix& m, const FieldHom& hom) {
  Matrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = hom.apply(m(i, j));
  return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  check_internal(a.rows() == b.rows(), "hstack row mismatch");
  Matrix r(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  check_internal(a.cols() == b.cols(), "vstack column mismatch");
  Matrix r(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

Matrix mat_pow(const Matrix& m, int k) {
  check_internal(m.is_square() && k >= 0, "mat_pow preconditions");
  Matrix acc = Matrix::identity(m.rows());
  for (int i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

Matrix rref(Matrix m, std::vector<int>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Scalar inv = m(r, col).inverse();
    for (int j = col; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++r;
  }
  return m;
}

int rank(const Matrix& m) {
  std::vector<int> pivots;
  rref(m, &pivots);
  return static_cast<int>(pivots.size());
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  std::vector<int> pivots;
  Matrix e = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = Scalar(Rational(1));
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e(static_cast<int>(r), free);
    // Normalize: first nonzero entry becomes 1.
    for (const auto& x : v) {
      if (!x.is_zero()) {
        Scalar inv = x.inverse();
        for (auto& y : v) y = y * inv;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  check_internal(static_cast<int>(b.size()) == a.rows(), "solve: dimension mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<int> pivots;
  Matrix e = rref(std::move(aug), &pivots);
  for (int c : pivots)
    if (c == a.cols()) return std::nullopt;  // inconsistent
  Vec x(a.cols());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = e(static_cast<int>(r), a.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  check_internal(m.is_square(), "inverse of non-square matrix");
  int n = m.rows();
  Matrix aug = hstack(m, Matrix::identity(n));
  std::vector<int> pivots;
  Matrix e = rref(std::move(aug), &pivots);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e(i, n + j);
  return inv;
}

Scalar det(const Matrix& m) {
  check_internal(m.is_square(), "det of non-square matrix");
  Matrix a = m;
  int n = a.rows();
  Scalar d(Rational(1));
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar(Rational(0));
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      d = -d;
    }
    d = d * a(col, col);
    Scalar inv = a(col, col).inverse();
    for (int i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      Scalar f = a(i, col) * inv;
      for (int j = col; j < n; ++j) a(i, j) = a(i, j) - f * a(col, j);
    }
  }
  return d;
}

FPoly char_poly(const Matrix& m) {
  check_internal(m.is_square(), "char_poly of non-square matrix");
  int n = m.rows();
  // Faddeev-LeVerrier: M_1 = A, c_k from traces; exact in characteristic 0.
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(Rational(1));
  Matrix mk = m;
  for (int k = 1; k <= n; ++k) {
    Scalar ck = mk.trace() * Scalar(Rational(-1, static_cast<long>(k)));
    c[n - k] = ck;
    if (k < n) {
      Matrix adj = mk;
      for (int i = 0; i < n; ++i) adj(i, i) = adj(i, i) + ck;
      mk = m * adj;
    }
  }
  return FPoly(std::move(c));
}

FPoly min_poly(const Matrix& m) {
  check_internal(m.is_square(), "min_poly of non-square matrix");
  int n = m.rows();
  int dim = n * n;
  std::vector<std::vector<Scalar>> rows;
  std::vector<std::vector<Scalar>> combos;
  std::vector<int> pivots;
  Matrix pw = Matrix::identity(n);
  for (int k = 0;; ++k) {
    check_internal(k <= n, "minimal polynomial degree exceeded dimension");
    std::vector<Scalar> v(dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i * n + j] = pw(i, j);
    std::vector<Scalar> combo(k + 1);
    combo[k] = Scalar(Rational(1));
    for (size_t r = 0; r < rows.size(); ++r) {
      Scalar factor = v[pivots[r]];
      if (factor.is_zero()) continue;
      for (int j = 0; j < dim; ++j) v[j] = v[j] - factor * rows[r][j];
      for (size_t j = 0; j < combos[r].size(); ++j) combo[j] = combo[j] - factor * combos[r][j];
    }
    int piv = -1;
    for (int j = 0; j < dim; ++j)
      if (!v[j].is_zero()) {
        piv = j;
        break;
      }
    if (piv < 0) {
      FPoly mp = FPoly(std::move(combo)).monic();
      check_internal((char_poly(m) % mp).is_zero(), "min_poly does not divide char_poly");
      return mp;
    }
    Scalar inv = v[piv].inverse();
    for (auto& x : v) x = x * inv;
    for (auto& x : combo) x = x * inv;
    combo.resize(k + 1);
    rows.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivots.push_back(piv);
    pw = pw * m;
  }
}

Matrix eval_poly_at(const FPoly& p, const Matrix& m) {
  check_internal(m.is_square(), "polynomial of non-square matrix");
  int n = m.rows();
  Matrix acc(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * m;
    if (!p[k].is_zero()) {
      for (int i = 0; i < n; ++i) acc(i, i) = acc(i, i) + p[k];
    }
  }
  return acc;
}

std::optional<Matrix> retract_matrix_rational(const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto q = retract_rational(m(i, j));
      if (!q) return std::nullopt;
      r(i, j) = Scalar(*q);
    }
  return r;
}

MatrixDescent descend_matrices(const std::vector<Matrix>& ms) {
  MatrixDescent out;
  out.mats = ms;
  out.field = nullptr;
  bool all_rational = true;
  FieldPtr cur;
  for (const auto& m : ms) {
    if (auto r = retract_matrix_rational(m)) continue;
    all_rational = false;
    if (!cur) cur = m.field();
  }
  if (all_rational) {
    for (auto& m : out.mats) m = *retract_matrix_rational(m);
    return out;
  }
  // Collect non-rational entries, highest minimal-polynomial degree first.
  std::vector<Scalar> entries;
  for (const auto& m : ms)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_rational_value()) entries.push_back(m(i, j));
  std::vector<std::pair<int, size_t>> order;
  for (size_t k = 0; k < entries.size(); ++k)
    order.push_back({minimal_polynomial(entries[k]).degree(), k});
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  check_internal(cur != nullptr, "descend: missing field");
  int cur_deg = cur->degree();
  for (const auto& [deg, k] : order) {
    if (deg >= cur_deg) break;  // no strict descent possible from this entry on? keep trying smaller
    const Scalar& alpha = entries[k];
    AlgebraicCanon canon = canonical_algebraic(alpha);
    if (canon.minpoly.degree() < 2) continue;
    // Columns: coordinates of alpha^t in the current field.
    Matrix basis(cur_deg, canon.minpoly.degree());
    Scalar pw(Rational(1));
    pw = promote(pw, cur);
    for (int t = 0; t < canon.minpoly.degree(); ++t) {
      for (int i = 0; i < cur_deg; ++i) basis(i, t) = Scalar(pw.coeffs()[i]);
      pw = pw * alpha;
    }
    bool ok = true;
    FieldPtr nf = NumberField::from_root(canon.minpoly, canon.root_index);
    std::vector<Matrix> translated;
    for (const auto& m : ms) {
      Matrix t(m.rows(), m.cols());
      for (int i = 0; i < m.rows() && ok; ++i)
        for (int j = 0; j < m.cols() && ok; ++j) {
          Vec rhs(cur_deg);
          Scalar e = promote(m(i, j), cur);
          for (int r = 0; r < cur_deg; ++r) rhs[r] = Scalar(e.coeffs()[r]);
          auto x = solve(basis, rhs);
          if (!x) {
            ok = false;
            break;
          }
          std::vector<Rational> cc(canon.minpoly.degree());
          for (int r = 0; r < canon.minpoly.degree(); ++r) {
            auto q = retract_rational((*x)[r]);
            check_internal(q.has_value(), "descend: non-rational solution");
            cc[r] = *q;
          }
          t(i, j) = Scalar::of_field(nf, std::move(cc));
        }
      if (!ok) break;
      translated.push_back(std::move(t));
    }
    if (ok) {
      // Verify the translation preserves values: the new generator must equal
      // alpha as a complex number by construction of nf; trust the solve.
      out.field = nf;
      out.mats = std::move(translated);
      return out;
    }
  }
  out.field = cur;
  return out;
}

} // namespace solvshadow
