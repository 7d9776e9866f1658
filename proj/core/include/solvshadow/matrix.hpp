#ifndef SOLVSHADOW_MATRIX_HPP
#define SOLVSHADOW_MATRIX_HPP

#include <optional>
#include <vector>

#include "solvshadow/fpoly.hpp"
#include "solvshadow/scalar.hpp"

namespace solvshadow {

using Vec = std::vector<Scalar>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Scalar& c);
bool vec_is_zero(const Vec& a);

/// Dense matrix of exact scalars over a common field.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows);
  static Matrix from_columns(const std::vector<Vec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Scalar& operator()(int i, int j) const { return a_[i * cols_ + j]; }
  Scalar& operator()(int i, int j) { return a_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& c) const;
  Matrix operator-() const;
  bool operator==(const Matrix& o) const;

  Vec apply(const Vec& v) const;  // matrix * column vector
  Matrix transpose() const;
  Scalar trace() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Vec column(int j) const;
  Vec row(int i) const;
  void set_column(int j, const Vec& v);

  FieldPtr field() const;

private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

Matrix map_matrix(const Matrix& m, const FieldHom& hom);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix mat_pow(const Matrix& m, int k);

/// Reduced row echelon form with the deterministic pivot convention
/// (leftmost column, first nonzero row); returns pivot columns.
Matrix rref(Matrix m, std::vector<int>* pivot_cols = nullptr);

int rank(const Matrix& m);

/// Basis of the null space; deterministic: reduced echelon pivots, free
/// columns ascending, each vector scaled so its first nonzero entry is 1.
std::vector<Vec> kernel_basis(const Matrix& m);

/// One solution of A x = b, if consistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

std::optional<Matrix> inverse(const Matrix& m);
Scalar det(const Matrix& m);

/// Characteristic polynomial (monic), Faddeev-LeVerrier.
FPoly char_poly(const Matrix& m);

/// Minimal polynomial (monic); divides char_poly (verified).
FPoly min_poly(const Matrix& m);

/// Evaluate a polynomial at a matrix.
Matrix eval_poly_at(const FPoly& p, const Matrix& m);

/// Entries all rational-valued?  Then the rational retraction.
std::optional<Matrix> retract_matrix_rational(const Matrix& m);

/// Tries to re-express a family of matrices over the smallest field generated
/// by one of their entries (or Q); falls back to the original field.
struct MatrixDescent {
  FieldPtr field;  // null for Q
  std::vector<Matrix> mats;
};
MatrixDescent descend_matrices(const std::vector<Matrix>& ms);

} // namespace solvshadow

#endif
