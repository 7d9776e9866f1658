#ifndef SOLVSHADOW_JORDAN_HPP
#define SOLVSHADOW_JORDAN_HPP

#include "solvshadow/matrix.hpp"

namespace solvshadow {

/// Additive Jordan-Chevalley data of a square matrix A: A = S + N with S
/// semisimple (squarefree minimal polynomial), N nilpotent, S N = N S, and S
/// a polynomial in A (the witness polynomial is recorded).  For matrices over
/// real-embedded fields the semisimple part further splits as
/// S = S_re + S_im with commuting parts of real resp. purely imaginary
/// spectrum (possibly over an extension field).
struct JordanParts {
  Matrix original;
  Matrix semisimple;
  Matrix nilpotent;
  FPoly semisimple_witness;  // S = witness(A)
  Matrix real_part;          // filled by full_decomposition
  Matrix imag_part;
};

/// Newton iteration on the squarefree part of the minimal polynomial; always
/// exists in characteristic zero.  All postconditions are verified.
JordanParts jordan_chevalley(const Matrix& m);

/// Splitting of a semisimple matrix over a real-embedded field into a part
/// with real spectrum and a part with purely imaginary spectrum.  Scalars are
/// extended automatically when the splitting needs a larger field; `embed`
/// maps the input field into the field of the parts (meaningful only when the
/// input had a non-trivial field).  Rejects non-semisimple input.
struct SplitParts {
  Matrix real_part;
  Matrix imag_part;
  FieldHom embed;
};
SplitParts split_real_imag(const Matrix& s);

/// jordan_chevalley followed by split_real_imag of the semisimple part.
JordanParts full_decomposition(const Matrix& m);

/// True iff the squarefree part of the minimal polynomial has as many
/// distinct real roots as its degree.
bool all_eigenvalues_real(const Matrix& m);

/// True iff every eigenvalue is purely imaginary (zero real part).
bool has_purely_imaginary_spectrum(const Matrix& m);

/// Real/imaginary coefficient split of p(iy) for p over a real field:
/// p(iy) = P(y) + i Q(y).
std::pair<FPoly, FPoly> imaginary_axis_split(const FPoly& p);

} // namespace solvshadow

#endif
