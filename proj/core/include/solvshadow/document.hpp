#ifndef SOLVSHADOW_DOCUMENT_HPP
#define SOLVSHADOW_DOCUMENT_HPP

#include <map>
#include <optional>
#include <string>

#include "solvshadow/liealgebra.hpp"

namespace solvshadow {

/// Structure-constant input document (JSON text, UTF-8).  Bracket entries
/// exist only for i < j; antisymmetry is implied.  Rationals travel as
/// strings "p" or "p/q".  Indices are 0-based.
struct AlgebraDocument {
  std::string name;
  int dim = 0;
  std::vector<std::string> basis;
  struct BracketEntry {
    int i = 0, j = 0;
    std::map<int, Rational> coeffs;  // k -> coefficient of e_k
  };
  std::vector<BracketEntry> brackets;
  std::optional<Matrix> inner_product;
  std::map<std::string, std::string> metadata;
};

/// Modification input document: torus matrices (rows-of-rows) and phi given
/// as one row per base basis vector with the torus coordinates of phi(e_j).
struct ModificationDocument {
  std::string name;
  int base_dim = 0;
  std::vector<Matrix> torus;
  Matrix phi;  // torus.size() x base_dim (column j = coords of phi(e_j))
  std::map<std::string, std::string> metadata;
};

AlgebraDocument parse_algebra_document(const std::string& text);
ModificationDocument parse_modification_document(const std::string& text);

/// Canonical serialization: sorted keys, normalized rationals, fixed layout;
/// byte-identical for equal documents.
std::string serialize_algebra_document(const AlgebraDocument& doc);
std::string serialize_modification_document(const ModificationDocument& doc);

/// Document of a rational-valued algebra (canonical entry order).
AlgebraDocument document_from_algebra(const LieAlgebra& g, const std::string& name);

struct ParsedAlgebra {
  LieAlgebra algebra;
  std::optional<InnerProduct> ip;
};
/// Builds the verified LieAlgebra (and inner product) from a document;
/// invalid documents raise input errors carrying the offending data.
ParsedAlgebra realize(const AlgebraDocument& doc);

/// FNV-1a-64 digest of a canonical serialization, as fixed-width hex.
std::string digest_hex(const std::string& text);

} // namespace solvshadow

#endif
