#include "solvshadow/document.hpp"

#include <sstream>

#include <json.hpp>

#include "solvshadow/errors.hpp"

namespace solvshadow {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("SyntaxError", e.what());
  }
}

Rational rational_field(const json& j, const std::string& where) {
  if (!j.is_string())
    throw input_error("SyntaxError", where + ": rationals must be strings like \"p/q\"");
  auto r = parse_rational(j.get<std::string>());
  if (!r) throw input_error("SyntaxError", where + ": malformed rational '" +
                                               j.get<std::string>() + "'");
  return *r;
}

Matrix matrix_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw input_error("SyntaxError", where + ": expected an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = -1;
  std::vector<Vec> data;
  for (const auto& row : j) {
    if (!row.is_array()) throw input_error("SyntaxError", where + ": rows must be arrays");
    if (cols < 0) cols = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != cols)
      throw input_error("SyntaxError", where + ": ragged matrix");
    Vec v;
    for (const auto& cell : row) v.push_back(Scalar(rational_field(cell, where)));
    data.push_back(std::move(v));
  }
  (void)rows;
  return Matrix::from_rows(data);
}

std::string rat_str(const Rational& q) { return to_string(q); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      auto q = retract_rational(m(i, j));
      check_internal(q.has_value(), "matrix serialization needs rational entries");
      row.push_back(rat_str(*q));
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace

AlgebraDocument parse_algebra_document(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw input_error("SyntaxError", "document must be a JSON object");
  AlgebraDocument doc;
  if (j.contains("name")) doc.name = j["name"].get<std::string>();
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw input_error("SyntaxError", "missing integer field 'dim'");
  doc.dim = j["dim"].get<int>();
  if (doc.dim < 0) throw input_error("SyntaxError", "'dim' must be nonnegative");
  if (j.contains("basis")) {
    for (const auto& b : j["basis"]) doc.basis.push_back(b.get<std::string>());
    if (static_cast<int>(doc.basis.size()) != doc.dim)
      throw input_error("SyntaxError", "'basis' length must equal 'dim'");
  }
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array())
      throw input_error("SyntaxError", "'brackets' must be an array");
    for (const auto& e : j["brackets"]) {
      AlgebraDocument::BracketEntry be;
      if (!e.contains("i") || !e.contains("j") || !e.contains("c"))
        throw input_error("SyntaxError", "bracket entries need fields i, j, c");
      be.i = e["i"].get<int>();
      be.j = e["j"].get<int>();
      if (be.i < 0 || be.j < 0 || be.i >= doc.dim || be.j >= doc.dim)
        throw input_error("SyntaxError", "bracket index out of range");
      if (be.i >= be.j)
        throw input_error("SyntaxError",
                          "bracket entries must have i < j (antisymmetry is implied)");
      for (auto it = e["c"].begin(); it != e["c"].end(); ++it) {
        int k = -1;
        try {
          k = std::stoi(it.key());
        } catch (...) {
          throw input_error("SyntaxError", "bracket coefficient keys must be indices");
        }
        if (k < 0 || k >= doc.dim)
          throw input_error("SyntaxError", "bracket coefficient index out of range");
        be.coeffs[k] = rational_field(it.value(), "brackets");
      }
      for (const auto& prev : doc.brackets)
        if (prev.i == be.i && prev.j == be.j)
          throw input_error("SyntaxError", "duplicate bracket entry");
      doc.brackets.push_back(std::move(be));
    }
  }
  if (j.contains("inner_product")) doc.inner_product = matrix_field(j["inner_product"], "inner_product");
  if (j.contains("metadata")) {
    for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it)
      doc.metadata[it.key()] = it.value().get<std::string>();
  }
  return doc;
}

ModificationDocument parse_modification_document(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw input_error("SyntaxError", "document must be a JSON object");
  ModificationDocument doc;
  if (j.contains("name")) doc.name = j["name"].get<std::string>();
  if (!j.contains("base_dim") || !j["base_dim"].is_number_integer())
    throw input_error("SyntaxError", "missing integer field 'base_dim'");
  doc.base_dim = j["base_dim"].get<int>();
  if (j.contains("torus")) {
    for (const auto& t : j["torus"]) {
      Matrix m = matrix_field(t, "torus");
      if (m.rows() != doc.base_dim || m.cols() != doc.base_dim)
        throw input_error("SyntaxError", "torus matrices must be base_dim x base_dim");
      doc.torus.push_back(std::move(m));
    }
  }
  int m = static_cast<int>(doc.torus.size());
  doc.phi = Matrix(m, doc.base_dim);
  if (j.contains("phi")) {
    const auto& pj = j["phi"];
    if (!pj.is_array() || static_cast<int>(pj.size()) != doc.base_dim)
      throw input_error("SyntaxError", "'phi' must have one row per base basis vector");
    for (int row = 0; row < doc.base_dim; ++row) {
      const auto& pr = pj[row];
      if (!pr.is_array() || static_cast<int>(pr.size()) != m)
        throw input_error("SyntaxError", "'phi' rows must list torus coordinates");
      for (int a = 0; a < m; ++a)
        doc.phi(a, row) = Scalar(rational_field(pr[a], "phi"));
    }
  }
  if (j.contains("metadata")) {
    for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it)
      doc.metadata[it.key()] = it.value().get<std::string>();
  }
  return doc;
}

std::string serialize_algebra_document(const AlgebraDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["dim"] = doc.dim;
  json basis = json::array();
  for (const auto& b : doc.basis) basis.push_back(b);
  j["basis"] = basis;
  json brackets = json::array();
  // Canonical order: ascending (i, j).
  std::vector<AlgebraDocument::BracketEntry> sorted = doc.brackets;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (const auto& e : sorted) {
    json entry;
    entry["i"] = e.i;
    entry["j"] = e.j;
    json c;
    for (const auto& [k, v] : e.coeffs) {
      if (v == 0) continue;
      c[std::to_string(k)] = rat_str(v);
    }
    entry["c"] = c;
    brackets.push_back(entry);
  }
  j["brackets"] = brackets;
  if (doc.inner_product) j["inner_product"] = matrix_json(*doc.inner_product);
  if (!doc.metadata.empty()) {
    json md;
    for (const auto& [k, v] : doc.metadata) md[k] = v;
    j["metadata"] = md;
  }
  return j.dump(2) + "\n";
}

std::string serialize_modification_document(const ModificationDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["base_dim"] = doc.base_dim;
  json torus = json::array();
  for (const auto& t : doc.torus) torus.push_back(matrix_json(t));
  j["torus"] = torus;
  json phi = json::array();
  for (int row = 0; row < doc.base_dim; ++row) {
    json pr = json::array();
    for (int a = 0; a < static_cast<int>(doc.torus.size()); ++a) {
      auto q = retract_rational(doc.phi(a, row));
      check_internal(q.has_value(), "phi serialization needs rational entries");
      pr.push_back(rat_str(*q));
    }
    phi.push_back(pr);
  }
  j["phi"] = phi;
  if (!doc.metadata.empty()) {
    json md;
    for (const auto& [k, v] : doc.metadata) md[k] = v;
    j["metadata"] = md;
  }
  return j.dump(2) + "\n";
}

AlgebraDocument document_from_algebra(const LieAlgebra& g, const std::string& name) {
  AlgebraDocument doc;
  doc.name = name;
  doc.dim = g.dim();
  doc.basis = g.labels();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      AlgebraDocument::BracketEntry be;
      be.i = i;
      be.j = j;
      for (int k = 0; k < g.dim(); ++k) {
        const Scalar& c = g.c(i, j, k);
        if (c.is_zero()) continue;
        auto q = retract_rational(c);
        check_internal(q.has_value(), "document_from_algebra needs rational constants");
        be.coeffs[k] = *q;
      }
      if (!be.coeffs.empty()) doc.brackets.push_back(std::move(be));
    }
  return doc;
}

ParsedAlgebra realize(const AlgebraDocument& doc) {
  std::vector<std::tuple<int, int, Vec>> brackets;
  for (const auto& e : doc.brackets) {
    Vec v(doc.dim);
    for (const auto& [k, q] : e.coeffs) v[k] = Scalar(q);
    brackets.push_back({e.i, e.j, v});
  }
  ParsedAlgebra out;
  out.algebra = LieAlgebra::create(doc.dim, doc.basis, brackets);
  if (doc.inner_product) {
    if (doc.inner_product->rows() != doc.dim)
      throw input_error("SyntaxError", "inner product must be dim x dim");
    out.ip = InnerProduct::create(*doc.inner_product);
  }
  return out;
}

std::string digest_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int i = 15; i >= 0; --i) os << ((h >> (i * 4)) & 0xf);
  return os.str();
}

} // namespace solvshadow
