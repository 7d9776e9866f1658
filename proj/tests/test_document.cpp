#include <doctest.h>

#include "solvshadow/catalog.hpp"
#include "solvshadow/document.hpp"
#include "solvshadow/report.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;

namespace {

const char* kE2Doc = R"({
  "name": "e2tilde",
  "dim": 3,
  "basis": ["T", "X", "Y"],
  "brackets": [
    {"i": 0, "j": 1, "c": {"2": "1"}},
    {"i": 0, "j": 2, "c": {"1": "-1"}}
  ]
})";

} // namespace

TEST_CASE("parsing a catalog document") {
  AlgebraDocument doc = parse_algebra_document(kE2Doc);
  CHECK(doc.dim == 3);
  CHECK(doc.basis[0] == "T");
  ParsedAlgebra pa = realize(doc);
  CHECK(pa.algebra == make_e2tilde());
  CHECK(is_unimodular(pa.algebra));
}

TEST_CASE("a trace-balanced bracket list parses as unimodular") {
  const char* doc = R"({
    "dim": 3,
    "basis": ["X", "Y", "Z"],
    "brackets": [
      {"i": 0, "j": 1, "c": {"1": "1"}},
      {"i": 0, "j": 2, "c": {"2": "-1"}}
    ]
  })";
  ParsedAlgebra pa = realize(parse_algebra_document(doc));
  CHECK(is_unimodular(pa.algebra));
  CHECK(is_completely_solvable(pa.algebra));
}

TEST_CASE("serialize then parse is the identity on canonical documents") {
  AlgebraDocument doc = document_from_algebra(make_oscillator(), "oscillator");
  std::string text = serialize_algebra_document(doc);
  AlgebraDocument back = parse_algebra_document(text);
  CHECK(serialize_algebra_document(back) == text);
  CHECK(realize(back).algebra == make_oscillator());
}

TEST_CASE("serialization is canonicalizing and idempotent") {
  // Scrambled entry order and denormalized rationals.
  const char* messy = R"({
    "name": "x", "dim": 2, "basis": ["X", "Y"],
    "brackets": [ {"i": 0, "j": 1, "c": {"1": "2/4"}} ]
  })";
  AlgebraDocument doc = parse_algebra_document(messy);
  std::string canon = serialize_algebra_document(doc);
  CHECK(canon.find("1/2") != std::string::npos);
  CHECK(serialize_algebra_document(parse_algebra_document(canon)) == canon);
}

TEST_CASE("format violations are rejected with SyntaxError") {
  CHECK_THROWS_AS(parse_algebra_document("not json"), Error);
  // Explicit antisymmetric duplicates (i > j) are rejected.
  CHECK_THROWS_AS(parse_algebra_document(R"({
    "dim": 2,
    "brackets": [ {"i": 1, "j": 0, "c": {"0": "1"}} ]
  })"),
                  Error);
  CHECK_THROWS_AS(parse_algebra_document(R"({
    "dim": 2,
    "brackets": [ {"i": 0, "j": 1, "c": {"0": "1"}},
                  {"i": 0, "j": 1, "c": {"0": "1"}} ]
  })"),
                  Error);
  CHECK_THROWS_AS(parse_algebra_document(R"({"dim": 2, "brackets": [{"i": 0, "j": 5, "c": {}}]})"),
                  Error);
  CHECK_THROWS_AS(parse_algebra_document(R"({"dim": 1, "brackets": [], "basis": ["a", "b"]})"),
                  Error);
  // Malformed rationals.
  CHECK_THROWS_AS(parse_algebra_document(R"({
    "dim": 2, "brackets": [ {"i": 0, "j": 1, "c": {"0": "1.5"}} ]
  })"),
                  Error);
}

TEST_CASE("Jacobi violations are reported with the offending triple") {
  const char* bad = R"({
    "dim": 3,
    "basis": ["X", "Y", "Z"],
    "brackets": [
      {"i": 0, "j": 1, "c": {"2": "1"}},
      {"i": 0, "j": 2, "c": {"1": "1"}},
      {"i": 1, "j": 2, "c": {"1": "1"}}
    ]
  })";
  AlgebraDocument doc = parse_algebra_document(bad);
  CHECK_THROWS_WITH_AS(realize(doc), doctest::Contains("Jacobi"), Error);
}

TEST_CASE("inner product validation errors") {
  const char* nonsym = R"({
    "dim": 2, "brackets": [],
    "inner_product": [["1", "2"], ["0", "1"]]
  })";
  CHECK_THROWS_AS(realize(parse_algebra_document(nonsym)), Error);
  const char* nondef = R"({
    "dim": 2, "brackets": [],
    "inner_product": [["0", "0"], ["0", "1"]]
  })";
  CHECK_THROWS_AS(realize(parse_algebra_document(nondef)), Error);
}

TEST_CASE("modification documents round-trip") {
  ModificationDocument doc;
  doc.name = "r3_rotation";
  doc.base_dim = 3;
  Matrix j(3, 3);
  j(0, 1) = Scalar(Rational(-1));
  j(1, 0) = Scalar(Rational(1));
  doc.torus.push_back(j);
  doc.phi = Matrix(1, 3);
  doc.phi(0, 2) = Scalar(Rational(1));
  std::string text = serialize_modification_document(doc);
  ModificationDocument back = parse_modification_document(text);
  CHECK(back.base_dim == 3);
  REQUIRE(back.torus.size() == 1);
  CHECK(back.torus[0] == j);
  CHECK(back.phi == doc.phi);
  CHECK(serialize_modification_document(back) == text);
}

TEST_CASE("digests are stable") {
  CHECK(digest_hex("abc") == digest_hex("abc"));
  CHECK(digest_hex("abc") != digest_hex("abd"));
  CHECK(digest_hex("").size() == 16);
}

TEST_CASE("analyze and shadow runs produce deterministic machine reports") {
  AlgebraDocument doc = parse_algebra_document(kE2Doc);
  RunOptions opt;
  Report a = run_analyze(doc, opt);
  Report b = run_analyze(doc, opt);
  CHECK(render_report(a, OutputMode::Machine) == render_report(b, OutputMode::Machine));
  CHECK(a.ok());
  Report s1 = run_shadow(doc, opt);
  Report s2 = run_shadow(doc, opt);
  CHECK(render_report(s1, OutputMode::Machine) == render_report(s2, OutputMode::Machine));
  CHECK(s1.ok());
}

TEST_CASE("catalog filter semantics") {
  RunOptions opt;
  Report one = run_catalog("heisenberg", opt);
  int batteries = 0;
  for (const auto& c : one.checks)
    if (c.name.find("a_shadow_is_ideal") != std::string::npos) ++batteries;
  CHECK(batteries == 1);
  Report none = run_catalog("no_such_algebra", opt);
  CHECK(none.ok());
  CHECK(!none.warnings.empty());
}
