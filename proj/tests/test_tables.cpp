#include <doctest.h>

#include "swsym/swmhd.hpp"
#include "swsym/tables.hpp"

using namespace swsym;

namespace {

const std::string kDataDir = SWSYM_DATA_DIR;

BasisAlgebra make_algebra(SymmetryCaseId id) {
  Expr f0 = Expr::symbol("f0");
  auto c = symmetry_case(id, f0);
  return BasisAlgebra(c.generators, f0, c.algebra_label);
}

TableDocument load(const std::string& name) {
  return TableDocument::load(kDataDir + "/tables/" + name);
}

}  // namespace

TEST_CASE("document parsing") {
  auto doc = TableDocument::parse(
      "# table: demo\n"
      "# kind: commutator\n"
      "# case: coriolis\n"
      "# basis: X1 Z2 Z3\n"
      "X1\tZ2\tf0*Z3\n"
      "X1\tZ3\t-f0*Z2\n"
      "#typo:\tX1\tZ3\tsuspect\n",
      "demo");
  CHECK(doc.id == "demo");
  CHECK(doc.kind == TableDocument::Kind::Commutator);
  CHECK(doc.basis_names.size() == 3);
  REQUIRE(doc.cells.size() == 2);
  CHECK(!doc.cells[0].annotated);
  CHECK(doc.cells[1].annotated);
  CHECK(doc.cells[1].note == "suspect");

  CHECK_THROWS_AS(TableDocument::parse("X1\tonly-two-fields\n", "bad"), TableFormatError);
}

TEST_CASE("empty expected table gives an empty report") {
  auto alg = make_algebra(SymmetryCaseId::Full);
  auto doc = TableDocument::parse("# table: empty\n# kind: commutator\n", "empty");
  auto rep = verify_commutator_table(alg, doc);
  CHECK(rep.cells.empty());
  CHECK(rep.ok());
}

TEST_CASE("commutator tables reproduce the shipped documents cell for cell") {
  struct Row {
    SymmetryCaseId id;
    const char* file;
    int cells;
    int annotated;
  };
  for (const auto& row : {Row{SymmetryCaseId::Free, "table1_commutators_free.tsv", 100, 0},
                          Row{SymmetryCaseId::Gravity, "table3_commutators_gravity.tsv", 64, 0},
                          Row{SymmetryCaseId::Coriolis, "table5_commutators_coriolis.tsv", 49, 0},
                          Row{SymmetryCaseId::Full, "tablefull_commutators.tsv", 36, 2}}) {
    auto alg = make_algebra(row.id);
    auto rep = verify_commutator_table(alg, load(row.file));
    CHECK(static_cast<int>(rep.cells.size()) == row.cells);
    CHECK(rep.mismatches == 0);
    CHECK(rep.annotated == row.annotated);
    CHECK(rep.matches == row.cells - row.annotated);
  }
}

TEST_CASE("adjoint tables reproduce the shipped documents at eps in {0.1, 0.7}") {
  struct Row {
    SymmetryCaseId id;
    const char* file;
    int annotated;
  };
  for (const auto& row : {Row{SymmetryCaseId::Free, "table2_adjoint_free_a.tsv", 1},
                          Row{SymmetryCaseId::Free, "table2b_adjoint_free_b.tsv", 0},
                          Row{SymmetryCaseId::Gravity, "table4_adjoint_gravity.tsv", 2},
                          Row{SymmetryCaseId::Coriolis, "table6_adjoint_coriolis_a.tsv", 7},
                          Row{SymmetryCaseId::Coriolis, "table6b_adjoint_coriolis_b.tsv", 1},
                          Row{SymmetryCaseId::Full, "tablefull_adjoint.tsv", 3}}) {
    auto alg = make_algebra(row.id);
    auto rep = verify_adjoint_table(alg, load(row.file), {0.1, 0.7}, 1.0, 1e-10);
    CHECK(rep.mismatches == 0);
    CHECK(rep.annotated == row.annotated);
  }
}

TEST_CASE("annotated cells carry the recomputed value") {
  auto alg = make_algebra(SymmetryCaseId::Free);
  auto rep = verify_adjoint_table(alg, load("table2_adjoint_free_a.tsv"), {0.1}, 1.0, 1e-10);
  bool found = false;
  for (const auto& c : rep.cells) {
    if (c.row == "X1" && c.col == "X5") {
      found = true;
      CHECK(c.status == CellStatus::AnnotatedTypo);
      CHECK(c.expected == "X5 -2*X2");
      // the recomputed action at eps = 0.1 is X5 - 0.1 X2
      CHECK(c.computed.find("-0.1*X2") != std::string::npos);
      CHECK(c.computed.find("1*X5") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("a doctored cell is reported as a mismatch") {
  auto alg = make_algebra(SymmetryCaseId::Full);
  auto doc = TableDocument::parse(
      "# table: doctored\n# kind: commutator\n# case: full\n"
      "X1\tZ2\t2*f0*Z3\n",
      "doctored");
  auto rep = verify_commutator_table(alg, doc);
  CHECK(rep.mismatches == 1);
  CHECK(!rep.ok());
  CHECK(rep.cells[0].computed == "f0*Z3");

  // markdown and json renderers mention the offending cell
  CHECK(rep.to_markdown().find("MISMATCH") != std::string::npos);
  CHECK(rep.to_json().find("mismatch") != std::string::npos);
}
