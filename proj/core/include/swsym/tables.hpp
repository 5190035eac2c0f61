#pragma once

#include <map>
#include <string>
#include <vector>

#include "swsym/liealg.hpp"

namespace swsym {

struct TableFormatError : ExprError {
  using ExprError::ExprError;
};

/// One expected cell, transcribed verbatim from the source table. Cells on
/// the typo-annotation list are compared informationally only.
struct TableCell {
  std::string row;
  std::string col;
  std::string raw;
  bool annotated = false;
  std::string note;
};

/// An expected-table document: UTF-8, one cell per line,
/// "row<TAB>col<TAB>coefficient-list", with "#typo:" annotation lines and
/// "# key: value" headers (table, kind, case, basis).
struct TableDocument {
  std::string id;
  enum class Kind { Commutator, Adjoint } kind = Kind::Commutator;
  std::string case_id;
  std::vector<std::string> basis_names;
  std::vector<TableCell> cells;

  static TableDocument load(const std::string& path);
  static TableDocument parse(const std::string& text, const std::string& origin);
};

enum class CellStatus { Match, Mismatch, AnnotatedTypo };

struct CellReport {
  std::string row;
  std::string col;
  std::string expected;
  std::string computed;
  CellStatus status;
  std::string note;
};

struct TableReport {
  std::string table_id;
  std::string case_id;
  std::vector<CellReport> cells;
  int matches = 0;
  int mismatches = 0;
  int annotated = 0;

  bool ok() const { return mismatches == 0; }
  std::string to_json() const;
  /// expected cells in the source layout with status markers, plus the
  /// recomputed value of every non-matching cell
  std::string to_markdown() const;
};

/// Cell-by-cell comparison of the algebra's structure table against an
/// expected commutator document. Coefficients compare exactly (rational,
/// or rational multiples of f0).
TableReport verify_commutator_table(const BasisAlgebra& alg, const TableDocument& doc);

/// Numeric comparison of Ad(exp(eps X_row)) X_col columns against the
/// expected cells, at each eps in eps_values with f0 bound, to tol per
/// coefficient.
TableReport verify_adjoint_table(const BasisAlgebra& alg, const TableDocument& doc,
                                 const std::vector<double>& eps_values, double f0_value,
                                 double tol);

/// Markdown rendering of the computed structure table in the paper's layout.
std::string commutator_table_markdown(const BasisAlgebra& alg);

}  // namespace swsym
