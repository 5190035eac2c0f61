#include "swsym/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace swsym {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// Coefficient grammar
//
// cell       := "0" | term (" " term)*
// term       := ["-"] factor ("*" factor)* "*" name | ["-"] name
// factor     := rational | "eps" | "f0" | "exp(" inner ")" | "sin(" inner ")"
//             | "cos(" inner ")"
// inner      := ["-"] factor ("*" factor)*      (no nested exp/sin/cos)
// ---------------------------------------------------------------------------

struct CoeffFactor {
  enum class Type { Rational, Eps, F0, Exp, Sin, Cos } type;
  Rational rat{1};          // Type::Rational
  double inner_scale = 1.0; // coefficient of eps (Exp) or of f0*eps (Sin/Cos)
};

struct ParsedTerm {
  std::string target;
  bool negated = false;
  std::vector<CoeffFactor> factors;

  double eval(double eps, double f0) const {
    double v = negated ? -1.0 : 1.0;
    for (const auto& f : factors) {
      switch (f.type) {
        case CoeffFactor::Type::Rational:
          v *= f.rat.to_double();
          break;
        case CoeffFactor::Type::Eps:
          v *= eps;
          break;
        case CoeffFactor::Type::F0:
          v *= f0;
          break;
        case CoeffFactor::Type::Exp:
          v *= std::exp(f.inner_scale * eps);
          break;
        case CoeffFactor::Type::Sin:
          v *= std::sin(f.inner_scale * f0 * eps);
          break;
        case CoeffFactor::Type::Cos:
          v *= std::cos(f.inner_scale * f0 * eps);
          break;
      }
    }
    return v;
  }

  /// value as alpha + beta * f0, for exact commutator-cell comparison;
  /// fails when the term involves eps/exp/sin/cos
  bool as_affine_f0(Rational& alpha, Rational& beta) const {
    Rational r(negated ? -1 : 1);
    int f0_power = 0;
    for (const auto& f : factors) {
      if (f.type == CoeffFactor::Type::Rational) {
        r = r * f.rat;
      } else if (f.type == CoeffFactor::Type::F0) {
        ++f0_power;
      } else {
        return false;
      }
    }
    if (f0_power > 1) return false;
    alpha = f0_power == 0 ? r : Rational(0);
    beta = f0_power == 1 ? r : Rational(0);
    return true;
  }
};

bool parse_rational(const std::string& s, Rational& out) {
  auto parts = split(s, '/');
  if (parts.size() > 2) return false;
  try {
    std::size_t pos = 0;
    long long num = std::stoll(parts[0], &pos);
    if (pos != parts[0].size()) return false;
    long long den = 1;
    if (parts.size() == 2) {
      den = std::stoll(parts[1], &pos);
      if (pos != parts[1].size() || den == 0) return false;
    }
    out = Rational(num, den);
    return true;
  } catch (...) {
    return false;
  }
}

double parse_inner_product(const std::string& s, bool with_f0, const std::string& ctx) {
  // expected shapes: "eps", "-eps", "k*eps", "f0*eps", "-f0*eps", "k*f0*eps"
  std::string body = s;
  double sign = 1.0;
  if (!body.empty() && body.front() == '-') {
    sign = -1.0;
    body = body.substr(1);
  }
  double scale = sign;
  bool saw_eps = false, saw_f0 = false;
  for (const auto& tok : split(body, '*')) {
    if (tok == "eps") {
      saw_eps = true;
    } else if (tok == "f0") {
      saw_f0 = true;
    } else {
      Rational r;
      if (!parse_rational(tok, r)) throw TableFormatError("bad argument '" + s + "' in " + ctx);
      scale *= r.to_double();
    }
  }
  if (!saw_eps) throw TableFormatError("argument must contain eps: '" + s + "' in " + ctx);
  if (with_f0 != saw_f0) {
    throw TableFormatError("argument f0 usage mismatch: '" + s + "' in " + ctx);
  }
  return scale;
}

CoeffFactor parse_factor(const std::string& tok, const std::string& ctx) {
  CoeffFactor f;
  if (tok == "eps") {
    f.type = CoeffFactor::Type::Eps;
    return f;
  }
  if (tok == "f0") {
    f.type = CoeffFactor::Type::F0;
    return f;
  }
  auto func = [&](const char* name, CoeffFactor::Type type, bool with_f0) -> bool {
    std::string prefix = std::string(name) + "(";
    if (tok.rfind(prefix, 0) == 0 && tok.back() == ')') {
      f.type = type;
      f.inner_scale = parse_inner_product(tok.substr(prefix.size(), tok.size() - prefix.size() - 1),
                                          with_f0, ctx);
      return true;
    }
    return false;
  };
  if (func("exp", CoeffFactor::Type::Exp, false)) return f;
  if (func("sin", CoeffFactor::Type::Sin, true)) return f;
  if (func("cos", CoeffFactor::Type::Cos, true)) return f;
  Rational r;
  if (parse_rational(tok, r)) {
    f.type = CoeffFactor::Type::Rational;
    f.rat = r;
    return f;
  }
  throw TableFormatError("unrecognized coefficient factor '" + tok + "' in " + ctx);
}

std::vector<ParsedTerm> parse_cell(const std::string& raw, const std::string& ctx) {
  std::vector<ParsedTerm> terms;
  std::string cell = trim(raw);
  if (cell == "0") return terms;
  std::istringstream in(cell);
  std::string word;
  while (in >> word) {
    ParsedTerm term;
    if (!word.empty() && word.front() == '-') {
      term.negated = true;
      word = word.substr(1);
    }
    auto parts = split(word, '*');
    // re-join function arguments that themselves contain '*'
    std::vector<std::string> toks;
    std::string pending;
    for (const auto& p : parts) {
      if (!pending.empty()) {
        pending += "*" + p;
        if (p.find(')') != std::string::npos) {
          toks.push_back(pending);
          pending.clear();
        }
        continue;
      }
      if (p.find('(') != std::string::npos && p.find(')') == std::string::npos) {
        pending = p;
        continue;
      }
      toks.push_back(p);
    }
    if (!pending.empty()) throw TableFormatError("unbalanced parentheses in " + ctx);
    if (toks.empty()) throw TableFormatError("empty term in " + ctx);
    term.target = toks.back();
    toks.pop_back();
    for (const auto& t : toks) term.factors.push_back(parse_factor(t, ctx));
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace

// ---------------------------------------------------------------------------
// Document loading
// ---------------------------------------------------------------------------

TableDocument TableDocument::parse(const std::string& text, const std::string& origin) {
  TableDocument doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::pair<std::string, std::string>, std::string> typo_notes;
  while (std::getline(in, line)) {
    ++lineno;
    std::string ctx = origin + ":" + std::to_string(lineno);
    if (trim(line).empty()) continue;
    if (line.rfind("#typo:", 0) == 0) {
      auto fields = split(line, '\t');
      if (fields.size() < 3) throw TableFormatError("bad #typo line at " + ctx);
      std::string note = fields.size() >= 4 ? fields[3] : "";
      typo_notes[{fields[1], fields[2]}] = note.empty() ? "annotated typo" : note;
      continue;
    }
    if (line.front() == '#') {
      auto header = trim(line.substr(1));
      auto colon = header.find(':');
      if (colon == std::string::npos) continue;
      std::string key = trim(header.substr(0, colon));
      std::string value = trim(header.substr(colon + 1));
      if (key == "table") {
        doc.id = value;
      } else if (key == "kind") {
        if (value == "commutator") {
          doc.kind = Kind::Commutator;
        } else if (value == "adjoint") {
          doc.kind = Kind::Adjoint;
        } else {
          throw TableFormatError("unknown table kind '" + value + "' at " + ctx);
        }
      } else if (key == "case") {
        doc.case_id = value;
      } else if (key == "basis") {
        std::istringstream bs(value);
        std::string name;
        while (bs >> name) doc.basis_names.push_back(name);
      }
      continue;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 3) throw TableFormatError("expected row<TAB>col<TAB>cell at " + ctx);
    TableCell cell;
    cell.row = trim(fields[0]);
    cell.col = trim(fields[1]);
    cell.raw = trim(fields[2]);
    doc.cells.push_back(std::move(cell));
  }
  for (auto& cell : doc.cells) {
    auto it = typo_notes.find({cell.row, cell.col});
    if (it != typo_notes.end()) {
      cell.annotated = true;
      cell.note = it->second;
    }
  }
  return doc;
}

TableDocument TableDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableFormatError("cannot open table document: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

namespace {

bool affine_f0_of_expr(const Expr& e, Rational& alpha, Rational& beta) {
  alpha = Rational(0);
  beta = Rational(0);
  std::function<bool(const Expr&, Rational)> absorb = [&](const Expr& term, Rational scale) {
    switch (term.kind()) {
      case Expr::Kind::Rational:
        alpha = alpha + scale * term.rational_value();
        return true;
      case Expr::Kind::Symbol:
        if (term.symbol_name() != "f0") return false;
        beta = beta + scale;
        return true;
      case Expr::Kind::Product: {
        Rational r = scale;
        int f0_power = 0;
        for (const auto& f : term.operands()) {
          if (f.kind() == Expr::Kind::Rational) {
            r = r * f.rational_value();
          } else if (f.kind() == Expr::Kind::Symbol && f.symbol_name() == "f0") {
            ++f0_power;
          } else {
            return false;
          }
        }
        if (f0_power == 0) {
          alpha = alpha + r;
        } else if (f0_power == 1) {
          beta = beta + r;
        } else {
          return false;
        }
        return true;
      }
      case Expr::Kind::Sum: {
        for (const auto& t : term.operands()) {
          if (!absorb(t, scale)) return false;
        }
        return true;
      }
      default:
        return false;
    }
  };
  return absorb(e, Rational(1));
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

TableReport verify_commutator_table(const BasisAlgebra& alg, const TableDocument& doc) {
  if (doc.kind != TableDocument::Kind::Commutator) {
    throw TableFormatError("document " + doc.id + " is not a commutator table");
  }
  TableReport report;
  report.table_id = doc.id;
  report.case_id = doc.case_id;
  std::vector<std::string> names;
  for (int i = 0; i < alg.dim(); ++i) names.push_back(alg.name(i));

  for (const auto& cell : doc.cells) {
    CellReport cr;
    cr.row = cell.row;
    cr.col = cell.col;
    cr.expected = cell.raw;
    cr.note = cell.note;
    int i = alg.index_of(cell.row);
    int j = alg.index_of(cell.col);
    if (i < 0 || j < 0) throw TableFormatError("unknown generator in cell " + cell.row + "," + cell.col);
    const StructureCell& computed = alg.bracket(i, j);
    cr.computed = structure_cell_str(computed, names);

    bool match = false;
    if (!cell.annotated) {
      // exact symbolic comparison, coefficients affine in f0
      std::map<int, std::pair<Rational, Rational>> want;
      bool parseable = true;
      try {
        for (const auto& term : parse_cell(cell.raw, doc.id)) {
          int k = alg.index_of(term.target);
          Rational alpha, beta;
          if (k < 0 || !term.as_affine_f0(alpha, beta)) {
            parseable = false;
            break;
          }
          auto& acc = want[k];
          acc.first = acc.first + alpha;
          acc.second = acc.second + beta;
        }
      } catch (const TableFormatError&) {
        parseable = false;
      }
      if (parseable) {
        std::map<int, std::pair<Rational, Rational>> got;
        bool ok = true;
        for (const auto& [k, coeff] : computed) {
          Rational alpha, beta;
          if (!affine_f0_of_expr(coeff, alpha, beta)) {
            ok = false;
            break;
          }
          got[k] = {alpha, beta};
        }
        if (ok) {
          for (auto it = want.begin(); it != want.end();) {
            if (it->second.first.is_zero() && it->second.second.is_zero()) {
              it = want.erase(it);
            } else {
              ++it;
            }
          }
          match = got == want;
        }
      }
    }

    if (cell.annotated) {
      cr.status = CellStatus::AnnotatedTypo;
      ++report.annotated;
    } else if (match) {
      cr.status = CellStatus::Match;
      ++report.matches;
    } else {
      cr.status = CellStatus::Mismatch;
      ++report.mismatches;
    }
    report.cells.push_back(std::move(cr));
  }
  return report;
}

TableReport verify_adjoint_table(const BasisAlgebra& alg, const TableDocument& doc,
                                 const std::vector<double>& eps_values, double f0_value,
                                 double tol) {
  if (doc.kind != TableDocument::Kind::Adjoint) {
    throw TableFormatError("document " + doc.id + " is not an adjoint table");
  }
  TableReport report;
  report.table_id = doc.id;
  report.case_id = doc.case_id;
  const int n = alg.dim();

  for (const auto& cell : doc.cells) {
    CellReport cr;
    cr.row = cell.row;
    cr.col = cell.col;
    cr.expected = cell.raw;
    cr.note = cell.note;
    int A = alg.index_of(cell.row);
    int j = alg.index_of(cell.col);
    if (A < 0 || j < 0) throw TableFormatError("unknown generator in cell " + cell.row + "," + cell.col);

    std::string computed;
    bool match = true;
    for (double eps : eps_values) {
      Eigen::VectorXd e_j = Eigen::VectorXd::Zero(n);
      e_j(j) = 1.0;
      Eigen::VectorXd got = alg.adjoint_action(A, e_j, eps, f0_value);

      if (!computed.empty()) computed += "; ";
      computed += "eps=" + fmt_double(eps) + ":";
      for (int k = 0; k < n; ++k) {
        if (std::abs(got(k)) <= 1e-13) continue;
        computed += " " + fmt_double(got(k)) + "*" + alg.name(k);
      }

      if (cell.annotated) continue;
      Eigen::VectorXd want = Eigen::VectorXd::Zero(n);
      bool parseable = true;
      try {
        for (const auto& term : parse_cell(cell.raw, doc.id)) {
          int k = alg.index_of(term.target);
          if (k < 0) {
            parseable = false;
            break;
          }
          want(k) += term.eval(eps, f0_value);
        }
      } catch (const TableFormatError&) {
        parseable = false;
      }
      if (!parseable || (got - want).cwiseAbs().maxCoeff() > tol) match = false;
    }
    cr.computed = computed;

    if (cell.annotated) {
      cr.status = CellStatus::AnnotatedTypo;
      ++report.annotated;
    } else if (match) {
      cr.status = CellStatus::Match;
      ++report.matches;
    } else {
      cr.status = CellStatus::Mismatch;
      ++report.mismatches;
    }
    report.cells.push_back(std::move(cr));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string TableReport::to_json() const {
  nlohmann::json j;
  j["case"] = case_id;
  j["table"] = table_id;
  j["matches"] = matches;
  j["mismatches"] = mismatches;
  j["annotated_typos"] = annotated;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json jc;
    jc["row"] = c.row;
    jc["col"] = c.col;
    jc["expected"] = c.expected;
    jc["computed"] = c.computed;
    jc["status"] = c.status == CellStatus::Match      ? "match"
                   : c.status == CellStatus::Mismatch ? "mismatch"
                                                      : "typo_annotated";
    if (!c.note.empty()) jc["note"] = c.note;
    j["cells"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

std::string commutator_table_markdown(const BasisAlgebra& alg) {
  const int n = alg.dim();
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(alg.name(i));
  std::string out = "| [Xi, Xj] |";
  for (const auto& name : names) out += " " + name + " |";
  out += "\n|---|";
  for (int j = 0; j < n; ++j) out += "---|";
  out += "\n";
  for (int i = 0; i < n; ++i) {
    out += "| **" + names[i] + "** |";
    for (int j = 0; j < n; ++j) {
      out += " " + structure_cell_str(alg.bracket(i, j), names) + " |";
    }
    out += "\n";
  }
  return out;
}

std::string TableReport::to_markdown() const {
  // grid in document order, expected values with status markers
  std::vector<std::string> rows, cols;
  auto add_unique = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  std::map<std::pair<std::string, std::string>, const CellReport*> grid;
  for (const auto& c : cells) {
    add_unique(rows, c.row);
    add_unique(cols, c.col);
    grid[{c.row, c.col}] = &c;
  }

  std::string out = "## Table " + table_id + " (case " + case_id + ")\n\n";
  out += "matches: " + std::to_string(matches) + ", mismatches: " + std::to_string(mismatches) +
         ", annotated typos: " + std::to_string(annotated) + "\n\n| |";
  for (const auto& c : cols) out += " " + c + " |";
  out += "\n|---|";
  for (std::size_t j = 0; j < cols.size(); ++j) out += "---|";
  out += "\n";
  for (const auto& r : rows) {
    out += "| **" + r + "** |";
    for (const auto& c : cols) {
      auto it = grid.find({r, c});
      if (it == grid.end()) {
        out += " |";
        continue;
      }
      std::string mark = it->second->status == CellStatus::Match      ? ""
                         : it->second->status == CellStatus::Mismatch ? " (!)"
                                                                      : " (typo)";
      out += " " + it->second->expected + mark + " |";
    }
    out += "\n";
  }
  bool have_notes = false;
  for (const auto& c : cells) {
    if (c.status == CellStatus::Match) continue;
    if (!have_notes) {
      out += "\nNon-matching cells (computed values):\n\n";
      have_notes = true;
    }
    out += "- [" + c.row + ", " + c.col + "] expected `" + c.expected + "`, computed `" +
           c.computed + "`";
    out += c.status == CellStatus::AnnotatedTypo ? " (annotated typo" : " (MISMATCH";
    if (!c.note.empty()) out += ": " + c.note;
    out += ")\n";
  }
  return out;
}

}  // namespace swsym
