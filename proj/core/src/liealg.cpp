#include "swsym/liealg.hpp"

#include <algorithm>
#include <cmath>

#include "swsym/matexp.hpp"

namespace swsym {

VectorField commutator(const VectorField& X, const VectorField& Y) {
  X.validate();
  Y.validate();
  VectorField r;
  for (int k = 0; k < JetSpace::n_base; ++k) {
    r.coeff[k] = X.apply(Y.coeff[k]) - Y.apply(X.coeff[k]);
  }
  return r;
}

std::string structure_cell_str(const StructureCell& cell, const std::vector<std::string>& names) {
  if (cell.empty()) return "0";
  std::string out;
  for (const auto& [index, coeff] : cell) {
    std::string cs = coeff.str();
    if (!out.empty()) out += " + ";
    if (cs == "1") {
      out += names[index];
    } else {
      out += cs + "*" + names[index];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// BasisAlgebra
// ---------------------------------------------------------------------------

BasisAlgebra::BasisAlgebra(std::vector<VectorField> basis, Expr f0, std::string algebra_label,
                           std::uint64_t seed)
    : basis_(std::move(basis)), f0_(std::move(f0)), label_(std::move(algebra_label)), seed_(seed) {
  const int n = dim();
  for (const auto& X : basis_) X.validate();
  table_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      VectorField br = commutator(basis_[i], basis_[j]);
      StructureCell cell;
      try {
        cell = decompose(br);
      } catch (const NotInSpanError& err) {
        throw NotInSpanError("algebra " + label_ + " does not close: [" + name(i) + "," + name(j) +
                             "]: " + err.what());
      }
      table_[i * n + j] = cell;
      StructureCell neg;
      neg.reserve(cell.size());
      for (const auto& [index, coeff] : cell) neg.push_back({index, -coeff});
      table_[j * n + i] = neg;
    }
  }
}

int BasisAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i) {
    if (basis_[i].name == name) return i;
  }
  return -1;
}

StructureCell BasisAlgebra::decompose(const VectorField& V) const {
  const auto& space = JetSpace::instance();
  const int n = dim();
  const bool f0_symbolic = f0_.kind() == Expr::Kind::Symbol;
  const int unknowns = f0_symbolic ? 2 * n : n;

  // Sample enough generic points that the coefficient functions separate the
  // basis elements, then solve the linear least-squares system for the
  // decomposition coefficients (affine in f0 when f0 is symbolic).
  const int n_points = std::max(6, 3 * n);
  SplitMix64 rng(seed_ ^ fnv1a("decompose") ^ (V.name.empty() ? 0 : fnv1a(V.name)));

  std::vector<Assignment> points;
  points.reserve(n_points);
  for (int p = 0; p < n_points; ++p) {
    Assignment at;
    for (const auto& s : space.base()) at.values[s] = rng.sample_away_from_zero();
    at.values["f0"] = rng.sample_away_from_zero();
    at.values["g"] = rng.sample_away_from_zero();
    points.push_back(std::move(at));
  }

  Eigen::MatrixXd A(n_points * JetSpace::n_base, unknowns);
  Eigen::VectorXd b(n_points * JetSpace::n_base);
  int row = 0;
  for (const auto& at : points) {
    double f0v = at.values.at("f0");
    for (int k = 0; k < JetSpace::n_base; ++k, ++row) {
      for (int m = 0; m < n; ++m) {
        double bm = basis_[m].coeff[k].eval(at);
        A(row, m) = bm;
        if (f0_symbolic) A(row, n + m) = f0v * bm;
      }
      b(row) = V.coeff[k].eval(at);
    }
  }
  Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);

  // Snap to exact rationals; the admitted tables only contain small ones.
  auto snap = [](double x) -> Rational {
    if (std::abs(x) < 1e-9) return Rational(0);
    auto r = rationalize(x, 1000, 1e-7);
    if (!r) throw NotInSpanError("decomposition coefficient is not a small rational");
    return *r;
  };

  StructureCell cell;
  VectorField residual = V;
  for (int m = 0; m < n; ++m) {
    Rational alpha = snap(sol(m));
    Rational beta = f0_symbolic ? snap(sol(n + m)) : Rational(0);
    if (alpha.is_zero() && beta.is_zero()) continue;
    std::vector<Expr> parts;
    if (!alpha.is_zero()) parts.push_back(Expr::rational(alpha));
    if (!beta.is_zero()) parts.push_back(Expr::rational(beta) * f0_);
    Expr coeff = Expr::sum(std::move(parts));
    cell.push_back({m, coeff});
    residual = residual - basis_[m].scaled(coeff);
  }

  // The snapped decomposition must reproduce V identically.
  ZeroTestOptions opt;
  opt.trials = 25;
  opt.tol = 1e-9;
  opt.seed = seed_ ^ 0xdecau;
  for (int k = 0; k < JetSpace::n_base; ++k) {
    auto res = is_zero_probabilistic(residual.coeff[k], opt);
    if (!res.zero) {
      throw NotInSpanError("residual in coordinate " + space.base()[k] +
                           " does not vanish (value " + std::to_string(res.witness_value) + ")");
    }
  }
  return cell;
}

Eigen::MatrixXd BasisAlgebra::adjoint_matrix(int A, double f0_value) const {
  const int n = dim();
  if (f0_.kind() == Expr::Kind::Rational && std::abs(f0_.rational_value().to_double() - f0_value) > 0) {
    throw ExprError("adjoint_matrix: f0 value disagrees with the algebra's numeric f0");
  }
  Assignment at;
  at.values["f0"] = f0_value;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (const auto& [k, coeff] : bracket(A, j)) {
      M(k, j) = coeff.eval(at);
    }
  }
  return M;
}

Eigen::VectorXd BasisAlgebra::adjoint_action(int A, const Eigen::VectorXd& coeffs, double eps,
                                             double f0_value) const {
  Eigen::MatrixXd M = adjoint_matrix(A, f0_value);
  return expm(-eps * M) * coeffs;
}

// ---------------------------------------------------------------------------
// Generic elements, branches, optimal system
// ---------------------------------------------------------------------------

Eigen::VectorXd GenericElement::coeffs() const {
  Eigen::VectorXd c(6);
  c << a1, a2, a10, z1, z2, z3;
  return c;
}

GenericElement GenericElement::from_coeffs(const Eigen::VectorXd& c) {
  return GenericElement{c(0), c(1), c(2), c(3), c(4), c(5)};
}

double GenericElement::max_abs() const {
  return std::max({std::abs(a1), std::abs(a2), std::abs(a10), std::abs(z1), std::abs(z2),
                   std::abs(z3)});
}

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::I:
      return "I";
    case Branch::II:
      return "II";
    case Branch::III:
      return "III";
    case Branch::IV:
      return "IV";
  }
  return "?";
}

BranchResult classify_branch(const GenericElement& e, double tol) {
  double m = e.max_abs();
  if (m == 0.0) throw ExprError("classify_branch: zero element");
  bool a1_zero = std::abs(e.a1) / m <= tol;
  bool z1_zero = std::abs(e.z1) / m <= tol;
  if (!a1_zero && !z1_zero) return {Branch::I, "a1*X1 + z1*Z1"};
  if (!a1_zero) return {Branch::II, "a1*X1 + a2*X2 + a10*X10"};
  if (!z1_zero) return {Branch::III, "z1*Z1"};
  return {Branch::IV, "a2*X2 + a10*X10 + z2*Z2 + z3*Z3"};
}

const std::vector<OptimalSystemElement>& optimal_system() {
  static const std::vector<OptimalSystemElement> elements = {
      {"X1", ""},
      {"X2", ""},
      {"X3", "listed verbatim; X3 is not an element of the six-dimensional algebra"},
      {"X10", ""},
      {"Z1", ""},
      {"Z2", ""},
      {"Z3", ""},
      {"a1*X1 + z1*Z1", ""},
      {"a1*X1 + a2*X2", ""},
      {"a1*X1 + a10*X10", ""},
      {"a1*X1 + a2*X2 + a10*X10", ""},
      {"a2*X2 + a10*X10", ""},
      {"a2*X2 + z2*Z2", ""},
      {"a2*X2 + z3*Z3", ""},
      {"a10*X10 + z2*Z2", ""},
      {"a10*X10 + z3*Z3", ""},
      {"z2*Z2 + z3*Z3", ""},
      {"a2*X2 + a10*X10 + z2*Z2", ""},
      {"a2*X2 + a10*X10 + z3*Z3", ""},
      {"a10*X10 + z2*Z2 + z3*Z3", ""},
      {"a2*X2 + a10*X10 + z2*Z2 + z3*Z3", ""},
  };
  return elements;
}

// ---------------------------------------------------------------------------
// Invariance machinery
// ---------------------------------------------------------------------------

std::vector<Expr> displayed_invariant_constraints(const Expr& phi) {
  Expr a1 = Expr::symbol("a1"), a2 = Expr::symbol("a2"), a10 = Expr::symbol("a10");
  Expr z1 = Expr::symbol("z1"), z2 = Expr::symbol("z2"), z3 = Expr::symbol("z3");
  Expr f0 = Expr::symbol("f0");
  Expr p_a2 = phi.diff("a2"), p_a10 = phi.diff("a10");
  Expr p_z2 = phi.diff("z2"), p_z3 = phi.diff("z3");
  return {
      z1 * p_a2,
      Expr::integer(2) * z1 * p_a10,
      z2 * p_z3 - z3 * p_z2,
      f0 * a1 * p_z3 - z1 * p_z2,
      f0 * a1 * p_z2 + z1 * p_z3,
      a2 * p_z2 + Expr::integer(2) * a10 * p_a10 + z2 * p_z2 + z3 * p_z3,
  };
}

std::vector<Expr> derived_invariant_constraints(const BasisAlgebra& alg,
                                                const std::vector<std::string>& coefficient_names,
                                                const Expr& phi) {
  const int n = alg.dim();
  if (static_cast<int>(coefficient_names.size()) != n) {
    throw ExprError("derived_invariant_constraints: one coefficient name per basis element");
  }
  std::vector<Expr> constraints;
  constraints.reserve(n);
  for (int A = 0; A < n; ++A) {
    std::vector<Expr> terms;
    for (int i = 0; i < n; ++i) {
      for (const auto& [j, coeff] : alg.bracket(A, i)) {
        Expr dphi = phi.diff(coefficient_names[j]);
        if (dphi.is_zero()) continue;
        terms.push_back(coeff * Expr::symbol(coefficient_names[i]) * dphi);
      }
    }
    constraints.push_back(Expr::sum(std::move(terms)));
  }
  return constraints;
}

InvarianceReport invariance_check(const BasisAlgebra& l6, int trials, double f0_value, double tol,
                                  std::uint64_t seed) {
  InvarianceReport report;
  report.samples = trials;
  SplitMix64 rng(seed);

  const int i_a1 = 0, i_z1 = 3;  // basis order X1, X2, X10, Z1, Z2, Z3
  for (int s = 0; s < trials; ++s) {
    GenericElement e;
    e.a1 = rng.sample_away_from_zero();
    e.a2 = rng.sample_away_from_zero();
    e.a10 = rng.sample_away_from_zero();
    e.z1 = rng.sample_away_from_zero();
    e.z2 = rng.sample_away_from_zero();
    e.z3 = rng.sample_away_from_zero();
    // exercise every branch, not just the generic stratum
    int mask = static_cast<int>(rng.next() & 3u);
    if (mask & 1) e.a1 = 0;
    if (mask & 2) e.z1 = 0;
    if (e.max_abs() == 0.0) e.a2 = 1.0;

    Branch before = classify_branch(e).branch;
    for (int A = 0; A < l6.dim(); ++A) {
      double eps = -2.0 + 4.0 * rng.uniform01();
      Eigen::VectorXd out = l6.adjoint_action(A, e.coeffs(), eps, f0_value);
      double da1 = std::abs(out(i_a1) - e.a1);
      double dz1 = std::abs(out(i_z1) - e.z1);
      report.max_a1_drift = std::max(report.max_a1_drift, da1);
      report.max_z1_drift = std::max(report.max_z1_drift, dz1);
      if (da1 > tol || dz1 > tol) {
        report.a1_z1_preserved = false;
        report.violations.push_back({A, eps, "a1/z1 component moved under the adjoint action"});
      }
      GenericElement image = GenericElement::from_coeffs(out);
      if (image.max_abs() > 0 && classify_branch(image).branch != before) {
        report.branch_adjoint_invariant = false;
        report.violations.push_back({A, eps, "branch changed under the adjoint action"});
      }
    }
  }

  ZeroTestOptions zopt;
  zopt.trials = 25;
  zopt.tol = 1e-10;
  zopt.seed = seed ^ 0x9997u;
  auto annihilates = [&](const Expr& phi) {
    for (const auto& c : displayed_invariant_constraints(phi)) {
      if (!is_zero_probabilistic(c, zopt).zero) return false;
    }
    return true;
  };
  report.phi_a1_annihilates = annihilates(Expr::symbol("a1"));
  report.phi_z1_annihilates = annihilates(Expr::symbol("z1"));
  return report;
}

}  // namespace swsym
