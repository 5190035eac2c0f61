#pragma once

#include <array>
#include <string>
#include <vector>

#include "swsym/expr.hpp"

namespace swsym {

struct JetError : ExprError {
  using ExprError::ExprError;
};

/// First-order jet space over independent variables (t, x) and dependent
/// variables (h, u, v, a, b). Coordinate naming and ordering are fixed for
/// the whole library so canonical forms and table output are deterministic.
class JetSpace {
 public:
  static constexpr int n_independent = 2;
  static constexpr int n_dependent = 5;
  static constexpr int n_base = n_independent + n_dependent;      // 7
  static constexpr int n_deriv = n_dependent * n_independent;     // 10

  static const JetSpace& instance();

  const std::array<std::string, n_independent>& independent() const { return indep_; }
  const std::array<std::string, n_dependent>& dependent() const { return dep_; }
  /// base coordinates in canonical order: t, x, h, u, v, a, b
  const std::array<std::string, n_base>& base() const { return base_; }

  /// name of the first-derivative coordinate d(dep)/d(ind), e.g. "h_t"
  const std::string& deriv(int dep, int ind) const { return deriv_[dep * n_independent + ind]; }
  int deriv_index(int dep, int ind) const { return dep * n_independent + ind; }

  Expr base_symbol(int i) const { return Expr::symbol(base_[i]); }
  Expr dep_symbol(int a) const { return Expr::symbol(dep_[a]); }
  Expr deriv_symbol(int dep, int ind) const { return Expr::symbol(deriv(dep, ind)); }

  bool is_base(const std::string& name) const;
  bool is_deriv(const std::string& name) const;
  int base_index(const std::string& name) const;  // -1 if not a base coordinate

  /// true iff e mentions no first-derivative coordinate
  bool base_only(const Expr& e) const;

 private:
  JetSpace();
  std::array<std::string, n_independent> indep_;
  std::array<std::string, n_dependent> dep_;
  std::array<std::string, n_base> base_;
  std::array<std::string, n_deriv> deriv_;
};

/// A point-symmetry generator: one coefficient per base coordinate,
/// xi_t d/dt + xi_x d/dx + eta_h d/dh + ... + eta_b d/db. Coefficients may
/// depend only on base coordinates (and parameters such as f0).
struct VectorField {
  std::array<Expr, JetSpace::n_base> coeff;  // ordered as (t, x, h, u, v, a, b)
  std::string name;

  VectorField();
  static VectorField named(std::string name);

  const Expr& xi(int ind) const { return coeff[ind]; }
  const Expr& eta(int dep) const { return coeff[JetSpace::n_independent + dep]; }
  Expr& xi(int ind) { return coeff[ind]; }
  Expr& eta(int dep) { return coeff[JetSpace::n_independent + dep]; }

  /// applies the field as a derivation to a base-coordinate expression
  Expr apply(const Expr& f) const;

  bool is_zero() const;
  /// throws JetError if any coefficient mentions a derivative coordinate
  void validate() const;
  std::string str() const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  VectorField scaled(const Expr& c) const;
  VectorField scaled(Rational c) const;
};

/// First prolongation of a point-symmetry generator: the ten coefficients
/// eta1[(dep,ind)] attached to the derivative coordinates.
struct ProlongedField {
  VectorField base;
  std::array<Expr, JetSpace::n_deriv> eta1;

  const Expr& eta1_at(int dep, int ind) const {
    return eta1[JetSpace::instance().deriv_index(dep, ind)];
  }

  /// applies the prolonged field to a first-order jet expression
  Expr apply(const Expr& f) const;
};

/// Total derivative truncated at first order:
///   D_i(e) = d e/d y_i + sum_B (dPsi_B/d y_i) * d e/d Psi_B.
/// e must depend on base coordinates only; expressions that already involve
/// derivative coordinates would need the second-order jet and are rejected.
Expr total_derivative(const Expr& e, int ind, const JetSpace& space = JetSpace::instance());
Expr total_derivative(const Expr& e, const std::string& ind_name,
                      const JetSpace& space = JetSpace::instance());

/// Eq-level prolongation formula: eta1[A][i] = D_i(eta^A) - sum_j Psi^A_j D_i(xi^j).
ProlongedField prolong_first(const VectorField& X, const JetSpace& space = JetSpace::instance());

}  // namespace swsym
