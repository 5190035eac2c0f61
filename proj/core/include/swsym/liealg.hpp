#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "swsym/expr.hpp"
#include "swsym/jet.hpp"

namespace swsym {

struct NotInSpanError : ExprError {
  using ExprError::ExprError;
};

/// Lie bracket of two point-symmetry fields: [X,Y]^i = X(Y^i) - Y(X^i).
VectorField commutator(const VectorField& X, const VectorField& Y);

struct StructureEntry {
  int index;   // basis index
  Expr coeff;  // rational, or rational * f0
};
using StructureCell = std::vector<StructureEntry>;

std::string structure_cell_str(const StructureCell& cell, const std::vector<std::string>& names);

/// Ordered, named generator list with its structure-constant table and the
/// machinery for adjoint matrices. Construction computes every bracket,
/// decomposes it in the basis and fails loudly if the set does not close.
class BasisAlgebra {
 public:
  BasisAlgebra(std::vector<VectorField> basis, Expr f0, std::string algebra_label,
               std::uint64_t seed = 0x11a1u);

  int dim() const { return static_cast<int>(basis_.size()); }
  const VectorField& basis(int i) const { return basis_[i]; }
  const std::vector<VectorField>& basis() const { return basis_; }
  const std::string& name(int i) const { return basis_[i].name; }
  int index_of(const std::string& name) const;  // -1 when absent
  const StructureCell& bracket(int i, int j) const { return table_[i * dim() + j]; }
  const Expr& f0() const { return f0_; }
  const std::string& label() const { return label_; }

  /// Decomposition of V over the basis, with coefficients affine in f0 when
  /// f0 is symbolic. Verified by a probabilistic zero test of the residual
  /// field; throws NotInSpanError when that test fails.
  StructureCell decompose(const VectorField& V) const;

  /// Matrix of ad_A over the basis: [X_A, X_j] = sum_k M(k,j) X_k, with f0
  /// bound to a numeric value.
  Eigen::MatrixXd adjoint_matrix(int A, double f0_value) const;

  /// Ad(exp(eps X_A)) acting on a coefficient vector: exp(-eps ad_A) coeffs,
  /// by scaling-and-squaring matrix exponential.
  Eigen::VectorXd adjoint_action(int A, const Eigen::VectorXd& coeffs, double eps,
                                 double f0_value) const;

 private:
  std::vector<VectorField> basis_;
  Expr f0_;
  std::string label_;
  std::uint64_t seed_;
  std::vector<StructureCell> table_;
};

// ---------------------------------------------------------------------------
// Optimal system of the six-dimensional algebra (g != 0, f0 != 0 case)
// ---------------------------------------------------------------------------

/// Generic element a1 X1 + a2 X2 + a10 X10 + z1 Z1 + z2 Z2 + z3 Z3 of the
/// six-dimensional algebra. The field order matches the algebra basis order.
struct GenericElement {
  double a1 = 0, a2 = 0, a10 = 0, z1 = 0, z2 = 0, z3 = 0;

  Eigen::VectorXd coeffs() const;
  static GenericElement from_coeffs(const Eigen::VectorXd& c);
  double max_abs() const;
};

enum class Branch { I, II, III, IV };

std::string branch_name(Branch b);

struct BranchResult {
  Branch branch;
  std::string representative;
};

/// Classifies a nonzero element by the adjoint invariants a1 and z1
/// (coefficients normalized to unit max-norm; zero test at 1e-12).
BranchResult classify_branch(const GenericElement& e, double tol = 1e-12);

struct OptimalSystemElement {
  std::string description;
  std::string note;  // nonempty marks a suspect entry kept verbatim
};

/// The 21 one-dimensional subalgebra representatives, stored verbatim.
const std::vector<OptimalSystemElement>& optimal_system();

// ---------------------------------------------------------------------------
// Adjoint-invariance machinery
// ---------------------------------------------------------------------------

/// The six displayed linear constraints on an invariant phi(a1,a2,a10,z1,z2,z3),
/// instantiated for a candidate phi. Constraint 6 is kept exactly as displayed
/// (first term a2 phi_{,z2}); see the discrepancy report.
std::vector<Expr> displayed_invariant_constraints(const Expr& phi);

/// Same constraints derived mechanically from the algebra's structure
/// constants: one equation sum_j (sum_i c^j_{A,i} b_i) phi_{,b_j} per basis
/// element A. coefficient_names[i] is the symbol for basis index i.
std::vector<Expr> derived_invariant_constraints(const BasisAlgebra& alg,
                                                const std::vector<std::string>& coefficient_names,
                                                const Expr& phi);

struct InvarianceViolation {
  int basis_index;
  double eps;
  std::string what;
};

struct InvarianceReport {
  bool a1_z1_preserved = true;
  bool phi_a1_annihilates = true;
  bool phi_z1_annihilates = true;
  bool branch_adjoint_invariant = true;
  int samples = 0;
  double max_a1_drift = 0.0;
  double max_z1_drift = 0.0;
  std::vector<InvarianceViolation> violations;
  bool ok() const {
    return a1_z1_preserved && phi_a1_annihilates && phi_z1_annihilates && branch_adjoint_invariant;
  }
};

/// Checks, on random (element, eps) samples, that the a1 and z1 components
/// are fixed by every Ad(exp(eps X_A)) to `tol`, that phi = a1 and phi = z1
/// annihilate the displayed constraint system, and that classify_branch is
/// adjoint-invariant on the same sample.
InvarianceReport invariance_check(const BasisAlgebra& l6, int trials, double f0_value,
                                  double tol = 1e-10, std::uint64_t seed = 0x1e6u);

}  // namespace swsym
