#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swsym/odesolve.hpp"
#include "swsym/swmhd.hpp"

namespace swsym {

struct ReductionError : ExprError {
  using ExprError::ExprError;
};

/// Numeric parameters of a reduction: the system constants and the case's
/// free constants (a2, z2, z3, a10, h0, u0, v0, a0, b0, b1, U0, V0, B0, ...).
struct ReductionParams {
  double g = 1.0;
  double f0 = 1.0;
  std::map<std::string, double> constants;

  double at(const std::string& name) const;
  double at_or(const std::string& name, double fallback) const;
  Expr expr(const std::string& name) const;  // exact rational of the constant
  Expr g_expr() const;
  Expr f0_expr() const;
};

// ---------------------------------------------------------------------------
// Solutions: exact field values with exact first derivatives
// ---------------------------------------------------------------------------

class Solution {
 public:
  virtual ~Solution() = default;
  virtual FieldJet jet(double t, double x) const = 0;
  /// distance to the nearest singular locus in f0*t units; <= 0 on the wall
  virtual double wall_clearance(double t, double x) const {
    (void)t;
    (void)x;
    return 1e9;
  }
  virtual std::string name() const = 0;
};

/// Solution whose five fields are expressions in (t, x); derivatives are the
/// exact symbolic ones.
class SymbolicSolution : public Solution {
 public:
  SymbolicSolution(std::string name, std::array<Expr, 5> fields,
                   std::function<double(double, double)> clearance = {});
  FieldJet jet(double t, double x) const override;
  double wall_clearance(double t, double x) const override;
  std::string name() const override { return name_; }
  const std::array<Expr, 5>& fields() const { return field_; }

 private:
  std::string name_;
  std::array<Expr, 5> field_, field_t_, field_x_;
  std::function<double(double, double)> clearance_;
};

/// A solution pushed through a finite symmetry transformation. If the base
/// field solves the system and the map is a symmetry of it, this is again a
/// solution; the jet is the exact chain-rule pushforward.
class TransformedSolution : public Solution {
 public:
  TransformedSolution(const Solution& base, FlowMap map)
      : base_(base), map_(std::move(map)) {}
  FieldJet jet(double t, double x) const override;
  double wall_clearance(double t, double x) const override;
  std::string name() const override;

 private:
  const Solution& base_;
  FlowMap map_;
};

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Symbolic description of one reduction: the similarity variable, the
/// ansatz for the five fields in terms of reduced unknowns of the similarity
/// variable, and the displayed reduced system with the prefactors that relate
/// it to the substituted PDE residuals.
struct ReductionSymbolicData {
  std::string similarity_symbol;                // e.g. "sigma", "xi", "zeta", "t"
  Expr similarity_var;                          // expression in (t, x)
  std::vector<std::string> reduced_unknowns;    // e.g. {"H","U","V","A","B"}
  std::array<Expr, 5> ansatz;                   // h,u,v,a,b in (t, x, unknowns)
  std::array<Expr, 5> displayed;                // the cataloged reduced system
  std::array<Expr, 5> prefactor;                // residual == prefactor * displayed
  /// When nonempty, the reduced system's evolution form: "H'" -> rhs, ...
  /// Verification then checks that every substituted PDE residual and every
  /// displayed equation vanishes identically modulo these substitutions
  /// (used where the grouped residuals mix lower reduced equations).
  std::map<std::string, Expr> prime_rhs;
};

/// Reduced ODE system in evolution form for numeric integration.
struct ReductionOdeData {
  std::string independent_name;
  std::vector<std::string> state_names;
  OdeRhs rhs;
  std::vector<OdeGuard> guards;
};

struct SimilarityReductionCase {
  std::string name;
  std::vector<std::string> required_constants;
  std::string parameter_requirements;  // human-readable preconditions
  std::string discrepancy_note;        // printed-vs-derived deltas, if any

  std::function<VectorField(const ReductionParams&)> generator;
  std::function<ReductionSymbolicData(const ReductionParams&)> symbolic;
  std::function<ReductionOdeData(const ReductionParams&)> ode;          // may be null
  std::function<std::unique_ptr<Solution>(const ReductionParams&)> printed_form;    // may be null
  std::function<std::unique_ptr<Solution>(const ReductionParams&)> corrected_form;  // may be null
  std::function<void(const ReductionParams&)> validate;                 // may be null

  /// throws ReductionError when params violate the case preconditions
  void check_params(const ReductionParams& p) const;
};

const std::vector<SimilarityReductionCase>& reduction_catalog();
const SimilarityReductionCase& reduction_case(const std::string& name);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

struct ReduceResult {
  std::string case_name;
  std::string similarity_symbol;
  std::vector<std::string> equations;  // rendered reduced system
  bool verified = false;               // residual == prefactor * display passed
  std::string detail;                  // first failure, when not verified
};

/// Substitutes the ansatz into the PDE residuals and verifies probabilistic
/// equivalence with the cataloged reduced system.
ReduceResult reduce(const SimilarityReductionCase& rc, const ReductionParams& params,
                    const PdeSystem& sys, const ZeroTestOptions& opt);

struct ResidualSampleSpec {
  int samples = 100;
  double t_lo = 0.2, t_hi = 2.8;
  double x_lo = -2.0, x_hi = 2.0;
  double wall_margin = 0.05;  // in f0*t units
  std::uint64_t seed = 0x5a3d1e5ULL;
};

struct ResidualReport {
  std::string solution;
  std::array<double, 5> max_residual{};
  int samples = 0;
  bool corrected_form_used = false;
  double overall() const;
  bool pass(double tol) const { return overall() <= tol; }
};

/// Evaluates all five PDE residuals on the solution's exact jets.
ResidualReport residual_check(const Solution& sol, const PdeSystem& sys,
                              const ResidualSampleSpec& spec);

/// Checks the invariant-surface condition eta^A - xi^t Psi^A_t - xi^x Psi^A_x
/// on the solution at random sample points.
struct InvariantSurfaceReport {
  bool pass = true;
  double max_violation = 0.0;
  int samples = 0;
};
InvariantSurfaceReport invariant_surface_check(const VectorField& generator, const Solution& sol,
                                               const ResidualSampleSpec& spec, double tol = 1e-8);

struct Trajectory {
  std::string case_name;
  std::string independent;
  std::vector<std::string> columns;
  std::vector<double> s;
  std::vector<std::vector<double>> states;
  OdeStatus status = OdeStatus::Done;
  double stop_location = 0.0;
  std::string stop_reason;

  bool completed() const { return status == OdeStatus::Done; }
  /// CSV with header row, 17 significant digits, LF line endings
  std::string to_csv() const;
};

/// Integrates the case's reduced ODE system from `initial` (keyed by state
/// name) through the requested output points.
Trajectory integrate_reduced(const SimilarityReductionCase& rc, const ReductionParams& params,
                             const std::map<std::string, double>& initial,
                             const OdeSolverConfig& cfg, const std::vector<double>& output_points);

}  // namespace swsym
