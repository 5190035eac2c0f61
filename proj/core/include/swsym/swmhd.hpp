#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swsym/expr.hpp"
#include "swsym/jet.hpp"

namespace swsym {

// ---------------------------------------------------------------------------
// The 1D rotating shallow-water MHD system
//
//   h_t + (hu)_x                                  = 0
//   (hu)_t + (hu^2 + g/2 h^2 - ha^2)_x + f0 h v   = 0
//   (hv)_t + (huv - hab)_x - f0 h u               = 0
//   (ha)_t + u (ha)_x                             = 0
//   (hb)_t + (h(ub - va))_x + v (ha)_x            = 0
// ---------------------------------------------------------------------------

/// The five residuals in expanded jet coordinates together with their
/// evolution form (t-derivatives solved for, divisions by h permitted).
struct PdeSystem {
  Expr g;
  Expr f0;
  std::array<Expr, 5> residual;
  /// evolution[dep] is the expression for (dep)_t in base + x-derivatives
  std::array<Expr, JetSpace::n_dependent> evolution;

  /// substitution map {h_t -> evolution[h], ...}
  std::map<std::string, Expr> evolution_substitution() const;
  /// max |residual| after substituting the evolution map (soundness check)
  ZeroTestResult check_evolution_form(const ZeroTestOptions& opt) const;
};

PdeSystem build_system(const Expr& g, const Expr& f0);
PdeSystem build_system(double g, double f0);

// ---------------------------------------------------------------------------
// Symmetry classification cases and generator catalogs
// ---------------------------------------------------------------------------

enum class SymmetryCaseId { Free, Gravity, Coriolis, Full };

std::optional<SymmetryCaseId> parse_case(const std::string& name);
std::string case_name(SymmetryCaseId id);

struct SymmetryCase {
  SymmetryCaseId id;
  std::string algebra_label;
  int expected_dimension;
  std::vector<VectorField> generators;
};

/// The paper's named generators. f0 enters Z2/Z3 (and the Coriolis cases)
/// symbolically or numerically depending on the argument.
VectorField named_generator(const std::string& name, const Expr& f0);
/// every cataloged generator name, in catalog order
const std::vector<std::string>& generator_catalog_names();

SymmetryCase symmetry_case(SymmetryCaseId id, const Expr& f0);

// ---------------------------------------------------------------------------
// Symmetry verification via prolongation
// ---------------------------------------------------------------------------

struct SymmetryVerdict {
  bool pass = true;
  int failed_residual = -1;     // 0-based index of the first failing residual
  Assignment witness;           // sample point where it fails
  double witness_value = 0.0;
};

/// Applies the first prolongation of X to each residual, imposes H = 0 by
/// eliminating all t-derivatives through the evolution map, and zero-tests
/// the result.
SymmetryVerdict verify_symmetry(const VectorField& X, const PdeSystem& sys,
                                const ZeroTestOptions& opt);

// ---------------------------------------------------------------------------
// One-parameter finite transformations
// ---------------------------------------------------------------------------

/// Fields and their first derivatives at a point, for pushing solutions
/// through a group transformation.
struct FieldJet {
  std::array<double, JetSpace::n_dependent> psi{};
  std::array<double, JetSpace::n_dependent> psi_t{};
  std::array<double, JetSpace::n_dependent> psi_x{};
};

/// The closed-form one-parameter point transformation of a cataloged
/// generator at a fixed group parameter. Exposes the base-point map, its
/// inverse, the field map, and the exact first-jet pushforward.
class FlowMap {
 public:
  FlowMap(std::string generator_name, double eps, double f0);

  const std::string& generator() const { return name_; }
  double eps() const { return eps_; }

  std::array<double, 2> map_point(double t, double x) const;
  std::array<double, 2> unmap_point(double tb, double xb) const;
  std::array<double, JetSpace::n_dependent> map_fields(
      double t, double x, const std::array<double, JetSpace::n_dependent>& psi) const;

  /// Jet pushforward: given the jet of a solution at (t,x), the jet of the
  /// transformed solution at the mapped point (chain rule with the exact
  /// Jacobians of the catalog map).
  FieldJet push(double t, double x, const FieldJet& jet) const;

 private:
  std::string name_;
  double eps_;
  double f0_;
};

/// true if `name` has a cataloged finite transformation
bool has_finite_transformation(const std::string& name);

// ---------------------------------------------------------------------------
// Run configuration (shared by the CLI and the FV solver)
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string case_id = "full";
  double g = 1.0;
  double f0 = 1.0;
  std::uint64_t seed = 42;
  int trials = 50;
  double tol = 1e-9;
  std::string output_dir = ".";

  ZeroTestOptions zero_test_options() const {
    ZeroTestOptions opt;
    opt.trials = trials;
    opt.tol = tol;
    opt.seed = seed;
    return opt;
  }
};

}  // namespace swsym
