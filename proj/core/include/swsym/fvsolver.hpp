#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "swsym/expr.hpp"

namespace swsym {

struct FvError : ExprError {
  using ExprError::ExprError;
};

enum class Boundary { Periodic, Outflow };

/// conserved-style cell vector: (h, hu, hv, ha, hb)
using Cons = std::array<double, 5>;
/// primitive fields: (h, u, v, a, b)
using Prim = std::array<double, 5>;

Cons prim_to_cons(const Prim& p);
Prim cons_to_prim(const Cons& q);

struct GridState {
  int n_cells = 0;
  double x0 = 0.0;   // left domain edge
  double dx = 0.0;
  double time = 0.0;
  Boundary boundary = Boundary::Periodic;
  std::vector<Cons> q;

  double cell_center(int i) const { return x0 + (i + 0.5) * dx; }
  double mass() const;  // sum h dx

  /// samples primitive fields at cell centers
  static GridState sample(int n_cells, double x0, double length, double time,
                          const std::function<Prim(double x, double t)>& fields,
                          Boundary boundary = Boundary::Periodic);

  /// CSV snapshot with columns x,h,u,v,a,b (17 significant digits, LF)
  std::string to_csv() const;
};

struct SchemeConfig {
  double cfl = 0.4;              // in (0, 1)
  double wave_speed_safety = 1.1;
};

struct StepStats {
  double dt = 0.0;
  double max_speed = 0.0;
};

/// One SSP-RK2 step of the first-order Rusanov scheme with CFL time step.
/// The (h, hu, hv, hb) components advance conservatively with fluxes
/// (hu, hu^2 + g/2 h^2 - ha^2, huv - hab, h(ub - va)); the nonconservative
/// u (ha)_x term is upwinded on the sign of u, v (ha)_x is central, and the
/// Coriolis sources are integrated unsplit within each stage. Wave speed
/// bound: |u| + sqrt(g h + a^2). Throws FvError on positivity loss.
StepStats step(GridState& state, double g, double f0, const SchemeConfig& cfg);

/// Same scheme with a caller-chosen time step.
void step_by(GridState& state, double g, double f0, const SchemeConfig& cfg, double dt);

struct ProbeSeries {
  int cell = 0;
  std::vector<double> t;
  std::vector<Cons> values;
};

struct RunResult {
  GridState state;
  long steps = 0;
  std::vector<ProbeSeries> probes;
};

/// Repeated stepping with a final partial step landing exactly on T.
RunResult run_until(GridState state, double T, double g, double f0, const SchemeConfig& cfg,
                    const std::vector<int>& probe_cells = {});

struct ErrorNorms {
  std::array<double, 5> l1{};    // per primitive field
  std::array<double, 5> linf{};
  double total_l1() const;
};

/// Cell-centered comparison against exact primitive fields at state.time.
/// interior_margin excludes cells within that distance of either domain edge
/// (for outflow runs, where the boundary's domain of influence is not part of
/// the exact solution being tracked).
ErrorNorms compare_to_fields(const GridState& state,
                             const std::function<Prim(double x, double t)>& fields,
                             double interior_margin = 0.0);

}  // namespace swsym
