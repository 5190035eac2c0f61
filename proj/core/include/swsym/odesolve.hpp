#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace swsym {

/// Adaptive Runge-Kutta 5(4) (Dormand-Prince) configuration.
struct OdeSolverConfig {
  double rtol = 1e-8;
  double atol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 2000000;
};

enum class OdeStatus { Done, WallHit, StepUnderflow, MaxStepsExceeded };

std::string ode_status_name(OdeStatus s);

using OdeRhs = std::function<void(double s, const double* y, double* dyds)>;
/// Domain guard: positive inside the valid region. Integration halts cleanly
/// (status WallHit) just before the guard would cross zero.
using OdeGuard = std::function<double(double s, const double* y)>;

struct OdeResult {
  OdeStatus status = OdeStatus::Done;
  double stop_location = 0.0;  // value of the independent variable at stop
  std::string stop_reason;
  /// output points actually reached (prefix of the requested list) and states
  std::vector<double> s;
  std::vector<std::vector<double>> y;
};

/// Integrates y' = f(s, y) from s0 through the strictly monotone list of
/// output points (ascending or descending), recording the state at each.
/// Steps are clipped to land on output points exactly.
OdeResult integrate_ode(const OdeRhs& f, int dim, double s0, std::vector<double> y0,
                        const std::vector<double>& s_out, const OdeSolverConfig& cfg,
                        const std::vector<OdeGuard>& guards = {});

}  // namespace swsym
