#include "swsym/fvsolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace swsym {

Cons prim_to_cons(const Prim& p) {
  return {p[0], p[0] * p[1], p[0] * p[2], p[0] * p[3], p[0] * p[4]};
}

Prim cons_to_prim(const Cons& q) {
  double h = q[0];
  return {h, q[1] / h, q[2] / h, q[3] / h, q[4] / h};
}

double GridState::mass() const {
  double m = 0.0;
  for (const auto& c : q) m += c[0];
  return m * dx;
}

GridState GridState::sample(int n_cells, double x0, double length, double time,
                            const std::function<Prim(double, double)>& fields,
                            Boundary boundary) {
  GridState s;
  s.n_cells = n_cells;
  s.x0 = x0;
  s.dx = length / n_cells;
  s.time = time;
  s.boundary = boundary;
  s.q.resize(n_cells);
  for (int i = 0; i < n_cells; ++i) s.q[i] = prim_to_cons(fields(s.cell_center(i), time));
  return s;
}

std::string GridState::to_csv() const {
  std::string out = "x,h,u,v,a,b\n";
  char buf[64];
  for (int i = 0; i < n_cells; ++i) {
    Prim p = cons_to_prim(q[i]);
    std::snprintf(buf, sizeof buf, "%.17g", cell_center(i));
    out += buf;
    for (double v : p) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

namespace {

inline std::array<double, 4> cons_flux(const Cons& q, double g) {
  Prim p = cons_to_prim(q);
  double h = p[0], u = p[1], v = p[2], a = p[3], b = p[4];
  return {
      q[1],                                    // h:  hu
      h * u * u + 0.5 * g * h * h - h * a * a, // hu
      h * u * v - h * a * b,                   // hv
      h * (u * b - v * a),                     // hb
  };
}

inline double wave_speed(const Cons& q, double g) {
  Prim p = cons_to_prim(q);
  return std::abs(p[1]) + std::sqrt(g * p[0] + p[3] * p[3]);
}

struct Workspace {
  std::vector<std::array<double, 4>> flux;  // one per interface
  std::vector<Cons> rhs;
};

// index helpers honoring the boundary condition
inline int left_of(int i, int n, Boundary b) {
  if (i > 0) return i - 1;
  return b == Boundary::Periodic ? n - 1 : 0;
}
inline int right_of(int i, int n, Boundary b) {
  if (i < n - 1) return i + 1;
  return b == Boundary::Periodic ? 0 : n - 1;
}

void check_positivity(const GridState& s, const char* stage) {
  for (int i = 0; i < s.n_cells; ++i) {
    if (!(s.q[i][0] > 0.0) || !std::isfinite(s.q[i][0])) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "positivity lost at %s: h = %.6g in cell %d (x = %.6g, t = %.6g)", stage,
                    s.q[i][0], i, s.cell_center(i), s.time);
      throw FvError(buf);
    }
  }
}

// semi-discrete right-hand side L(q)
void spatial_rhs(const GridState& s, double g, double f0, Workspace& w) {
  const int n = s.n_cells;
  const double inv_dx = 1.0 / s.dx;
  w.flux.resize(n + 1);
  w.rhs.assign(n, Cons{});

  // Rusanov fluxes for the conservative subsystem at interfaces i-1/2
  for (int i = 0; i <= n; ++i) {
    int iL = (i == 0) ? (s.boundary == Boundary::Periodic ? n - 1 : 0) : i - 1;
    int iR = (i == n) ? (s.boundary == Boundary::Periodic ? 0 : n - 1) : i;
    const Cons& qL = s.q[iL];
    const Cons& qR = s.q[iR];
    auto fL = cons_flux(qL, g);
    auto fR = cons_flux(qR, g);
    double lam = std::max(wave_speed(qL, g), wave_speed(qR, g));
    // conservative components in q-index order 0,1,2,4
    const int comp[4] = {0, 1, 2, 4};
    for (int c = 0; c < 4; ++c) {
      w.flux[i][c] = 0.5 * (fL[c] + fR[c]) - 0.5 * lam * (qR[comp[c]] - qL[comp[c]]);
    }
  }

  for (int i = 0; i < n; ++i) {
    const int comp[4] = {0, 1, 2, 4};
    for (int c = 0; c < 4; ++c) {
      w.rhs[i][comp[c]] = -(w.flux[i + 1][c] - w.flux[i][c]) * inv_dx;
    }
    Prim p = cons_to_prim(s.q[i]);
    double u = p[1], v = p[2];
    int il = left_of(i, n, s.boundary);
    int ir = right_of(i, n, s.boundary);
    double ha = s.q[i][3], haL = s.q[il][3], haR = s.q[ir][3];
    // u (ha)_x upwinded on the sign of u
    double dha_up = u >= 0.0 ? (ha - haL) : (haR - ha);
    w.rhs[i][3] = -u * dha_up * inv_dx;
    // v (ha)_x central
    w.rhs[i][4] += -v * (haR - haL) * (0.5 * inv_dx);
    // Coriolis sources
    w.rhs[i][1] += -f0 * s.q[i][2];
    w.rhs[i][2] += f0 * s.q[i][1];
  }
}

}  // namespace

StepStats step(GridState& state, double g, double f0, const SchemeConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0)) throw FvError("cfl must be in (0, 1)");
  check_positivity(state, "step entry");

  double max_speed = 0.0;
  for (const auto& q : state.q) max_speed = std::max(max_speed, wave_speed(q, g));
  double dt = cfg.cfl * state.dx / (cfg.wave_speed_safety * std::max(max_speed, 1e-14));
  StepStats stats{dt, max_speed};
  step_by(state, g, f0, cfg, dt);
  return stats;
}

void step_by(GridState& state, double g, double f0, const SchemeConfig& cfg, double dt) {
  (void)cfg;
  if (!(dt > 0.0) || !std::isfinite(dt)) throw FvError("CFL underflow: nonpositive time step");
  static thread_local Workspace w;
  const int n = state.n_cells;

  // SSP-RK2 (Heun): q1 = q + dt L(q); q <- (q + q1 + dt L(q1)) / 2
  spatial_rhs(state, g, f0, w);
  GridState stage = state;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 5; ++c) stage.q[i][c] = state.q[i][c] + dt * w.rhs[i][c];
  }
  stage.time = state.time + dt;
  check_positivity(stage, "first RK stage");

  spatial_rhs(stage, g, f0, w);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 5; ++c) {
      state.q[i][c] = 0.5 * (state.q[i][c] + stage.q[i][c] + dt * w.rhs[i][c]);
    }
  }
  state.time += dt;
  check_positivity(state, "step exit");
}

RunResult run_until(GridState state, double T, double g, double f0, const SchemeConfig& cfg,
                    const std::vector<int>& probe_cells) {
  RunResult result;
  result.probes.reserve(probe_cells.size());
  for (int c : probe_cells) result.probes.push_back({c, {}, {}});

  auto record = [&](const GridState& s) {
    for (auto& p : result.probes) {
      p.t.push_back(s.time);
      p.values.push_back(s.q[p.cell]);
    }
  };
  record(state);

  while (state.time < T - 1e-14 * std::max(1.0, std::abs(T))) {
    double max_speed = 0.0;
    for (const auto& q : state.q) max_speed = std::max(max_speed, wave_speed(q, g));
    double dt = cfg.cfl * state.dx / (cfg.wave_speed_safety * std::max(max_speed, 1e-14));
    if (state.time + dt > T) dt = T - state.time;  // land exactly on T
    step_by(state, g, f0, cfg, dt);
    ++result.steps;
    record(state);
  }
  state.time = T;
  result.state = std::move(state);
  return result;
}

double ErrorNorms::total_l1() const {
  double s = 0.0;
  for (double v : l1) s += v;
  return s;
}

ErrorNorms compare_to_fields(const GridState& state,
                             const std::function<Prim(double, double)>& fields,
                             double interior_margin) {
  ErrorNorms norms;
  const double lo = state.x0 + interior_margin;
  const double hi = state.x0 + state.n_cells * state.dx - interior_margin;
  for (int i = 0; i < state.n_cells; ++i) {
    double x = state.cell_center(i);
    if (x < lo || x > hi) continue;
    Prim have = cons_to_prim(state.q[i]);
    Prim want = fields(x, state.time);
    for (int c = 0; c < 5; ++c) {
      double e = std::abs(have[c] - want[c]);
      norms.l1[c] += e * state.dx;
      norms.linf[c] = std::max(norms.linf[c], e);
    }
  }
  return norms;
}

}  // namespace swsym
