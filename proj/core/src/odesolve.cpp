#include "swsym/odesolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swsym {

std::string ode_status_name(OdeStatus s) {
  switch (s) {
    case OdeStatus::Done:
      return "done";
    case OdeStatus::WallHit:
      return "wall_hit";
    case OdeStatus::StepUnderflow:
      return "step_underflow";
    case OdeStatus::MaxStepsExceeded:
      return "max_steps_exceeded";
  }
  return "?";
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

}  // namespace

OdeResult integrate_ode(const OdeRhs& f, int dim, double s0, std::vector<double> y0,
                        const std::vector<double>& s_out, const OdeSolverConfig& cfg,
                        const std::vector<OdeGuard>& guards) {
  OdeResult result;
  if (static_cast<int>(y0.size()) != dim) throw std::invalid_argument("integrate_ode: bad y0 size");
  if (s_out.empty()) {
    result.stop_location = s0;
    return result;
  }
  const double dir = s_out.back() >= s0 ? 1.0 : -1.0;

  auto guard_value = [&](double s, const double* y) {
    double worst = 1.0;
    for (const auto& g : guards) worst = std::min(worst, g(s, y));
    return worst;
  };

  std::vector<double> y = y0;
  double s = s0;
  if (guard_value(s, y.data()) <= 0.0) {
    result.status = OdeStatus::WallHit;
    result.stop_location = s;
    result.stop_reason = "initial state on or beyond a domain guard";
    return result;
  }

  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  std::vector<double> ytmp(dim), y5(dim);

  f(s, y.data(), k1.data());
  const double span = std::abs(s_out.back() - s0);
  double dt = dir * std::min({span > 0 ? span / 100.0 : 1.0, cfg.max_step, 1.0});
  if (dt == 0.0) dt = dir * 1e-6;

  std::size_t next_out = 0;
  while (next_out < s_out.size() && std::abs(s_out[next_out] - s) <= 1e-14 * (1 + std::abs(s))) {
    result.s.push_back(s);
    result.y.push_back(y);
    ++next_out;
  }

  using Stages = std::initializer_list<std::pair<double, const std::vector<double>*>>;

  long steps = 0;
  while (next_out < s_out.size()) {
    if (++steps > cfg.max_steps) {
      result.status = OdeStatus::MaxStepsExceeded;
      result.stop_location = s;
      result.stop_reason = "step budget exhausted";
      return result;
    }
    double target = s_out[next_out];
    bool clipped = false;
    double dt_natural = std::abs(dt);
    if ((target - s) * dir <= std::abs(dt)) {
      dt = target - s;
      clipped = true;
    }
    if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(s))) {
      result.status = OdeStatus::StepUnderflow;
      result.stop_location = s;
      result.stop_reason = "step size underflow near s = " + std::to_string(s);
      return result;
    }

    auto stage = [&](std::vector<double>& out, Stages terms) {
      for (int i = 0; i < dim; ++i) {
        double acc = y[i];
        for (const auto& [c, k] : terms) acc += dt * c * (*k)[i];
        out[i] = acc;
      }
    };

    stage(ytmp, {{A21, &k1}});
    f(s + C2 * dt, ytmp.data(), k2.data());
    stage(ytmp, {{A31, &k1}, {A32, &k2}});
    f(s + C3 * dt, ytmp.data(), k3.data());
    stage(ytmp, {{A41, &k1}, {A42, &k2}, {A43, &k3}});
    f(s + C4 * dt, ytmp.data(), k4.data());
    stage(ytmp, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}});
    f(s + C5 * dt, ytmp.data(), k5.data());
    stage(ytmp, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}});
    f(s + dt, ytmp.data(), k6.data());
    stage(y5, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
    f(s + dt, y5.data(), k7.data());

    bool finite = true;
    double err = 0.0;
    for (int i = 0; i < dim; ++i) {
      double e = dt * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
      double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / sc) * (e / sc);
      if (!std::isfinite(y5[i])) finite = false;
    }
    err = std::sqrt(err / dim);

    if (!finite || err > 1.0) {
      double shrink = finite ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      dt *= shrink;
      continue;
    }

    // stop cleanly at a domain wall, locating it by bisection on the step
    if (guard_value(s + dt, y5.data()) <= 0.0) {
      double lo = 0.0, hi = 1.0;  // fraction of the accepted step
      std::vector<double> ymid(dim);
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        stage(ymid, {{B1 * mid, &k1},
                     {B3 * mid, &k3},
                     {B4 * mid, &k4},
                     {B5 * mid, &k5},
                     {B6 * mid, &k6}});
        if (guard_value(s + mid * dt, ymid.data()) <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      result.status = OdeStatus::WallHit;
      result.stop_location = s + lo * dt;
      result.stop_reason = "domain guard reached near s = " + std::to_string(s + lo * dt);
      return result;
    }

    s += dt;
    y.swap(y5);
    k1.swap(k7);  // FSAL

    if (clipped && std::abs(s - target) <= 1e-12 * std::max(1.0, std::abs(target))) {
      result.s.push_back(s);
      result.y.push_back(y);
      ++next_out;
    }

    double grow = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    // resume from the pre-clip step size after landing on an output point
    double base = clipped ? dt_natural : std::abs(dt);
    dt = dir * std::min(base * grow, cfg.max_step);
  }

  result.stop_location = s;
  return result;
}

}  // namespace swsym
