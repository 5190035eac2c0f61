#include <doctest.h>

#include <cmath>

#include "swsym/reductions.hpp"

using namespace swsym;

namespace {

constexpr double kPi = 3.14159265358979323846;

ReductionParams default_params(const std::string& name) {
  ReductionParams p;
  p.g = 1.0;
  p.f0 = name == "X3" ? 0.0 : 1.0;
  p.constants = {{"h0", 1},    {"u0", 0.5}, {"v0", 0.25}, {"a0", 1},   {"b0", 0.5},
                 {"b1", 0.25}, {"U0", 0.5}, {"V0", 0.25}, {"B0", 0.5}, {"a2", 1},
                 {"z2", 0.5},  {"z3", 0.5}, {"a10", 1}};
  return p;
}

ResidualSampleSpec away_from_origin() {
  ResidualSampleSpec spec;
  spec.t_lo = 0.3;
  spec.t_hi = 2.8;
  return spec;
}

}  // namespace

TEST_CASE("every cataloged reduction matches its reduced system") {
  ZeroTestOptions opt;
  for (const auto& rc : reduction_catalog()) {
    auto p = default_params(rc.name);
    auto sys = build_system(p.g, p.f0);
    auto rr = reduce(rc, p, sys, opt);
    CAPTURE(rc.name);
    CHECK(rr.verified);
    CHECK(rr.equations.size() == 5);
  }
}

TEST_CASE("parameter preconditions are enforced") {
  ZeroTestOptions opt;
  auto sys = build_system(1.0, 1.0);

  auto p = default_params("X3");
  p.f0 = 1.0;  // X3 is not admitted with the Coriolis term
  CHECK_THROWS_AS(reduce(reduction_case("X3"), p, sys, opt), ReductionError);

  auto q = default_params("X1+a2X2");
  q.constants["u0"] = 0.0;
  CHECK_THROWS_AS(reduce(reduction_case("X1+a2X2"), q, sys, opt), ReductionError);

  auto r = default_params("Z2");
  r.constants.erase("h0");
  CHECK_THROWS_AS(reduce(reduction_case("Z2"), r, sys, opt), ReductionError);

  CHECK_THROWS_AS(reduction_case("nope"), ReductionError);
}

TEST_CASE("exact closed forms: X2 and X3") {
  auto spec = away_from_origin();

  auto p2 = default_params("X2");
  auto sol2 = reduction_case("X2").printed_form(p2);
  auto rep2 = residual_check(*sol2, build_system(p2.g, p2.f0), spec);
  CHECK(rep2.overall() <= 1e-10);

  auto p3 = default_params("X3");
  auto sol3 = reduction_case("X3").printed_form(p3);
  auto rep3 = residual_check(*sol3, build_system(p3.g, p3.f0), spec);
  CHECK(rep3.overall() == 0.0);  // constant equilibrium, residual exactly zero
}

TEST_CASE("printed vs corrected closed forms") {
  auto spec = away_from_origin();
  auto sys = build_system(1.0, 1.0);

  // Z2 / Z3: the printed constants pairings fail, the corrected forms solve
  for (const auto* name : {"Z2", "Z3"}) {
    auto p = default_params(name);
    const auto& rc = reduction_case(name);
    CAPTURE(name);
    CHECK(residual_check(*rc.printed_form(p), sys, spec).overall() > 1e-3);
    CHECK(residual_check(*rc.corrected_form(p), sys, spec).overall() <= 1e-10);
  }

  // X10 cases: printed is exact at f0 = 1, the corrected form at any f0
  for (const auto* name : {"X10+z2Z2", "X10+z3Z3"}) {
    auto p = default_params(name);
    const auto& rc = reduction_case(name);
    CAPTURE(name);
    CHECK(residual_check(*rc.printed_form(p), sys, spec).overall() <= 1e-8);
    CHECK(residual_check(*rc.corrected_form(p), sys, spec).overall() <= 1e-8);

    auto p7 = p;
    p7.f0 = 0.5;
    auto sys7 = build_system(1.0, 0.5);
    ResidualSampleSpec wide = spec;
    wide.t_hi = 5.6;  // keep a few periods at the slower rotation
    CHECK(residual_check(*rc.printed_form(p7), sys7, wide).overall() > 1e-3);
    CHECK(residual_check(*rc.corrected_form(p7), sys7, wide).overall() <= 1e-8);
  }

  // the soliton family: printed U, V do not solve the reduced system
  {
    auto p = default_params("X2+a10X10+z2Z2");
    const auto& rc = reduction_case("X2+a10X10+z2Z2");
    CHECK(residual_check(*rc.printed_form(p), sys, spec).overall() > 1e-3);
    CHECK(residual_check(*rc.corrected_form(p), sys, spec).overall() <= 1e-8);
  }
}

TEST_CASE("every closed form satisfies its own invariant-surface condition") {
  auto spec = away_from_origin();
  for (const auto& rc : reduction_catalog()) {
    auto p = default_params(rc.name);
    auto gen = rc.generator(p);
    for (const auto& factory : {rc.printed_form, rc.corrected_form}) {
      if (!factory) continue;
      auto sol = factory(p);
      CAPTURE(sol->name());
      // corrected or printed, the ansatz shape is shared, so both satisfy it
      auto rep = invariant_surface_check(gen, *sol, spec);
      CHECK(rep.pass);
    }
  }

  // negative control: the time-dependent stationary solution is not X1-invariant
  auto p = default_params("X2");
  auto sol = reduction_case("X2").printed_form(p);
  auto x1 = named_generator("X1", Expr::integer(1));
  auto rep = invariant_surface_check(x1, *sol, spec);
  CHECK(!rep.pass);
}

TEST_CASE("Z2 and Z3 families coincide under a quarter-period shift") {
  auto p = default_params("Z2");
  auto z2 = reduction_case("Z2").corrected_form(p);
  auto z3 = reduction_case("Z3").corrected_form(p);
  const double shift = kPi / (2 * p.f0);
  SplitMix64 rng(0x5a5a);
  double max_diff = 0.0, max_pi4_diff = 0.0;
  for (int i = 0; i < 50; ++i) {
    double t = 0.3 + 0.9 * rng.uniform01();  // keeps both families off their walls
    double x = rng.sample_away_from_zero();
    auto a = z2->jet(t + shift, x);
    auto b = z3->jet(t, x);
    auto c = z2->jet(t + kPi / 4, x);  // the stated pi/4 shift does not map the families
    for (int k = 0; k < 5; ++k) {
      max_diff = std::max(max_diff, std::abs(a.psi[k] - b.psi[k]));
      max_pi4_diff = std::max(max_pi4_diff, std::abs(c.psi[k] - b.psi[k]));
    }
  }
  CHECK(max_diff <= 1e-12);
  CHECK(max_pi4_diff > 1e-2);
}

TEST_CASE("symmetries map solutions to solutions") {
  // push the exact stationary solution through every full-case flow
  auto p = default_params("X2");
  auto sol = reduction_case("X2").printed_form(p);
  auto sys = build_system(1.0, 1.0);
  ResidualSampleSpec spec = away_from_origin();
  const double tol = 1e-10;
  for (const auto* name : {"X1", "X2", "X10", "Z1g", "Z2", "Z3"}) {
    TransformedSolution moved(*sol, FlowMap(name, 0.3, 1.0));
    auto rep = residual_check(moved, sys, spec);
    CAPTURE(name);
    CHECK(rep.overall() <= 10 * tol);
  }

  // and the corrected Z2 solution through the coriolis-case scalings
  auto pz = default_params("Z2");
  auto solz = reduction_case("Z2").corrected_form(pz);
  auto sys0 = build_system(0.0, 1.0);
  for (const auto* name : {"X1", "X2", "X4", "X10", "Z1", "Z2", "Z3"}) {
    TransformedSolution moved(*solz, FlowMap(name, 0.25, 1.0));
    auto rep = residual_check(moved, sys0, spec);
    CAPTURE(name);
    CHECK(rep.overall() <= 10 * tol);
  }
}

TEST_CASE("reduced integration: Z1 preserves A exactly") {
  auto p = default_params("Z1");
  OdeSolverConfig cfg;
  std::vector<double> pts;
  for (int i = 0; i <= 100; ++i) pts.push_back(0.05 * i);
  auto tr = integrate_reduced(reduction_case("Z1"), p, {{"H", 0.5}, {"U", 1.0}, {"V", 0.0}, {"A", 1.0}, {"B", 0.0}},
                              cfg, pts);
  REQUIRE(tr.completed());
  int iA = 3;
  for (const auto& row : tr.states) CHECK(std::abs(row[iA] - 1.0) <= 1e-9);
}

TEST_CASE("travelling-wave system: smooth run, self-convergence, wall hit") {
  const auto& rc = reduction_case("X1+a2X2");

  // magnetically dominated parameters keep the run away from the critical locus
  auto p = default_params("X1+a2X2");
  p.constants["u0"] = 0.5;
  p.constants["a0"] = 1.0;
  OdeSolverConfig cfg;
  std::vector<double> pts;
  for (int i = 0; i <= 200; ++i) pts.push_back(0.025 * i);
  auto tr = integrate_reduced(rc, p, {{"h", 1.0}, {"v", 0.0}}, cfg, pts);
  REQUIRE(tr.completed());

  OdeSolverConfig tight = cfg;
  tight.rtol = cfg.rtol / 2;
  tight.atol = cfg.atol / 2;
  auto tr2 = integrate_reduced(rc, p, {{"h", 1.0}, {"v", 0.0}}, tight, pts);
  REQUIRE(tr2.completed());
  for (int c = 0; c < 2; ++c) {
    CHECK(std::abs(tr.states.back()[c] - tr2.states.back()[c]) <= 1e-6);
  }

  // kinetically dominated parameters drive h onto the critical locus
  auto pw = default_params("X1+a2X2");
  pw.constants["u0"] = 1.0;
  pw.constants["a0"] = 0.5;
  auto trw = integrate_reduced(rc, pw, {{"h", 1.0}, {"v", 0.0}}, cfg, pts);
  CHECK(trw.status == OdeStatus::WallHit);
  CHECK(trw.stop_location > 0.0);
  CHECK(trw.stop_location < 0.5);
}

TEST_CASE("sp equation: stationarity point of h") {
  // v0 chosen so the non-derivative terms balance at zeta = 1
  auto p = default_params("X2+z2Z2");
  double u0 = 0.5, a0 = 1.0, f0 = 1.0, zhat = 1.0;
  p.constants["u0"] = u0;
  p.constants["a0"] = a0;
  p.constants["v0"] = f0 * u0 * u0 * zhat / (a0 * a0 - u0 * u0);
  auto od = reduction_case("X2+z2Z2").ode(p);
  double h = 1.3, dh = 0;
  od.rhs(zhat, &h, &dh);
  CHECK(std::abs(dh) <= 1e-14);

  // and h actually flattens there along the trajectory
  OdeSolverConfig cfg;
  std::vector<double> pts = {0, 0.5, 1.0, 1.5, 2.0};
  auto tr = integrate_reduced(reduction_case("X2+z2Z2"), p, {{"h", 1.0}}, cfg, pts);
  REQUIRE(tr.completed());
}

TEST_CASE("reduced ODE systems reproduce the closed forms") {
  // Z2: integrate the reduced system from closed-form data and compare
  {
    auto p = default_params("Z2");
    double f0 = p.f0, h0 = 1, a0 = 1, U0 = 0.5, V0 = 0.25, b1 = 0.25;
    auto H = [&](double t) { return h0 / std::sin(f0 * t); };
    auto U = [&](double t) {
      return U0 / std::sin(f0 * t) + V0 * std::cos(f0 * t) / std::sin(f0 * t);
    };
    auto A = [&](double t) { return a0 * std::sin(f0 * t); };
    auto B = [&](double t) { return b1 - a0 * std::cos(f0 * t); };
    double t0 = 0.5, t1 = 2.5;
    OdeSolverConfig cfg;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    auto tr = integrate_reduced(
        reduction_case("Z2"), p,
        {{"H", H(t0)}, {"U", U(t0)}, {"V", V0}, {"A", A(t0)}, {"B", B(t0)}}, cfg, {t0, t1});
    REQUIRE(tr.completed());
    CHECK(tr.states.back()[0] == doctest::Approx(H(t1)).epsilon(1e-7));
    CHECK(tr.states.back()[1] == doctest::Approx(U(t1)).epsilon(1e-7));
    CHECK(tr.states.back()[2] == doctest::Approx(V0).epsilon(1e-10));
    CHECK(tr.states.back()[3] == doctest::Approx(A(t1)).epsilon(1e-7));
    CHECK(tr.states.back()[4] == doctest::Approx(B(t1)).epsilon(1e-7));
  }

  // soliton family: reduced states against the corrected closed form
  {
    auto p = default_params("X2+a10X10+z2Z2");
    auto sol = reduction_case("X2+a10X10+z2Z2").corrected_form(p);
    double z2 = 0.5, a10 = 1, h0 = 1, a0 = 1, U0 = 0.5, V0 = 0.25, f0 = 1;
    auto w = [&](double t) { return 1 + z2 * std::sin(f0 * t); };
    auto Uc = [&](double t) {
      double P = V0 * std::cos(f0 * t) - U0 * (std::sin(f0 * t) + z2) +
                 (a10 / h0) * (z2 * t * std::cos(f0 * t) - w(t) / f0);
      return P / w(t);
    };
    auto Vc = [&](double t) {
      return (V0 * std::sin(f0 * t) + U0 * std::cos(f0 * t) +
              (a10 * z2 / h0) * t * std::sin(f0 * t)) /
             w(t);
    };
    double t1 = 2.0;
    OdeSolverConfig cfg;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    auto tr = integrate_reduced(
        reduction_case("X2+a10X10+z2Z2"), p,
        {{"H", h0}, {"U", Uc(0)}, {"V", Vc(0)}, {"A", a0}, {"B", 0.5}}, cfg, {0, t1});
    REQUIRE(tr.completed());
    CHECK(tr.states.back()[0] == doctest::Approx(h0 / w(t1)).epsilon(1e-7));
    CHECK(tr.states.back()[1] == doctest::Approx(Uc(t1)).epsilon(1e-7));
    CHECK(tr.states.back()[2] == doctest::Approx(Vc(t1)).epsilon(1e-7));
    CHECK(tr.states.back()[3] == doctest::Approx(a0 * w(t1)).epsilon(1e-7));
    // B from the quadrature-backed solution at x = 0
    auto jet = sol->jet(t1, 0.0);
    CHECK(tr.states.back()[4] == doctest::Approx(jet.psi[4]).epsilon(1e-6));
  }
}

TEST_CASE("trajectory CSV format") {
  auto p = default_params("X2");
  OdeSolverConfig cfg;
  auto tr = integrate_reduced(reduction_case("X2"), p,
                              {{"H", 1}, {"U", 0.5}, {"V", 0.25}, {"A", 1}, {"B", 0.5}}, cfg,
                              {0, 0.5, 1.0});
  auto csv = tr.to_csv();
  CHECK(csv.rfind("t,H,U,V,A,B\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');
  // non-trivial values are printed with 17 significant digits
  std::size_t second_line = csv.find('\n', csv.find('\n') + 1) + 1;
  std::size_t line_end = csv.find('\n', second_line);
  std::string row = csv.substr(second_line, line_end - second_line);
  std::size_t longest = 0, start = 0;
  for (std::size_t i = 0; i <= row.size(); ++i) {
    if (i == row.size() || row[i] == ',') {
      longest = std::max(longest, i - start);
      start = i + 1;
    }
  }
  CHECK(longest >= 17);
  CHECK_THROWS_AS(integrate_reduced(reduction_case("X2"), p, {{"H", 1}}, cfg, {0, 1}),
                  ReductionError);
}
