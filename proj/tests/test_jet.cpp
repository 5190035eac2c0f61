#include <doctest.h>

#include <cmath>

#include "swsym/jet.hpp"
#include "swsym/swmhd.hpp"

using namespace swsym;

namespace {
Expr S(const char* n) { return Expr::symbol(n); }
}

TEST_CASE("jet space coordinates are fixed and distinct") {
  const auto& js = JetSpace::instance();
  CHECK(js.base()[0] == "t");
  CHECK(js.base()[6] == "b");
  CHECK(js.deriv(0, 0) == "h_t");
  CHECK(js.deriv(4, 1) == "b_x");
  std::set<std::string> all(js.base().begin(), js.base().end());
  for (int a = 0; a < JetSpace::n_dependent; ++a) {
    for (int i = 0; i < JetSpace::n_independent; ++i) all.insert(js.deriv(a, i));
  }
  CHECK(all.size() == 17);
}

TEST_CASE("total derivative") {
  CHECK(total_derivative(S("t"), 0).is_one());
  CHECK(total_derivative(S("h") * S("u"), 1) == S("h") * S("u_x") + S("h_x") * S("u"));
  Expr d = total_derivative(Expr::sin(S("f0") * S("t")) * S("x"), 0);
  CHECK(d == S("f0") * Expr::cos(S("f0") * S("t")) * S("x"));

  // first-order truncation guard: inputs with derivative coordinates are rejected
  CHECK_THROWS_AS(total_derivative(S("h_x"), 0), JetError);
}

TEST_CASE("point-symmetry validation") {
  VectorField bad;
  bad.eta(0) = S("h_x");
  CHECK_THROWS_AS(bad.validate(), JetError);
  CHECK_THROWS_AS(prolong_first(bad), JetError);
}

TEST_CASE("prolongation of cataloged generators") {
  Expr f0 = S("f0");

  // constant-coefficient translation: every eta1 entry vanishes
  auto P1 = prolong_first(named_generator("X1", f0));
  for (const auto& e : P1.eta1) CHECK(e.is_zero());

  // Galilean boost: only the (u, t) slot, with -u_x
  auto P5 = prolong_first(named_generator("X5", f0));
  CHECK(P5.eta1_at(1, 0) == -S("u_x"));
  int nonzero = 0;
  for (const auto& e : P5.eta1) nonzero += e.is_zero() ? 0 : 1;
  CHECK(nonzero == 1);

  // base scaling: eta1[A][i] = -Psi^A_i for every A, i
  auto P3 = prolong_first(named_generator("X3", f0));
  const auto& js = JetSpace::instance();
  for (int a = 0; a < JetSpace::n_dependent; ++a) {
    for (int i = 0; i < JetSpace::n_independent; ++i) {
      CHECK(P3.eta1_at(a, i) == -js.deriv_symbol(a, i));
    }
  }
}

TEST_CASE("prolongation is linear in the generator") {
  Expr f0 = Expr::rational(1, 2);
  SplitMix64 rng(0x9e77);
  const auto& names = generator_catalog_names();
  for (int trial = 0; trial < 25; ++trial) {
    auto X = named_generator(names[rng.next() % names.size()], f0);
    auto Y = named_generator(names[rng.next() % names.size()], f0);
    Rational alpha(static_cast<long long>(rng.next() % 7) - 3, 1 + (rng.next() % 3));
    Rational beta(static_cast<long long>(rng.next() % 7) - 3, 1 + (rng.next() % 3));
    auto combo = X.scaled(alpha) + Y.scaled(beta);
    auto P = prolong_first(combo);
    auto PX = prolong_first(X);
    auto PY = prolong_first(Y);
    for (int k = 0; k < JetSpace::n_deriv; ++k) {
      Expr want = Expr::rational(alpha) * PX.eta1[k] + Expr::rational(beta) * PY.eta1[k];
      CHECK(is_zero_probabilistic(P.eta1[k] - want).zero);
    }
  }
}

TEST_CASE("prolongation agrees with the finite-difference transformation of derivatives") {
  // polynomial test fields give a consistent jet at any point
  const double f0 = 1.0;
  SplitMix64 rng(0xfeed);
  const std::vector<std::string> names = {"X1", "X2", "X3", "X4", "X5",  "X6", "X7",
                                          "X8", "X9", "X10", "Y", "Z1", "Z1g", "Z2", "Z3"};
  int tested = 0;
  for (const auto& name : names) {
    for (int rep = 0; rep < 2; ++rep, ++tested) {
      // quadratic fields Psi^A(t,x) with random coefficients, bounded away from 0
      double c[5][6];
      for (auto& row : c) {
        for (double& v : row) v = 0.3 * rng.sample_away_from_zero();
      }
      auto fields = [&](double t, double x) {
        FieldJet j;
        for (int a = 0; a < 5; ++a) {
          j.psi[a] = 1.5 + c[a][0] + c[a][1] * t + c[a][2] * x + c[a][3] * t * x +
                     c[a][4] * t * t + c[a][5] * x * x;
          j.psi_t[a] = c[a][1] + c[a][3] * x + 2 * c[a][4] * t;
          j.psi_x[a] = c[a][2] + c[a][3] * t + 2 * c[a][5] * x;
        }
        return j;
      };
      double t = 0.4 + 0.1 * rng.uniform01(), x = 0.7 + 0.1 * rng.uniform01();
      FieldJet jet = fields(t, x);

      // evaluate eta1 at this jet point
      auto X = named_generator(name, Expr::integer(1));
      auto P = prolong_first(X);
      const auto& js = JetSpace::instance();
      Assignment at{{"t", t}, {"x", x}};
      for (int a = 0; a < 5; ++a) {
        at.values[js.dependent()[a]] = jet.psi[a];
        at.values[js.deriv(a, 0)] = jet.psi_t[a];
        at.values[js.deriv(a, 1)] = jet.psi_x[a];
      }

      // finite-difference derivative of the pushed-forward jet along eps
      const double eps = 1e-4;
      FlowMap fwd(name, eps, f0), bwd(name, -eps, f0);
      FieldJet jp = fwd.push(t, x, jet);
      FieldJet jm = bwd.push(t, x, jet);
      for (int a = 0; a < 5; ++a) {
        double want_t = P.eta1_at(a, 0).eval(at);
        double want_x = P.eta1_at(a, 1).eval(at);
        double got_t = (jp.psi_t[a] - jm.psi_t[a]) / (2 * eps);
        double got_x = (jp.psi_x[a] - jm.psi_x[a]) / (2 * eps);
        CHECK(std::abs(got_t - want_t) <= 1e-5 * (1 + std::abs(want_t)));
        CHECK(std::abs(got_x - want_x) <= 1e-5 * (1 + std::abs(want_x)));
      }
    }
  }
  CHECK(tested >= 20);
}
