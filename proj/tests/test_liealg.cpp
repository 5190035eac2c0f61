#include <doctest.h>

#include <cmath>

#include "swsym/liealg.hpp"
#include "swsym/swmhd.hpp"

using namespace swsym;

namespace {

const Expr kF0 = Expr::symbol("f0");

BasisAlgebra make_algebra(SymmetryCaseId id) {
  auto c = symmetry_case(id, kF0);
  return BasisAlgebra(c.generators, kF0, c.algebra_label);
}

bool cell_is(const BasisAlgebra& alg, const char* row, const char* col, const char* expect) {
  std::vector<std::string> names;
  for (int i = 0; i < alg.dim(); ++i) names.push_back(alg.name(i));
  return structure_cell_str(alg.bracket(alg.index_of(row), alg.index_of(col)), names) == expect;
}

}  // namespace

TEST_CASE("commutator basics") {
  auto X1 = named_generator("X1", kF0);
  auto X2 = named_generator("X2", kF0);
  auto X3 = named_generator("X3", kF0);

  // [X1, X3] = X1
  auto br = commutator(X1, X3);
  for (int k = 0; k < JetSpace::n_base; ++k) {
    CHECK(is_zero_probabilistic(br.coeff[k] - X1.coeff[k]).zero);
  }
  // antisymmetry, [X, X] = 0
  CHECK(commutator(X2, X2).is_zero());
  auto ab = commutator(X1, X3);
  auto ba = commutator(X3, X1);
  for (int k = 0; k < JetSpace::n_base; ++k) {
    CHECK(is_zero_probabilistic(ab.coeff[k] + ba.coeff[k]).zero);
  }

  // [Z1, X10] = -2 X10 with the coriolis-case Z1
  auto Z1 = named_generator("Z1", kF0);
  auto X10 = named_generator("X10", kF0);
  auto z = commutator(Z1, X10);
  auto want = X10.scaled(Rational(-2));
  for (int k = 0; k < JetSpace::n_base; ++k) {
    CHECK(is_zero_probabilistic(z.coeff[k] - want.coeff[k]).zero);
  }
}

TEST_CASE("decompose_in_basis") {
  auto l6 = make_algebra(SymmetryCaseId::Full);

  // a basis element decomposes onto itself
  auto cell = l6.decompose(named_generator("X1", kF0));
  REQUIRE(cell.size() == 1);
  CHECK(cell[0].index == l6.index_of("X1"));
  CHECK(cell[0].coeff.is_one());

  // [X1, Z2] = f0 Z3
  auto br = commutator(named_generator("X1", kF0), named_generator("Z2", kF0));
  auto cell2 = l6.decompose(br);
  REQUIRE(cell2.size() == 1);
  CHECK(cell2[0].index == l6.index_of("Z3"));
  CHECK(cell2[0].coeff == kF0);

  // d/dh is independent of the six generators
  VectorField dh = VectorField::named("dh");
  dh.eta(0) = Expr::integer(1);
  CHECK_THROWS_AS(l6.decompose(dh), NotInSpanError);
}

TEST_CASE("structure tables close for all four algebras") {
  for (auto id : {SymmetryCaseId::Free, SymmetryCaseId::Gravity, SymmetryCaseId::Coriolis,
                  SymmetryCaseId::Full}) {
    auto alg = make_algebra(id);
    CHECK(alg.dim() == symmetry_case(id, kF0).expected_dimension);
    // antisymmetry of the stored table
    for (int i = 0; i < alg.dim(); ++i) {
      CHECK(alg.bracket(i, i).empty());
      for (int j = 0; j < alg.dim(); ++j) {
        auto cij = alg.bracket(i, j);
        auto cji = alg.bracket(j, i);
        REQUIRE(cij.size() == cji.size());
        for (std::size_t m = 0; m < cij.size(); ++m) {
          CHECK(cij[m].index == cji[m].index);
          CHECK((cij[m].coeff + cji[m].coeff).is_zero());
        }
      }
    }
  }
}

TEST_CASE("selected table cells") {
  auto l7 = make_algebra(SymmetryCaseId::Coriolis);
  CHECK(cell_is(l7, "X1", "Z2", "f0*Z3"));
  CHECK(cell_is(l7, "X2", "Z1", "X2"));
  CHECK(cell_is(l7, "X10", "Z1", "2*X10"));
  CHECK(cell_is(l7, "X4", "X10", "-1*X10"));

  // the g != 0 scaling changes exactly the X10 bracket
  auto l6 = make_algebra(SymmetryCaseId::Full);
  CHECK(cell_is(l6, "X10", "Z1", "4*X10"));
  CHECK(cell_is(l6, "X2", "Z1", "X2"));
}

TEST_CASE("Jacobi identity holds for all four algebras") {
  for (auto id : {SymmetryCaseId::Free, SymmetryCaseId::Gravity, SymmetryCaseId::Coriolis,
                  SymmetryCaseId::Full}) {
    auto c = symmetry_case(id, kF0);
    const auto& b = c.generators;
    const int n = static_cast<int>(b.size());
    ZeroTestOptions opt;
    opt.trials = 10;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          auto jac = commutator(commutator(b[i], b[j]), b[k]) +
                     commutator(commutator(b[j], b[k]), b[i]) +
                     commutator(commutator(b[k], b[i]), b[j]);
          for (int m = 0; m < JetSpace::n_base; ++m) {
            CHECK(is_zero_probabilistic(jac.coeff[m], opt).zero);
          }
        }
      }
    }
  }
}

TEST_CASE("adjoint matrices and actions") {
  auto l6 = make_algebra(SymmetryCaseId::Full);
  const double f0 = 1.0;
  const int iX1 = l6.index_of("X1"), iX2 = l6.index_of("X2"), iX10 = l6.index_of("X10");
  const int iZ1 = l6.index_of("Z1"), iZ2 = l6.index_of("Z2"), iZ3 = l6.index_of("Z3");

  // ad_{X1} has the rotation block on (Z2, Z3)
  auto M = l6.adjoint_matrix(iX1, f0);
  CHECK(M(iZ3, iZ2) == doctest::Approx(f0));
  CHECK(M(iZ2, iZ3) == doctest::Approx(-f0));
  // ad of a generator kills its own column
  CHECK(M.col(iX1).norm() == 0.0);

  // Ad(exp(eps X2)) Z1 = Z1 - eps X2
  Eigen::VectorXd z1 = Eigen::VectorXd::Zero(6);
  z1(iZ1) = 1.0;
  auto out = l6.adjoint_action(iX2, z1, 0.7, f0);
  CHECK(out(iZ1) == doctest::Approx(1.0));
  CHECK(out(iX2) == doctest::Approx(-0.7));

  // rotation: Ad(exp(eps X1)) Z2 = cos(f0 eps) Z2 - sin(f0 eps) Z3
  Eigen::VectorXd z2 = Eigen::VectorXd::Zero(6);
  z2(iZ2) = 1.0;
  auto rot = l6.adjoint_action(iX1, z2, 0.7, f0);
  CHECK(rot(iZ2) == doctest::Approx(std::cos(0.7)).epsilon(1e-12));
  CHECK(rot(iZ3) == doctest::Approx(-std::sin(0.7)).epsilon(1e-12));

  // scaling: Ad(exp(eps Z1)) X2 = e^eps X2  (from [Z1, X2] = -X2)
  Eigen::VectorXd x2 = Eigen::VectorXd::Zero(6);
  x2(iX2) = 1.0;
  auto sc = l6.adjoint_action(iZ1, x2, 0.3, f0);
  CHECK(sc(iX2) == doctest::Approx(std::exp(0.3)).epsilon(1e-12));

  // fixed point: Ad(exp(eps A)) A = A
  for (int A = 0; A < 6; ++A) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(6);
    e(A) = 1.0;
    auto self = l6.adjoint_action(A, e, 1.3, f0);
    CHECK((self - e).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // full-case correction: Ad(exp(eps X10)) Z1 = Z1 - 4 eps X10
  auto corr = l6.adjoint_action(iX10, z1, 0.5, f0);
  CHECK(corr(iX10) == doctest::Approx(-2.0));
}

TEST_CASE("adjoint group law and short-time series") {
  auto l6 = make_algebra(SymmetryCaseId::Full);
  const double f0 = 1.0;
  SplitMix64 rng(0x6a10);
  for (int trial = 0; trial < 50; ++trial) {
    int A = static_cast<int>(rng.next() % 6);
    Eigen::VectorXd e(6);
    for (int i = 0; i < 6; ++i) e(i) = rng.sample_away_from_zero();
    double e1 = -2.0 + 4.0 * rng.uniform01();
    double e2 = -2.0 + 4.0 * rng.uniform01();
    auto once = l6.adjoint_action(A, l6.adjoint_action(A, e, e2, f0), e1, f0);
    auto joint = l6.adjoint_action(A, e, e1 + e2, f0);
    CHECK((once - joint).cwiseAbs().maxCoeff() <= 1e-10);

    // two-term series at eps = 1e-4
    const double eps = 1e-4;
    Eigen::MatrixXd M = l6.adjoint_matrix(A, f0);
    Eigen::VectorXd series = e - eps * (M * e);
    auto exact = l6.adjoint_action(A, e, eps, f0);
    CHECK((exact - series).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("branch classification") {
  CHECK(classify_branch({1, 0, 0, 2, 0, 0}).branch == Branch::I);
  auto ii = classify_branch({1, 0, 0, 0, 0, 0});
  CHECK(ii.branch == Branch::II);
  CHECK(ii.representative == "a1*X1 + a2*X2 + a10*X10");
  CHECK(classify_branch({0, 0, 0, 1, 0, 0}).branch == Branch::III);
  auto iv = classify_branch({0, 1, 0, 0, 3, 0});
  CHECK(iv.branch == Branch::IV);
  CHECK(iv.representative == "a2*X2 + a10*X10 + z2*Z2 + z3*Z3");
  CHECK_THROWS_AS(classify_branch({0, 0, 0, 0, 0, 0}), ExprError);

  // tie-breaking happens on max-norm-normalized coefficients
  CHECK(classify_branch({1e-300, 0, 0, 1, 0, 0}).branch == Branch::III);
}

TEST_CASE("optimal system is the verbatim 21-element list") {
  const auto& os = optimal_system();
  CHECK(os.size() == 21);
  CHECK(os[0].description == "X1");
  CHECK(os[2].description == "X3");
  CHECK(!os[2].note.empty());  // the suspect entry is flagged, not silently dropped
  CHECK(os.back().description == "a2*X2 + a10*X10 + z2*Z2 + z3*Z3");
}

TEST_CASE("adjoint invariants of the six-dimensional algebra") {
  auto l6 = make_algebra(SymmetryCaseId::Full);
  auto report = invariance_check(l6, 60, 1.0);
  CHECK(report.ok());
  CHECK(report.max_a1_drift <= 1e-10);
  CHECK(report.max_z1_drift <= 1e-10);

  // phi = a1 and phi = z1 annihilate both the displayed and the derived systems
  for (const auto* name : {"a1", "z1"}) {
    for (const auto& c : displayed_invariant_constraints(Expr::symbol(name))) {
      CHECK(is_zero_probabilistic(c).zero);
    }
    for (const auto& c : derived_invariant_constraints(
             l6, {"a1", "a2", "a10", "z1", "z2", "z3"}, Expr::symbol(name))) {
      CHECK(is_zero_probabilistic(c).zero);
    }
  }
  // a generic phi does not
  bool all_zero = true;
  for (const auto& c : displayed_invariant_constraints(Expr::symbol("z2"))) {
    all_zero = all_zero && is_zero_probabilistic(c).zero;
  }
  CHECK(!all_zero);
}
