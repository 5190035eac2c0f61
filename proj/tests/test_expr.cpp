#include <doctest.h>

#include <cmath>

#include "swsym/expr.hpp"

using namespace swsym;

namespace {

Expr S(const char* n) { return Expr::symbol(n); }

// random expression generator over the kernel's node set
Expr random_expr(SplitMix64& rng, int depth) {
  const std::vector<std::string> syms = {"t", "x", "h", "u", "a"};
  if (depth == 0 || rng.next() % 5 == 0) {
    if (rng.next() % 3 == 0) {
      return Expr::rational(static_cast<long long>(rng.next() % 7) - 3,
                            1 + static_cast<long long>(rng.next() % 4));
    }
    return Expr::symbol(syms[rng.next() % syms.size()]);
  }
  switch (rng.next() % 6) {
    case 0:
      return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 1:
      return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 2:
      return Expr::pow(random_expr(rng, depth - 1), 2 + static_cast<long long>(rng.next() % 2));
    case 3: {
      Expr den = random_expr(rng, depth - 1);
      if (den.is_zero()) den = S("h");
      return random_expr(rng, depth - 1) / den;
    }
    case 4:
      return Expr::sin(random_expr(rng, depth - 1));
    default:
      return Expr::cos(random_expr(rng, depth - 1));
  }
}

// rebuilds the expression through the factories, which re-canonicalizes it
Expr recanonicalize(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Rational:
    case Expr::Kind::Symbol:
      return e;
    case Expr::Kind::Sum: {
      std::vector<Expr> kids;
      for (const auto& k : e.operands()) kids.push_back(recanonicalize(k));
      return Expr::sum(kids);
    }
    case Expr::Kind::Product: {
      std::vector<Expr> kids;
      for (const auto& k : e.operands()) kids.push_back(recanonicalize(k));
      return Expr::product(kids);
    }
    case Expr::Kind::IntPower:
      return Expr::pow(recanonicalize(e.operands().front()), e.exponent());
    case Expr::Kind::Quotient:
      return Expr::quotient(recanonicalize(e.operands()[0]), recanonicalize(e.operands()[1]));
    case Expr::Kind::Sin:
      return Expr::sin(recanonicalize(e.operands().front()));
    case Expr::Kind::Cos:
      return Expr::cos(recanonicalize(e.operands().front()));
  }
  return e;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(2, 4);
  CHECK(a.num == 1);
  CHECK(a.den == 2);
  Rational b(-3, -6);
  CHECK(b.num == 1);
  Rational c(1, -2);
  CHECK(c.num == -1);
  CHECK(c.den == 2);
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
  CHECK((Rational(1, 2) / Rational(3, 2)) == Rational(1, 3));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
  CHECK_THROWS_AS(Rational(INT64_MAX, 3) * Rational(INT64_MAX, 5), OverflowError);
}

TEST_CASE("rationalize recovers small fractions") {
  CHECK(rationalize(0.5).value() == Rational(1, 2));
  CHECK(rationalize(9.81).value() == Rational(981, 100));
  CHECK(rationalize(-2.0).value() == Rational(-2));
  CHECK(!rationalize(std::sqrt(2.0), 1000, 1e-12).has_value());
}

TEST_CASE("differentiate: chain, quotient and constant rules") {
  Expr f0 = S("f0"), t = S("t"), a = S("a"), h = S("h");

  CHECK(Expr::sin(f0 * t).diff("t") == f0 * Expr::cos(f0 * t));
  CHECK(Expr::integer(7).diff("t").is_zero());

  // d/da 1/(a h) = -1/(a^2 h): the quotient rule yields -h/(ah)^2, equal
  // semantically; the kernel's canonical form is syntactic, so use the zero test
  Expr d = (Expr::integer(1) / (a * h)).diff("a");
  Expr want = Expr::integer(-1) / (Expr::pow(a, 2) * h);
  CHECK(is_zero_probabilistic(d - want).zero);
}

TEST_CASE("substitute: identity, elimination, zero denominator") {
  Expr x = S("x"), a = S("a"), h = S("h");
  CHECK(x.substitute({}) == x);

  Expr e = S("h_t") + S("h_x") * S("u") + h * S("u_x");
  Expr replaced = e.substitute({{"h_t", -(S("h_x") * S("u") + h * S("u_x"))}});
  CHECK(!replaced.depends_on("h_t"));
  CHECK(is_zero_probabilistic(replaced).zero);

  CHECK_THROWS_AS((Expr::integer(1) / (a * h)).substitute({{"a", Expr::integer(0)}}), DomainError);
}

TEST_CASE("eval: examples and error paths") {
  Expr f0 = S("f0"), t = S("t"), a = S("a"), h = S("h");
  CHECK(Expr::sin(f0 * t).eval({{"f0", 2.0}, {"t", 0.0}}) == 0.0);
  CHECK((Expr::integer(1) / (a * h)).eval({{"a", 2.0}, {"h", 0.5}}) == 1.0);
  CHECK_THROWS_AS(t.eval({}), UnboundSymbolError);
  CHECK_THROWS_AS((Expr::integer(1) / a).eval({{"a", 0.0}}), DomainError);

  // Pythagorean identity as an evaluator sanity oracle
  SplitMix64 rng(7);
  for (int i = 0; i < 32; ++i) {
    Assignment at{{"f0", rng.sample_away_from_zero()}, {"eps", rng.sample_away_from_zero()}};
    Expr p = Expr::pow(Expr::cos(f0 * S("eps")), 2) + Expr::pow(Expr::sin(f0 * S("eps")), 2);
    CHECK(p.eval(at) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("canonical form: flatten, fold, collect") {
  Expr x = S("x"), y = S("u");
  CHECK(Expr::sum({x, Expr::sum({x, y})}) == Expr::integer(2) * x + y);
  CHECK((x * x * y).kind() == Expr::Kind::Product);
  CHECK(Expr::product({x, x}) == Expr::pow(x, 2));
  CHECK((x - x).is_zero());
  CHECK(Expr::product({Expr::integer(0), y}).is_zero());
  CHECK(Expr::product({Expr::integer(1), y}) == y);
  CHECK(Expr::sum({Expr::integer(2), Expr::integer(-2)}).is_zero());
  CHECK(Expr::pow(x, 1) == x);
  CHECK(Expr::pow(x, 0).is_one());
  CHECK(Expr::sin(Expr::integer(0)).is_zero());
  CHECK(Expr::cos(Expr::integer(0)).is_one());
  // structural equality is decidable and order-insensitive
  CHECK(x * y + y == y + y * x);
}

TEST_CASE("canonical idempotence on random expressions") {
  SplitMix64 rng(0xc0ffee);
  for (int i = 0; i < 200; ++i) {
    Expr e = random_expr(rng, 4);
    Expr once = recanonicalize(e);
    CHECK(once == e);  // factories already canonicalize on construction
    CHECK(recanonicalize(once) == once);
  }
}

TEST_CASE("derivative linearity as canonical trees") {
  SplitMix64 rng(0x11ab);
  const std::vector<std::string> syms = {"t", "x", "h", "u", "a"};
  for (int i = 0; i < 100; ++i) {
    Expr e1 = random_expr(rng, 3);
    Expr e2 = random_expr(rng, 3);
    Rational alpha(static_cast<long long>(rng.next() % 9) - 4, 1 + (rng.next() % 3));
    Rational beta(static_cast<long long>(rng.next() % 9) - 4, 1 + (rng.next() % 3));
    const std::string& s = syms[rng.next() % syms.size()];
    Expr lhs = (Expr::rational(alpha) * e1 + Expr::rational(beta) * e2).diff(s);
    Expr rhs = Expr::rational(alpha) * e1.diff(s) + Expr::rational(beta) * e2.diff(s);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("finite-difference consistency of differentiate") {
  SplitMix64 rng(0xfd5eed);
  const std::vector<std::string> syms = {"t", "x", "h", "u", "a"};
  int checked = 0;
  for (int i = 0; checked < 100 && i < 400; ++i) {
    Expr e = random_expr(rng, 3);
    const std::string& s = syms[rng.next() % syms.size()];
    Expr d = e.diff(s);
    Assignment at;
    for (const auto& name : e.free_symbols()) at.values[name] = rng.sample_away_from_zero();
    at.values[s] = rng.sample_away_from_zero();
    const double step = 1e-6;
    Assignment hi = at, lo = at;
    hi.values[s] += step;
    lo.values[s] -= step;
    double exact = 0, fd = 0;
    try {
      exact = d.eval(at);
      fd = (e.eval(hi) - e.eval(lo)) / (2 * step);
    } catch (const ExprError&) {
      continue;  // sampled a pole; skip this draw
    }
    if (!std::isfinite(exact) || !std::isfinite(fd) || std::abs(exact) > 1e6) continue;
    CHECK(std::abs(exact - fd) <= 1e-5 * (1 + std::abs(exact)));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("evaluation commutes with substitution") {
  SplitMix64 rng(0xab1e);
  for (int i = 0; i < 100; ++i) {
    Expr e = random_expr(rng, 3);
    Expr c = random_expr(rng, 2);
    Assignment at;
    for (const auto& name : e.free_symbols()) at.values[name] = rng.sample_away_from_zero();
    for (const auto& name : c.free_symbols()) at.values[name] = rng.sample_away_from_zero();
    at.values["u"] = rng.sample_away_from_zero();
    double lhs = 0, rhs = 0;
    try {
      Assignment inner = at;
      inner.values["u"] = c.eval(at);
      lhs = e.substitute({{"u", c}}).eval(at);
      rhs = e.eval(inner);
    } catch (const ExprError&) {
      continue;
    }
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) continue;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("probabilistic zero test") {
  Expr f0 = S("f0"), t = S("t");
  CHECK(is_zero_probabilistic(Expr::integer(0)).zero);

  Expr ident = Expr::pow(Expr::sin(t), 2) + Expr::pow(Expr::cos(t), 2) - Expr::integer(1);
  CHECK(is_zero_probabilistic(ident).zero);

  auto res = is_zero_probabilistic(S("h_x") * S("u"));
  CHECK(!res.zero);
  CHECK(res.witness.contains("h_x"));
  CHECK(res.witness.contains("u"));
  // the witness reproduces the nonzero value
  CHECK((S("h_x") * S("u")).eval(res.witness) == res.witness_value);

  // samples avoid the near-zero band
  for (const auto& [name, value] : res.witness.values) {
    CHECK(std::abs(value) >= 0.25);
    CHECK(std::abs(value) <= 2.0);
  }

  // fixed bindings are honored
  ZeroTestOptions opt;
  opt.fixed.values["f0"] = 0.0;
  CHECK(is_zero_probabilistic(f0 * t, opt).zero);

  CHECK_THROWS_AS(is_zero_probabilistic(Expr::integer(1), ZeroTestOptions{0}), ExprError);
}

TEST_CASE("deterministic sampling for a fixed seed") {
  ZeroTestOptions opt;
  opt.seed = 1234;
  auto r1 = is_zero_probabilistic(S("u"), opt);
  auto r2 = is_zero_probabilistic(S("u"), opt);
  REQUIRE(!r1.zero);
  CHECK(r1.witness_value == r2.witness_value);
}

TEST_CASE("printing is stable and readable") {
  Expr h = S("h"), u = S("u");
  CHECK((h * u).str() == "h*u");
  CHECK((S("h_x") * u + h * S("u_x")).str() == "h*u_x + h_x*u");
  CHECK((Expr::integer(1) / (S("a") * h)).str() == "1/(a*h)");
  CHECK(Expr::pow(h, 2).str() == "h^2");
  CHECK((Expr::integer(-2) * h).str() == "-2*h");
}
