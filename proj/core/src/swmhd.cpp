#include "swsym/swmhd.hpp"

#include <algorithm>
#include <cmath>

namespace swsym {

namespace {

Expr S(const char* name) { return Expr::symbol(name); }

}  // namespace

// ---------------------------------------------------------------------------
// System construction
// ---------------------------------------------------------------------------

PdeSystem build_system(const Expr& g, const Expr& f0) {
  Expr h = S("h"), u = S("u"), v = S("v"), a = S("a"), b = S("b");
  Expr half = Expr::rational(1, 2);

  Expr flux_mass = h * u;
  Expr flux_xmom = h * u * u + half * g * Expr::pow(h, 2) - h * a * a;
  Expr flux_ymom = h * u * v - h * a * b;
  Expr flux_bmag = h * (u * b - v * a);
  Expr ha = h * a;

  PdeSystem sys;
  sys.g = g;
  sys.f0 = f0;
  sys.residual[0] = total_derivative(h, 0) + total_derivative(flux_mass, 1);
  sys.residual[1] = total_derivative(flux_mass, 0) + total_derivative(flux_xmom, 1) + f0 * h * v;
  sys.residual[2] = total_derivative(h * v, 0) + total_derivative(flux_ymom, 1) - f0 * h * u;
  sys.residual[3] = total_derivative(ha, 0) + u * total_derivative(ha, 1);
  sys.residual[4] = total_derivative(h * b, 0) + total_derivative(flux_bmag, 1) +
                    v * total_derivative(ha, 1);

  // Triangular elimination of the t-derivatives: h_t from the mass equation,
  // then each remaining grouped equation solved with h_t already substituted.
  Expr ht = -total_derivative(flux_mass, 1);
  Expr ut = (-total_derivative(flux_xmom, 1) - f0 * h * v - ht * u) / h;
  Expr vt = (-total_derivative(flux_ymom, 1) + f0 * h * u - ht * v) / h;
  Expr at = (-u * total_derivative(ha, 1) - ht * a) / h;
  Expr bt = (-total_derivative(flux_bmag, 1) - v * total_derivative(ha, 1) - ht * b) / h;
  sys.evolution = {ht, ut, vt, at, bt};
  return sys;
}

PdeSystem build_system(double g, double f0) {
  auto to_expr = [](double x, const char* what) {
    auto r = rationalize(x, 1000000, 1e-12);
    if (!r) throw ExprError(std::string("parameter ") + what + " is not a small rational");
    return Expr::rational(*r);
  };
  return build_system(to_expr(g, "g"), to_expr(f0, "f0"));
}

std::map<std::string, Expr> PdeSystem::evolution_substitution() const {
  const auto& space = JetSpace::instance();
  std::map<std::string, Expr> sub;
  for (int a = 0; a < JetSpace::n_dependent; ++a) {
    sub.emplace(space.deriv(a, 0), evolution[a]);
  }
  return sub;
}

ZeroTestResult PdeSystem::check_evolution_form(const ZeroTestOptions& opt) const {
  auto sub = evolution_substitution();
  for (const auto& r : residual) {
    auto verdict = is_zero_probabilistic(r.substitute(sub), opt);
    if (!verdict.zero) return verdict;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Generator catalog
// ---------------------------------------------------------------------------

namespace {

constexpr int T = 0, X = 1, H = 2, U = 3, V = 4, A = 5, B = 6;

}  // namespace

VectorField named_generator(const std::string& name, const Expr& f0) {
  VectorField g = VectorField::named(name);
  Expr one = Expr::integer(1);
  Expr t = S("t"), x = S("x"), h = S("h"), u = S("u"), v = S("v"), a = S("a"), b = S("b");
  if (name == "X1") {
    g.coeff[T] = one;
  } else if (name == "X2") {
    g.coeff[X] = one;
  } else if (name == "X3") {
    g.coeff[T] = t;
    g.coeff[X] = x;
  } else if (name == "X4") {
    g.coeff[H] = h;
  } else if (name == "X5") {
    g.coeff[X] = t;
    g.coeff[U] = one;
  } else if (name == "X6") {
    g.coeff[V] = one;
  } else if (name == "X7") {
    g.coeff[V] = u;
    g.coeff[B] = a;
  } else if (name == "X8") {
    g.coeff[V] = v;
    g.coeff[B] = b;
  } else if (name == "X9") {
    g.coeff[T] = t;
    g.coeff[U] = -u;
    g.coeff[A] = -a;
  } else if (name == "X10") {
    g.coeff[B] = one / (a * h);
  } else if (name == "Y") {
    // X9 - 2 X4
    g.coeff[T] = t;
    g.coeff[U] = -u;
    g.coeff[A] = -a;
    g.coeff[H] = Expr::integer(-2) * h;
  } else if (name == "Z1") {
    // X3 + X8 - X9
    g.coeff[X] = x;
    g.coeff[U] = u;
    g.coeff[V] = v;
    g.coeff[A] = a;
    g.coeff[B] = b;
  } else if (name == "Z1g") {
    // the g != 0 form of the scaling: Z1 plus the 2h dh part required by the
    // symmetry condition when the gravitational term is present
    g.coeff[X] = x;
    g.coeff[H] = Expr::integer(2) * h;
    g.coeff[U] = u;
    g.coeff[V] = v;
    g.coeff[A] = a;
    g.coeff[B] = b;
  } else if (name == "Z2") {
    Expr s = Expr::sin(f0 * t), c = Expr::cos(f0 * t);
    g.coeff[X] = s;
    g.coeff[U] = f0 * c;
    g.coeff[V] = f0 * s;
  } else if (name == "Z3") {
    Expr s = Expr::sin(f0 * t), c = Expr::cos(f0 * t);
    g.coeff[X] = c;
    g.coeff[U] = -(f0 * s);
    g.coeff[V] = f0 * c;
  } else {
    throw ExprError("unknown generator name: " + name);
  }
  return g;
}

const std::vector<std::string>& generator_catalog_names() {
  static const std::vector<std::string> names = {"X1", "X2", "X3", "X4", "X5",  "X6", "X7", "X8",
                                                 "X9", "X10", "Y",  "Z1", "Z1g", "Z2", "Z3"};
  return names;
}

std::optional<SymmetryCaseId> parse_case(const std::string& name) {
  if (name == "free") return SymmetryCaseId::Free;
  if (name == "gravity") return SymmetryCaseId::Gravity;
  if (name == "coriolis") return SymmetryCaseId::Coriolis;
  if (name == "full") return SymmetryCaseId::Full;
  return std::nullopt;
}

std::string case_name(SymmetryCaseId id) {
  switch (id) {
    case SymmetryCaseId::Free:
      return "free";
    case SymmetryCaseId::Gravity:
      return "gravity";
    case SymmetryCaseId::Coriolis:
      return "coriolis";
    case SymmetryCaseId::Full:
      return "full";
  }
  return "?";
}

SymmetryCase symmetry_case(SymmetryCaseId id, const Expr& f0) {
  SymmetryCase c;
  c.id = id;
  auto add = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) c.generators.push_back(named_generator(n, f0));
  };
  switch (id) {
    case SymmetryCaseId::Free:
      c.algebra_label = "{A_{3,3} |x A_{2,1}} x_s A^a_{5,34}";
      c.expected_dimension = 10;
      add({"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9", "X10"});
      break;
    case SymmetryCaseId::Gravity:
      c.algebra_label = "A_{2,1} |x A_{6,22}";
      c.expected_dimension = 8;
      add({"X1", "X2", "X3", "X5", "X6", "X8", "X10", "Y"});
      break;
    case SymmetryCaseId::Coriolis:
      c.algebra_label = "A_{3,5} |x {A_{2,1} |x A_{2,1}}";
      c.expected_dimension = 7;
      add({"X1", "X2", "X4", "X10", "Z1", "Z2", "Z3"});
      break;
    case SymmetryCaseId::Full:
      c.algebra_label = "A_{3,5} |x A_{3,3}";
      c.expected_dimension = 6;
      add({"X1", "X2", "X10", "Z1g", "Z2", "Z3"});
      c.generators[3].name = "Z1";  // displayed under the paper's name
      break;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Symmetry verification
// ---------------------------------------------------------------------------

SymmetryVerdict verify_symmetry(const VectorField& X, const PdeSystem& sys,
                                const ZeroTestOptions& opt) {
  ProlongedField P = prolong_first(X);
  auto sub = sys.evolution_substitution();
  SymmetryVerdict verdict;
  for (int k = 0; k < 5; ++k) {
    Expr applied = P.apply(sys.residual[k]);
    Expr reduced = applied.substitute(sub);
    ZeroTestOptions local = opt;
    local.seed = opt.seed ^ fnv1a(X.name) ^ static_cast<std::uint64_t>(k + 1);
    auto res = is_zero_probabilistic(reduced, local);
    if (!res.zero) {
      verdict.pass = false;
      verdict.failed_residual = k;
      verdict.witness = res.witness;
      verdict.witness_value = res.witness_value;
      return verdict;
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Finite transformations
// ---------------------------------------------------------------------------

namespace {

constexpr int FH = 0, FU = 1, FV = 2, FA = 3, FB = 4;

struct Mat2 {
  // row-major [ [tt, tx], [xt, xx] ] = d(tbar,xbar)/d(t,x)
  double m[2][2];
  Mat2 inverse() const {
    double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return Mat2{{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
  }
};

}  // namespace

FlowMap::FlowMap(std::string generator_name, double eps, double f0)
    : name_(std::move(generator_name)), eps_(eps), f0_(f0) {
  if (!has_finite_transformation(name_)) {
    throw ExprError("no cataloged finite transformation for generator " + name_);
  }
}

bool has_finite_transformation(const std::string& name) {
  const auto& names = generator_catalog_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::array<double, 2> FlowMap::map_point(double t, double x) const {
  const double e = eps_;
  if (name_ == "X1") return {t + e, x};
  if (name_ == "X2") return {t, x + e};
  if (name_ == "X3") return {std::exp(e) * t, std::exp(e) * x};
  if (name_ == "X5") return {t, x + e * t};
  if (name_ == "X9" || name_ == "Y") return {std::exp(e) * t, x};
  if (name_ == "Z1" || name_ == "Z1g") return {t, std::exp(e) * x};
  if (name_ == "Z2") return {t, x + e * std::sin(f0_ * t)};
  if (name_ == "Z3") return {t, x + e * std::cos(f0_ * t)};
  return {t, x};  // X4, X6, X7, X8, X10 act only on the fields
}

std::array<double, 2> FlowMap::unmap_point(double tb, double xb) const {
  const double e = eps_;
  if (name_ == "X1") return {tb - e, xb};
  if (name_ == "X2") return {tb, xb - e};
  if (name_ == "X3") return {std::exp(-e) * tb, std::exp(-e) * xb};
  if (name_ == "X5") return {tb, xb - e * tb};
  if (name_ == "X9" || name_ == "Y") return {std::exp(-e) * tb, xb};
  if (name_ == "Z1" || name_ == "Z1g") return {tb, std::exp(-e) * xb};
  if (name_ == "Z2") return {tb, xb - e * std::sin(f0_ * tb)};
  if (name_ == "Z3") return {tb, xb - e * std::cos(f0_ * tb)};
  return {tb, xb};
}

std::array<double, JetSpace::n_dependent> FlowMap::map_fields(
    double t, double x, const std::array<double, JetSpace::n_dependent>& psi) const {
  (void)x;
  const double e = eps_;
  auto out = psi;
  if (name_ == "X4") {
    out[FH] = std::exp(e) * psi[FH];
  } else if (name_ == "X5") {
    out[FU] = psi[FU] + e;
  } else if (name_ == "X6") {
    out[FV] = psi[FV] + e;
  } else if (name_ == "X7") {
    out[FV] = psi[FV] + e * psi[FU];
    out[FB] = psi[FB] + e * psi[FA];
  } else if (name_ == "X8") {
    out[FV] = std::exp(e) * psi[FV];
    out[FB] = std::exp(e) * psi[FB];
  } else if (name_ == "X9") {
    out[FU] = std::exp(-e) * psi[FU];
    out[FA] = std::exp(-e) * psi[FA];
  } else if (name_ == "X10") {
    out[FB] = psi[FB] + e / (psi[FA] * psi[FH]);
  } else if (name_ == "Y") {
    out[FH] = std::exp(-2 * e) * psi[FH];
    out[FU] = std::exp(-e) * psi[FU];
    out[FA] = std::exp(-e) * psi[FA];
  } else if (name_ == "Z1" || name_ == "Z1g") {
    if (name_ == "Z1g") out[FH] = std::exp(2 * e) * psi[FH];
    out[FU] = std::exp(e) * psi[FU];
    out[FV] = std::exp(e) * psi[FV];
    out[FA] = std::exp(e) * psi[FA];
    out[FB] = std::exp(e) * psi[FB];
  } else if (name_ == "Z2") {
    out[FU] = psi[FU] + e * f0_ * std::cos(f0_ * t);
    out[FV] = psi[FV] + e * f0_ * std::sin(f0_ * t);
  } else if (name_ == "Z3") {
    out[FU] = psi[FU] - e * f0_ * std::sin(f0_ * t);
    out[FV] = psi[FV] + e * f0_ * std::cos(f0_ * t);
  }
  return out;
}

FieldJet FlowMap::push(double t, double x, const FieldJet& jet) const {
  const double e = eps_;
  const int n = JetSpace::n_dependent;

  // Jacobian of the base map
  Mat2 J{{{1, 0}, {0, 1}}};
  if (name_ == "X3") {
    J = Mat2{{{std::exp(e), 0}, {0, std::exp(e)}}};
  } else if (name_ == "X5") {
    J = Mat2{{{1, 0}, {e, 1}}};
  } else if (name_ == "X9" || name_ == "Y") {
    J = Mat2{{{std::exp(e), 0}, {0, 1}}};
  } else if (name_ == "Z1" || name_ == "Z1g") {
    J = Mat2{{{1, 0}, {0, std::exp(e)}}};
  } else if (name_ == "Z2") {
    J = Mat2{{{1, 0}, {e * f0_ * std::cos(f0_ * t), 1}}};
  } else if (name_ == "Z3") {
    J = Mat2{{{1, 0}, {-e * f0_ * std::sin(f0_ * t), 1}}};
  }

  // explicit t-dependence of the field map
  double dF_dt[JetSpace::n_dependent] = {0, 0, 0, 0, 0};
  if (name_ == "Z2") {
    dF_dt[FU] = -e * f0_ * f0_ * std::sin(f0_ * t);
    dF_dt[FV] = e * f0_ * f0_ * std::cos(f0_ * t);
  } else if (name_ == "Z3") {
    dF_dt[FU] = -e * f0_ * f0_ * std::cos(f0_ * t);
    dF_dt[FV] = -e * f0_ * f0_ * std::sin(f0_ * t);
  }

  // dF/dPsi, identity unless the generator mixes fields
  double dF[5][5] = {};
  for (int i = 0; i < n; ++i) dF[i][i] = 1.0;
  if (name_ == "X4") {
    dF[FH][FH] = std::exp(e);
  } else if (name_ == "X7") {
    dF[FV][FU] = e;
    dF[FB][FA] = e;
  } else if (name_ == "X8") {
    dF[FV][FV] = std::exp(e);
    dF[FB][FB] = std::exp(e);
  } else if (name_ == "X9") {
    dF[FU][FU] = std::exp(-e);
    dF[FA][FA] = std::exp(-e);
  } else if (name_ == "X10") {
    double A2 = jet.psi[FA] * jet.psi[FA], H2 = jet.psi[FH] * jet.psi[FH];
    dF[FB][FA] = -e / (A2 * jet.psi[FH]);
    dF[FB][FH] = -e / (jet.psi[FA] * H2);
  } else if (name_ == "Y") {
    dF[FH][FH] = std::exp(-2 * e);
    dF[FU][FU] = std::exp(-e);
    dF[FA][FA] = std::exp(-e);
  } else if (name_ == "Z1" || name_ == "Z1g") {
    if (name_ == "Z1g") dF[FH][FH] = std::exp(2 * e);
    dF[FU][FU] = dF[FV][FV] = dF[FA][FA] = dF[FB][FB] = std::exp(e);
  }

  FieldJet out;
  out.psi = map_fields(t, x, jet.psi);
  Mat2 Jinv = J.inverse();
  for (int A = 0; A < n; ++A) {
    // total derivative of F^A along the original coordinates
    double d_t = dF_dt[A];
    double d_x = 0.0;
    for (int B = 0; B < n; ++B) {
      d_t += dF[A][B] * jet.psi_t[B];
      d_x += dF[A][B] * jet.psi_x[B];
    }
    out.psi_t[A] = d_t * Jinv.m[0][0] + d_x * Jinv.m[1][0];
    out.psi_x[A] = d_t * Jinv.m[0][1] + d_x * Jinv.m[1][1];
  }
  return out;
}

}  // namespace swsym
