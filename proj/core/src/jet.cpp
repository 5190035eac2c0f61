#include "swsym/jet.hpp"

#include <algorithm>

namespace swsym {

JetSpace::JetSpace()
    : indep_{"t", "x"}, dep_{"h", "u", "v", "a", "b"}, base_{"t", "x", "h", "u", "v", "a", "b"} {
  for (int a = 0; a < n_dependent; ++a) {
    for (int i = 0; i < n_independent; ++i) {
      deriv_[a * n_independent + i] = dep_[a] + "_" + indep_[i];
    }
  }
}

const JetSpace& JetSpace::instance() {
  static const JetSpace space;
  return space;
}

bool JetSpace::is_base(const std::string& name) const {
  return std::find(base_.begin(), base_.end(), name) != base_.end();
}

bool JetSpace::is_deriv(const std::string& name) const {
  return std::find(deriv_.begin(), deriv_.end(), name) != deriv_.end();
}

int JetSpace::base_index(const std::string& name) const {
  auto it = std::find(base_.begin(), base_.end(), name);
  return it == base_.end() ? -1 : static_cast<int>(it - base_.begin());
}

bool JetSpace::base_only(const Expr& e) const {
  for (const auto& s : e.free_symbols()) {
    if (is_deriv(s)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

VectorField::VectorField() { coeff.fill(Expr::integer(0)); }

VectorField VectorField::named(std::string name) {
  VectorField X;
  X.name = std::move(name);
  return X;
}

Expr VectorField::apply(const Expr& f) const {
  const auto& space = JetSpace::instance();
  std::vector<Expr> terms;
  terms.reserve(JetSpace::n_base);
  for (int k = 0; k < JetSpace::n_base; ++k) {
    if (coeff[k].is_zero()) continue;
    Expr df = f.diff(space.base()[k]);
    if (df.is_zero()) continue;
    terms.push_back(coeff[k] * df);
  }
  return Expr::sum(std::move(terms));
}

bool VectorField::is_zero() const {
  return std::all_of(coeff.begin(), coeff.end(), [](const Expr& c) { return c.is_zero(); });
}

void VectorField::validate() const {
  const auto& space = JetSpace::instance();
  for (int k = 0; k < JetSpace::n_base; ++k) {
    if (!space.base_only(coeff[k])) {
      throw JetError("point-symmetry coefficient for " + space.base()[k] +
                     " depends on a derivative coordinate");
    }
  }
}

std::string VectorField::str() const {
  const auto& space = JetSpace::instance();
  std::string out;
  for (int k = 0; k < JetSpace::n_base; ++k) {
    if (coeff[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (coeff[k].is_one()) {
      out += "d/d" + space.base()[k];
    } else {
      out += "(" + coeff[k].str() + ")*d/d" + space.base()[k];
    }
  }
  return out.empty() ? "0" : out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int k = 0; k < JetSpace::n_base; ++k) r.coeff[k] = a.coeff[k] + b.coeff[k];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int k = 0; k < JetSpace::n_base; ++k) r.coeff[k] = a.coeff[k] - b.coeff[k];
  return r;
}

VectorField VectorField::scaled(const Expr& c) const {
  VectorField r;
  r.name = name;
  for (int k = 0; k < JetSpace::n_base; ++k) r.coeff[k] = c * coeff[k];
  return r;
}

VectorField VectorField::scaled(Rational c) const { return scaled(Expr::rational(c)); }

// ---------------------------------------------------------------------------
// Total derivative and prolongation
// ---------------------------------------------------------------------------

Expr total_derivative(const Expr& e, int ind, const JetSpace& space) {
  if (!space.base_only(e)) {
    throw JetError("total derivative restricted to first order: input already contains "
                   "derivative coordinates");
  }
  std::vector<Expr> terms;
  terms.push_back(e.diff(space.independent()[ind]));
  for (int a = 0; a < JetSpace::n_dependent; ++a) {
    Expr de = e.diff(space.dependent()[a]);
    if (de.is_zero()) continue;
    terms.push_back(space.deriv_symbol(a, ind) * de);
  }
  return Expr::sum(std::move(terms));
}

Expr total_derivative(const Expr& e, const std::string& ind_name, const JetSpace& space) {
  for (int i = 0; i < JetSpace::n_independent; ++i) {
    if (space.independent()[i] == ind_name) return total_derivative(e, i, space);
  }
  throw JetError("unknown independent variable: " + ind_name);
}

ProlongedField prolong_first(const VectorField& X, const JetSpace& space) {
  X.validate();
  ProlongedField P;
  P.base = X;
  for (int a = 0; a < JetSpace::n_dependent; ++a) {
    for (int i = 0; i < JetSpace::n_independent; ++i) {
      std::vector<Expr> terms;
      terms.push_back(total_derivative(X.eta(a), i, space));
      for (int j = 0; j < JetSpace::n_independent; ++j) {
        Expr dxi = total_derivative(X.xi(j), i, space);
        if (dxi.is_zero()) continue;
        terms.push_back(Expr::integer(-1) * space.deriv_symbol(a, j) * dxi);
      }
      P.eta1[space.deriv_index(a, i)] = Expr::sum(std::move(terms));
    }
  }
  return P;
}

Expr ProlongedField::apply(const Expr& f) const {
  const auto& space = JetSpace::instance();
  std::vector<Expr> terms;
  Expr base_part = base.apply(f);
  if (!base_part.is_zero()) terms.push_back(base_part);
  for (int a = 0; a < JetSpace::n_dependent; ++a) {
    for (int i = 0; i < JetSpace::n_independent; ++i) {
      const Expr& c = eta1[space.deriv_index(a, i)];
      if (c.is_zero()) continue;
      Expr df = f.diff(space.deriv(a, i));
      if (df.is_zero()) continue;
      terms.push_back(c * df);
    }
  }
  return Expr::sum(std::move(terms));
}

}  // namespace swsym
