#include "swsym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

namespace swsym {

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

namespace {

long long checked_narrow(__int128 v, const char* what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN)) {
    throw OverflowError(std::string("rational overflow in ") + what);
  }
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long n) : num(n), den(1) {}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Rational Rational::operator-() const { return Rational(-num, den); }

Rational operator+(const Rational& a, const Rational& b) {
  __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
  __int128 d = static_cast<__int128>(a.den) * b.den;
  // reduce inside __int128 before narrowing
  auto gg = [](__int128 x, __int128 y) {
    if (x < 0) x = -x;
    while (y != 0) {
      __int128 r = x % y;
      x = y;
      y = r;
    }
    return x;
  };
  __int128 G = gg(n, d);
  if (G > 1) {
    n /= G;
    d /= G;
  }
  return Rational(checked_narrow(n, "+"), checked_narrow(d, "+"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  __int128 n = static_cast<__int128>(a.num / g1) * (b.num / g2);
  __int128 d = static_cast<__int128>(a.den / g2) * (b.den / g1);
  return Rational(checked_narrow(n, "*"), checked_narrow(d, "*"));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw DomainError("rational division by zero");
  return a * Rational(b.den, b.num);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Rational Rational::pow(long long n) const {
  if (n < 0) {
    if (num == 0) throw DomainError("zero to negative power");
    return Rational(den, num).pow(-n);
  }
  Rational r(1);
  Rational base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::optional<Rational> rationalize(double x, long long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  double target = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = target;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17 || fl < -9e17) return std::nullopt;
    long long a = static_cast<long long>(fl);
    __int128 p2 = static_cast<__int128>(a) * p1 + p0;
    __int128 q2 = static_cast<__int128>(a) * q1 + q0;
    if (q2 > max_den || p2 > INT64_MAX || p2 < INT64_MIN) break;
    p0 = p1;
    q0 = q1;
    p1 = static_cast<long long>(p2);
    q1 = static_cast<long long>(q2);
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - target) <= tol * (1.0 + std::abs(target))) {
      return Rational(p1, q1);
    }
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Expr node
// ---------------------------------------------------------------------------

struct Expr::Node {
  Kind kind;
  Rational rat;               // Kind::Rational
  std::string name;           // Kind::Symbol
  std::vector<Expr> kids;     // Sum/Product terms, {base}, {num,den}, {arg}
  long long expo = 0;         // Kind::IntPower
  std::size_t h = 0;

  static std::size_t mix(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }

  void finish_hash() {
    std::size_t v = static_cast<std::size_t>(kind) * 0x100000001b3ULL;
    switch (kind) {
      case Kind::Rational:
        v = mix(v, std::hash<long long>{}(rat.num));
        v = mix(v, std::hash<long long>{}(rat.den));
        break;
      case Kind::Symbol:
        v = mix(v, std::hash<std::string>{}(name));
        break;
      default:
        for (const auto& k : kids) v = mix(v, k.hash());
        v = mix(v, std::hash<long long>{}(expo));
        break;
    }
    h = v;
  }
};

namespace {

using Node = Expr::Node;

std::shared_ptr<const Node> make_rational_node(Rational r) {
  auto n = std::make_shared<Node>();
  n->kind = Expr::Kind::Rational;
  n->rat = r;
  n->finish_hash();
  return n;
}

const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> z = make_rational_node(Rational(0));
  return z;
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == Kind::Rational && node_->rat.is_zero(); }
bool Expr::is_one() const { return node_->kind == Kind::Rational && node_->rat.is_one(); }
const Rational& Expr::rational_value() const { return node_->rat; }
const std::string& Expr::symbol_name() const { return node_->name; }
const std::vector<Expr>& Expr::operands() const { return node_->kids; }
long long Expr::exponent() const { return node_->expo; }
std::size_t Expr::hash() const { return node_->h; }
const void* Expr::identity() const { return node_.get(); }

int Expr::compare(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return 0;
  auto ka = static_cast<int>(a.kind());
  auto kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Rational: {
      const Rational& ra = a.rational_value();
      const Rational& rb = b.rational_value();
      if (ra == rb) return 0;
      return ra < rb ? -1 : 1;
    }
    case Kind::Symbol:
      return a.symbol_name().compare(b.symbol_name());
    default: {
      const auto& xa = a.operands();
      const auto& xb = b.operands();
      std::size_t n = std::min(xa.size(), xb.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(xa[i], xb[i]);
        if (c != 0) return c;
      }
      if (xa.size() != xb.size()) return xa.size() < xb.size() ? -1 : 1;
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      return 0;
    }
  }
}

bool Expr::equals(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (node_->h != other.node_->h) return false;
  return compare(*this, other) == 0;
}

// ---------------------------------------------------------------------------
// Factories / canonicalization
// ---------------------------------------------------------------------------

Expr Expr::rational(Rational r) { return Expr(make_rational_node(r)); }
Expr Expr::rational(long long num, long long den) { return rational(Rational(num, den)); }
Expr Expr::integer(long long n) { return rational(Rational(n)); }

Expr Expr::symbol(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  n->name = name;
  n->finish_hash();
  return Expr(std::move(n));
}

namespace {

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return Expr::compare(a, b) < 0; }
};

// Split a canonical term into (rational coefficient, symbolic kernel).
std::pair<Rational, Expr> coefficient_split(const Expr& term) {
  if (term.kind() == Expr::Kind::Rational) return {term.rational_value(), Expr::integer(1)};
  if (term.kind() == Expr::Kind::Product) {
    const auto& fs = term.operands();
    if (fs.front().kind() == Expr::Kind::Rational) {
      std::vector<Expr> rest(fs.begin() + 1, fs.end());
      return {fs.front().rational_value(), Expr::product(std::move(rest))};
    }
  }
  return {Rational(1), term};
}

// Split a canonical factor into (base, integer exponent >= 1).
std::pair<Expr, long long> power_split(const Expr& factor) {
  if (factor.kind() == Expr::Kind::IntPower) return {factor.operands().front(), factor.exponent()};
  return {factor, 1};
}

}  // namespace

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (auto& t : terms) {
    if (t.kind() == Kind::Sum) {
      for (const auto& s : t.operands()) flat.push_back(s);
    } else {
      flat.push_back(std::move(t));
    }
  }
  Rational constant(0);
  std::map<Expr, Rational, ExprLess> by_kernel;
  for (const auto& t : flat) {
    if (t.kind() == Kind::Rational) {
      constant = constant + t.rational_value();
      continue;
    }
    auto [coeff, kernel] = coefficient_split(t);
    auto it = by_kernel.find(kernel);
    if (it == by_kernel.end()) {
      by_kernel.emplace(kernel, coeff);
    } else {
      it->second = it->second + coeff;
    }
  }
  std::vector<Expr> out;
  out.reserve(by_kernel.size() + 1);
  if (!constant.is_zero()) out.push_back(rational(constant));
  for (const auto& [kernel, coeff] : by_kernel) {
    if (coeff.is_zero()) continue;
    if (coeff.is_one()) {
      out.push_back(kernel);
    } else {
      out.push_back(product({rational(coeff), kernel}));
    }
  }
  if (out.empty()) return integer(0);
  if (out.size() == 1) return out.front();
  // by_kernel is ordered; the optional constant is already first under the
  // node order (Rational sorts before everything), so out is sorted.
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->kids = std::move(out);
  n->finish_hash();
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (f.kind() == Kind::Product) {
      for (const auto& g : f.operands()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }
  Rational constant(1);
  std::map<Expr, long long, ExprLess> by_base;
  for (const auto& f : flat) {
    if (f.kind() == Kind::Rational) {
      if (f.rational_value().is_zero()) return integer(0);
      constant = constant * f.rational_value();
      continue;
    }
    auto [base, expo] = power_split(f);
    by_base[base] += expo;
  }
  std::vector<Expr> out;
  out.reserve(by_base.size() + 1);
  if (!constant.is_one()) out.push_back(rational(constant));
  for (const auto& [base, expo] : by_base) {
    if (expo == 0) continue;
    out.push_back(expo == 1 ? base : pow(base, expo));
  }
  if (out.empty()) return integer(1);
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), ExprLess{});
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->kids = std::move(out);
  n->finish_hash();
  return Expr(std::move(n));
}

Expr Expr::pow(const Expr& base, long long exponent) {
  if (exponent == 0) return integer(1);
  if (exponent == 1) return base;
  if (base.kind() == Kind::Rational) return rational(base.rational_value().pow(exponent));
  if (exponent < 0) return quotient(integer(1), pow(base, -exponent));
  if (base.kind() == Kind::IntPower) return pow(base.operands().front(), base.exponent() * exponent);
  if (base.kind() == Kind::Product) {
    std::vector<Expr> fs;
    fs.reserve(base.operands().size());
    for (const auto& f : base.operands()) fs.push_back(pow(f, exponent));
    return product(std::move(fs));
  }
  if (base.kind() == Kind::Quotient) {
    return quotient(pow(base.operands()[0], exponent), pow(base.operands()[1], exponent));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::IntPower;
  n->kids = {base};
  n->expo = exponent;
  n->finish_hash();
  return Expr(std::move(n));
}

Expr Expr::quotient(const Expr& num, const Expr& den) {
  if (den.kind() == Kind::Rational) {
    if (den.rational_value().is_zero()) throw DomainError("quotient with zero denominator");
    return product({rational(Rational(1) / den.rational_value()), num});
  }
  if (num.is_zero()) return integer(0);
  if (num.kind() == Kind::Quotient) {
    // (a/b)/c -> a/(b*c)
    return quotient(num.operands()[0], product({num.operands()[1], den}));
  }
  if (den.kind() == Kind::Quotient) {
    // a/(b/c) -> (a*c)/b
    return quotient(product({num, den.operands()[1]}), den.operands()[0]);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quotient;
  n->kids = {num, den};
  n->finish_hash();
  return Expr(std::move(n));
}

Expr Expr::sin(const Expr& arg) {
  if (arg.is_zero()) return integer(0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sin;
  n->kids = {arg};
  n->finish_hash();
  return Expr(std::move(n));
}

Expr Expr::cos(const Expr& arg) {
  if (arg.is_zero()) return integer(1);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cos;
  n->kids = {arg};
  n->finish_hash();
  return Expr(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::product({Expr::integer(-1), b})}); }
Expr Expr::operator-() const { return product({integer(-1), *this}); }

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

void Expr::collect_symbols(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Rational:
      return;
    case Kind::Symbol:
      out.insert(symbol_name());
      return;
    default:
      for (const auto& k : operands()) k.collect_symbols(out);
  }
}

std::set<std::string> Expr::free_symbols() const {
  std::set<std::string> s;
  collect_symbols(s);
  return s;
}

bool Expr::depends_on(const std::string& name) const {
  switch (kind()) {
    case Kind::Rational:
      return false;
    case Kind::Symbol:
      return symbol_name() == name;
    default:
      for (const auto& k : operands())
        if (k.depends_on(name)) return true;
      return false;
  }
}

// ---------------------------------------------------------------------------
// diff / substitute
// ---------------------------------------------------------------------------

Expr Expr::diff(const std::string& name) const {
  switch (kind()) {
    case Kind::Rational:
      return integer(0);
    case Kind::Symbol:
      return symbol_name() == name ? integer(1) : integer(0);
    case Kind::Sum: {
      std::vector<Expr> parts;
      parts.reserve(operands().size());
      for (const auto& t : operands()) parts.push_back(t.diff(name));
      return sum(std::move(parts));
    }
    case Kind::Product: {
      const auto& fs = operands();
      std::vector<Expr> terms;
      terms.reserve(fs.size());
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (!fs[i].depends_on(name)) continue;
        std::vector<Expr> fac = fs;
        fac[i] = fs[i].diff(name);
        terms.push_back(product(std::move(fac)));
      }
      return sum(std::move(terms));
    }
    case Kind::IntPower: {
      const Expr& b = operands().front();
      if (!b.depends_on(name)) return integer(0);
      return product({integer(exponent()), pow(b, exponent() - 1), b.diff(name)});
    }
    case Kind::Quotient: {
      const Expr& u = operands()[0];
      const Expr& v = operands()[1];
      if (!v.depends_on(name)) return quotient(u.diff(name), v);
      Expr numer = sum({product({u.diff(name), v}), product({integer(-1), u, v.diff(name)})});
      return quotient(numer, pow(v, 2));
    }
    case Kind::Sin:
      return product({cos(operands().front()), operands().front().diff(name)});
    case Kind::Cos:
      return product({integer(-1), sin(operands().front()), operands().front().diff(name)});
  }
  throw ExprError("unreachable diff kind");
}

Expr Expr::substitute(const std::map<std::string, Expr>& repl) const {
  switch (kind()) {
    case Kind::Rational:
      return *this;
    case Kind::Symbol: {
      auto it = repl.find(symbol_name());
      return it == repl.end() ? *this : it->second;
    }
    case Kind::Sum: {
      std::vector<Expr> parts;
      parts.reserve(operands().size());
      for (const auto& t : operands()) parts.push_back(t.substitute(repl));
      return sum(std::move(parts));
    }
    case Kind::Product: {
      std::vector<Expr> parts;
      parts.reserve(operands().size());
      for (const auto& t : operands()) parts.push_back(t.substitute(repl));
      return product(std::move(parts));
    }
    case Kind::IntPower:
      return pow(operands().front().substitute(repl), exponent());
    case Kind::Quotient:
      return quotient(operands()[0].substitute(repl), operands()[1].substitute(repl));
    case Kind::Sin:
      return sin(operands().front().substitute(repl));
    case Kind::Cos:
      return cos(operands().front().substitute(repl));
  }
  throw ExprError("unreachable substitute kind");
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct EvalCtx {
  const Assignment& at;
  bool tracked;
  double maxmag = 0.0;
  // memo keyed by node identity: shared subtrees are evaluated once
  std::unordered_map<const Node*, double> memo;

  void note(double v) {
    double m = std::abs(v);
    if (m > maxmag) maxmag = m;
  }
};

double eval_node(const Expr& e, EvalCtx& ctx);

double eval_node_raw(const Expr& e, EvalCtx& ctx) {
  switch (e.kind()) {
    case Expr::Kind::Rational:
      return e.rational_value().to_double();
    case Expr::Kind::Symbol: {
      auto it = ctx.at.values.find(e.symbol_name());
      if (it == ctx.at.values.end()) throw UnboundSymbolError("unbound symbol: " + e.symbol_name());
      return it->second;
    }
    case Expr::Kind::Sum: {
      double acc = 0.0;
      for (const auto& t : e.operands()) {
        acc += eval_node(t, ctx);
        if (ctx.tracked) ctx.note(acc);
      }
      return acc;
    }
    case Expr::Kind::Product: {
      double acc = 1.0;
      for (const auto& f : e.operands()) {
        acc *= eval_node(f, ctx);
        if (ctx.tracked) ctx.note(acc);
      }
      return acc;
    }
    case Expr::Kind::IntPower: {
      double b = eval_node(e.operands().front(), ctx);
      double acc = 1.0;
      for (long long i = 0; i < e.exponent(); ++i) acc *= b;
      return acc;
    }
    case Expr::Kind::Quotient: {
      double num = eval_node(e.operands()[0], ctx);
      double den = eval_node(e.operands()[1], ctx);
      if (den == 0.0) throw DomainError("division by zero at evaluation point");
      return num / den;
    }
    case Expr::Kind::Sin:
      return std::sin(eval_node(e.operands().front(), ctx));
    case Expr::Kind::Cos:
      return std::cos(eval_node(e.operands().front(), ctx));
  }
  throw ExprError("unreachable eval kind");
}

double eval_node(const Expr& e, EvalCtx& ctx) {
  // leaf nodes are cheaper to recompute than to look up
  if (e.kind() == Expr::Kind::Rational || e.kind() == Expr::Kind::Symbol) {
    double v = eval_node_raw(e, ctx);
    if (ctx.tracked) ctx.note(v);
    return v;
  }
  // node identity as cache key; shared subtrees evaluate once per call
  const Node* key = static_cast<const Node*>(e.identity());
  auto found = ctx.memo.find(key);
  if (found != ctx.memo.end()) return found->second;
  double v = eval_node_raw(e, ctx);
  if (ctx.tracked) ctx.note(v);
  ctx.memo.emplace(key, v);
  return v;
}

}  // namespace

double Expr::eval(const Assignment& at) const {
  EvalCtx ctx{at, false, 0.0, {}};
  return eval_node(*this, ctx);
}

std::pair<double, double> Expr::eval_tracked(const Assignment& at) const {
  EvalCtx ctx{at, true, 0.0, {}};
  double v = eval_node(*this, ctx);
  return {v, ctx.maxmag};
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

void print_expr(const Expr& e, std::string& out, int parent_prec);

void print_rational(const Rational& r, std::string& out, bool need_paren_if_neg) {
  bool neg = r.num < 0;
  if (neg && need_paren_if_neg) out += '(';
  out += std::to_string(r.num);
  if (r.den != 1) {
    out += '/';
    out += std::to_string(r.den);
  }
  if (neg && need_paren_if_neg) out += ')';
}

// precedence: sum 1, product/quotient 2, power 3, atom 4
void print_expr(const Expr& e, std::string& out, int parent_prec) {
  switch (e.kind()) {
    case Expr::Kind::Rational: {
      print_rational(e.rational_value(), out, parent_prec >= 2);
      return;
    }
    case Expr::Kind::Symbol:
      out += e.symbol_name();
      return;
    case Expr::Kind::Sum: {
      bool paren = parent_prec >= 2;
      if (paren) out += '(';
      bool first = true;
      for (const auto& t : e.operands()) {
        auto [coeff, kernel] = coefficient_split(t);
        bool neg = coeff.num < 0;
        if (first) {
          if (neg) out += '-';
        } else {
          out += neg ? " - " : " + ";
        }
        Expr mag = neg ? Expr::product({Expr::rational(-coeff), kernel}) : t;
        print_expr(mag, out, 1);
        first = false;
      }
      if (paren) out += ')';
      return;
    }
    case Expr::Kind::Product: {
      bool paren = parent_prec >= 3;
      if (paren) out += '(';
      bool first = true;
      for (const auto& f : e.operands()) {
        if (!first) out += "*";
        print_expr(f, out, 2);
        first = false;
      }
      if (paren) out += ')';
      return;
    }
    case Expr::Kind::IntPower: {
      print_expr(e.operands().front(), out, 3);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    }
    case Expr::Kind::Quotient: {
      bool paren = parent_prec >= 3;
      if (paren) out += '(';
      print_expr(e.operands()[0], out, 2);
      out += '/';
      print_expr(e.operands()[1], out, 3);
      if (paren) out += ')';
      return;
    }
    case Expr::Kind::Sin:
      out += "sin(";
      print_expr(e.operands().front(), out, 0);
      out += ')';
      return;
    case Expr::Kind::Cos:
      out += "cos(";
      print_expr(e.operands().front(), out, 0);
      out += ')';
      return;
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print_expr(*this, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Random sampling / zero test
// ---------------------------------------------------------------------------

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::sample_away_from_zero(double lo, double hi) {
  double mag = lo + (hi - lo) * uniform01();
  return (next() & 1) ? mag : -mag;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ZeroTestResult is_zero_probabilistic(const Expr& e, const ZeroTestOptions& opt) {
  if (opt.trials < 1) throw ExprError("zero test needs at least one trial");
  if (!(opt.tol > 0)) throw ExprError("zero test tolerance must be positive");
  std::set<std::string> syms = e.free_symbols();
  for (const auto& [name, value] : opt.fixed.values) syms.erase(name);
  SplitMix64 rng(opt.seed);
  ZeroTestResult result;
  for (int trial = 0; trial < opt.trials; ++trial) {
    int attempts = 0;
    for (;;) {
      if (attempts++ > opt.max_resamples) {
        throw SingularExpressionError("expression singular at every sampled point");
      }
      Assignment at = opt.fixed;
      for (const auto& s : syms) at.values[s] = rng.sample_away_from_zero();
      double value = 0.0, mag = 0.0;
      try {
        std::tie(value, mag) = e.eval_tracked(at);
      } catch (const DomainError&) {
        continue;  // resample off the singular locus
      }
      if (!std::isfinite(value) || !std::isfinite(mag)) continue;
      if (std::abs(value) > opt.tol * (1.0 + mag)) {
        result.zero = false;
        result.witness = at;
        result.witness_value = value;
        return result;
      }
      break;
    }
  }
  return result;
}

}  // namespace swsym
