#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace swsym {

// Errors raised by the expression kernel. Everything else in the library
// funnels through these when a symbolic operation goes wrong.
struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OverflowError : ExprError {
  using ExprError::ExprError;
};
// Zero denominator produced by construction or substitution.
struct DomainError : ExprError {
  using ExprError::ExprError;
};
struct UnboundSymbolError : ExprError {
  using ExprError::ExprError;
};
// Expression could not be sampled away from its singular locus.
struct SingularExpressionError : ExprError {
  using ExprError::ExprError;
};

/// Exact rational p/q, gcd-reduced with q > 0. Arithmetic is overflow-checked
/// and throws OverflowError instead of wrapping.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n);  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  bool is_zero() const { return num == 0; }
  bool is_one() const { return num == 1 && den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational operator-() const;
  friend Rational operator+(const Rational&, const Rational&);
  friend Rational operator-(const Rational&, const Rational&);
  friend Rational operator*(const Rational&, const Rational&);
  friend Rational operator/(const Rational&, const Rational&);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  // exact value comparison
  friend bool operator<(const Rational& a, const Rational& b);
  Rational pow(long long n) const;
};

/// Best rational approximation of x with denominator <= max_den (continued
/// fractions). Returns nullopt if no convergent reproduces x to tol.
std::optional<Rational> rationalize(double x, long long max_den = 1000000, double tol = 1e-9);

/// Bindings for numeric evaluation: symbol name -> double.
struct Assignment {
  std::map<std::string, double> values;

  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const std::string, double>> init) : values(init) {}
  double& operator[](const std::string& s) { return values[s]; }
  bool contains(const std::string& s) const { return values.count(s) != 0; }
};

/// Immutable symbolic expression over rationals, symbols, sums, products,
/// integer powers, quotients, sin and cos. Construction canonicalizes:
/// sums/products are flattened and sorted under a fixed total order, rational
/// constants are folded, zero terms and unit factors removed, identical terms
/// (factors) merged by rational coefficient (integer exponent). Two
/// structurally equal canonical trees compare equal.
class Expr {
 public:
  enum class Kind { Rational, Symbol, Sum, Product, IntPower, Quotient, Sin, Cos };

  Expr();  // the rational 0

  // --- factories -----------------------------------------------------------
  static Expr rational(Rational r);
  static Expr rational(long long num, long long den);
  static Expr integer(long long n);
  static Expr symbol(const std::string& name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(const Expr& base, long long exponent);
  static Expr quotient(const Expr& num, const Expr& den);
  static Expr sin(const Expr& arg);
  static Expr cos(const Expr& arg);

  // --- inspection ----------------------------------------------------------
  Kind kind() const;
  bool is_rational() const { return kind() == Kind::Rational; }
  bool is_zero() const;
  bool is_one() const;
  const Rational& rational_value() const;  // requires Kind::Rational
  const std::string& symbol_name() const;  // requires Kind::Symbol
  const std::vector<Expr>& operands() const;
  long long exponent() const;  // requires Kind::IntPower

  bool equals(const Expr& other) const;
  std::size_t hash() const;
  /// Stable identity of the underlying immutable node (for memoization).
  const void* identity() const;
  /// Total order used for canonical sorting; negative/zero/positive like strcmp.
  static int compare(const Expr& a, const Expr& b);

  void collect_symbols(std::set<std::string>& out) const;
  std::set<std::string> free_symbols() const;
  bool depends_on(const std::string& name) const;

  // --- operations ----------------------------------------------------------
  /// Partial derivative; symbols other than `name` are constants.
  Expr diff(const std::string& name) const;
  /// Simultaneous substitution followed by re-canonicalization. Throws
  /// DomainError if a denominator collapses to the constant zero.
  Expr substitute(const std::map<std::string, Expr>& repl) const;
  /// IEEE double evaluation with deterministic operand order. Throws
  /// UnboundSymbolError / DomainError.
  double eval(const Assignment& at) const;
  /// eval that also reports the largest |value| seen at any subexpression or
  /// partial sum/product; used for the relative zero-test threshold.
  std::pair<double, double> eval_tracked(const Assignment& at) const;

  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
  Expr operator-() const;

  friend bool operator==(const Expr& a, const Expr& b) { return a.equals(b); }
  friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Deterministic splitmix64 stream; used everywhere randomness is needed so
/// outputs are reproducible byte-for-byte for a fixed seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// uniform in [0, 1)
  double uniform01();
  /// uniform over [-hi, -lo] U [lo, hi]
  double sample_away_from_zero(double lo = 0.25, double hi = 2.0);

 private:
  std::uint64_t state_;
};

/// Stable 64-bit FNV-1a, for seeding per-name random streams.
std::uint64_t fnv1a(const std::string& s);

struct ZeroTestOptions {
  int trials = 50;
  double tol = 1e-9;
  std::uint64_t seed = 0x5eed5eed5eedULL;
  int max_resamples = 100;
  /// extra fixed bindings (e.g. numeric parameters) applied before sampling
  Assignment fixed;
};

struct ZeroTestResult {
  bool zero = true;
  /// witness point and value for a non-zero verdict
  Assignment witness;
  double witness_value = 0.0;
};

/// Monte-Carlo identity test: evaluates e at random points with coordinates
/// drawn uniformly from [-2,-0.25] U [0.25,2] (resampling off singularities,
/// at most max_resamples per point) and accepts zero iff
/// |value| <= tol * (1 + largest intermediate magnitude) at every point.
ZeroTestResult is_zero_probabilistic(const Expr& e, const ZeroTestOptions& opt = {});

}  // namespace swsym
