#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "liesym/error.hpp"

namespace liesym {

using Rational = mpq_class;

enum class SymbolKind : std::uint8_t { Independent, Dependent, Jet, Unknown, Parameter };

/// A named symbol. Jets carry their derivative multiset in `index`; unknown
/// functions carry their argument list in `args` and (for derivatives) the
/// differentiation multiset in `index`. Indices are kept sorted so that
/// u_tx and u_xt are the same symbol.
struct Symbol {
  SymbolKind kind = SymbolKind::Parameter;
  std::string name;
  std::vector<std::string> index;
  std::vector<std::string> args;

  static Symbol independent(std::string name);
  static Symbol dependent(std::string name = "u");
  static Symbol jet(std::vector<std::string> index, std::string base = "u");
  static Symbol parameter(std::string name);
  static Symbol unknown(std::string name, std::vector<std::string> args,
                        std::vector<std::string> index = {});

  /// Printed form: "x", "u_xt", "xi1_xu", "c3".
  std::string display() const;
  /// Number of derivatives carried by a jet or unknown-function derivative.
  int order() const { return static_cast<int>(index.size()); }

  friend bool operator==(const Symbol& a, const Symbol& b) = default;
};

/// Rank used for sorting variable names inside indices: x, t, u first, then
/// alphabetical.
int variable_rank(std::string_view name);
int compare(const Symbol& a, const Symbol& b);
inline bool operator<(const Symbol& a, const Symbol& b) { return compare(a, b) < 0; }

enum class Func : std::uint8_t { Exp, Log, Sin, Cos, Tan, Arctan, Sinh, Cosh, Sqrt };

std::string_view func_name(Func f);

struct ExprNode;

/// Immutable expression handle. Cheap to copy; the underlying tree is shared.
/// Values obtained from the public constructors and arithmetic operators are
/// in normal form; the `raw_*` factories build unnormalized trees.
class Expr {
 public:
  struct Constant {
    Rational value;
  };
  struct SymbolRef {
    Symbol symbol;
  };
  struct Sum {
    std::vector<Expr> terms;
  };
  struct Product {
    std::vector<Expr> factors;
  };
  struct Power;
  struct Apply;
  using Node = std::variant<Constant, SymbolRef, Sum, Product, Power, Apply>;

  Expr();  // zero
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(const Symbol& symbol);  // NOLINT(google-explicit-constructor)

  static Expr raw_sum(std::vector<Expr> terms);
  static Expr raw_product(std::vector<Expr> factors);
  static Expr raw_power(Expr base, Rational exponent);
  static Expr raw_apply(Func func, Expr arg);

  const Node& node() const;
  std::uint64_t hash() const;

  bool is_constant() const;
  bool is_zero() const;
  bool is_one() const;
  /// Requires is_constant().
  const Rational& constant_value() const;
  const Symbol* as_symbol() const;

  /// Structural identity (cheap; meaningful on normalized values).
  bool identical(const Expr& other) const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct Expr::Power {
  Expr base;
  Rational exponent;
};

struct Expr::Apply {
  Func func;
  Expr arg;
};

/// Total structural order on expressions (deterministic across runs).
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

/// Canonical rational normal form: numerator expanded over the atoms
/// (symbols, function applications, rational-power roots), denominator kept
/// as a product of primitive polynomial factors, with common factors
/// cancelled when one divides the other exactly. cos^2 and cosh^2 are
/// eliminated in favour of sin^2 and sinh^2.
Expr normalize(const Expr& e);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Rational& exponent);
Expr apply(Func func, const Expr& arg);

/// True when a and b agree as rational functions of their atoms.
bool equivalent(const Expr& a, const Expr& b);

/// Partial derivative with every other symbol held fixed. Unknown functions
/// whose argument list contains `s` yield tagged derivative symbols.
Expr differentiate(const Expr& e, const Symbol& s);

using Bindings = std::map<Symbol, Expr>;

/// Simultaneous substitution followed by normalization. A binding may refer
/// to its own symbol (x -> x + eps); chains that loop back through other
/// bindings are rejected.
Expr substitute(const Expr& e, const Bindings& bindings);

/// Replaces every unknown-function symbol named in `functions` (and each of
/// its derivative symbols) by the given expression and its derivatives.
Expr substitute_functions(const Expr& e, const std::map<std::string, Expr>& functions);

std::set<Symbol> free_symbols(const Expr& e);
bool depends_on(const Expr& e, const Symbol& s);

using NumericBindings = std::map<std::string, double>;

struct EvalOptions {
  /// Arguments of log/sqrt/rational powers and divisors must exceed this
  /// value (in absolute value for divisors) or a DomainError is raised.
  double domain_margin = 0.0;
};

/// IEEE double evaluation. Symbols are looked up by display name.
double eval_numeric(const Expr& e, const NumericBindings& bindings, const EvalOptions& opts = {});

using Monomial = std::vector<int>;

/// Decomposes e = sum(monomial * coeff) over `vars`. Coefficients are free of
/// `vars`. Throws NotPolynomial when a var occurs in a denominator or inside
/// a transcendental/root atom.
std::map<Monomial, Expr> poly_coeffs(const Expr& e, const std::vector<Symbol>& vars);

/// Rewrites exp/sin/cos/sinh/cosh of sums and integer multiples via the
/// addition formulas, and odd/even parity for negated arguments. Used to
/// close one-parameter group-law identities.
Expr expand_transcendental(const Expr& e);

std::string to_string(const Expr& e);

/// Numerator and denominator of the normal form (denominator 1 when absent).
std::pair<Expr, Expr> numerator_denominator(const Expr& e);

}  // namespace liesym
