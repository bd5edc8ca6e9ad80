#include "liesym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "normal_form.hpp"

namespace liesym {

struct ExprNode {
  Expr::Node node;
  std::uint64_t hash;
};

namespace {

constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * kFnvPrime;
}

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * kFnvPrime;
  return h;
}

std::uint64_t hash_rational(const Rational& q) { return hash_string(q.get_str()); }

std::uint64_t hash_symbol(const Symbol& s) {
  std::uint64_t h = mix(kFnvOffset, static_cast<std::uint64_t>(s.kind));
  h = mix(h, hash_string(s.name));
  for (const auto& i : s.index) h = mix(h, hash_string(i));
  h = mix(h, 0xabcdef);
  for (const auto& a : s.args) h = mix(h, hash_string(a));
  return h;
}

std::uint64_t compute_hash(const Expr::Node& n) {
  return std::visit(
      [](const auto& v) -> std::uint64_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return mix(1, hash_rational(v.value));
        } else if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          return mix(2, hash_symbol(v.symbol));
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          std::uint64_t h = 3;
          for (const auto& t : v.terms) h = mix(h, t.hash());
          return h;
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          std::uint64_t h = 4;
          for (const auto& t : v.factors) h = mix(h, t.hash());
          return h;
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          return mix(mix(5, v.base.hash()), hash_rational(v.exponent));
        } else {
          return mix(mix(6, static_cast<std::uint64_t>(v.func)), v.arg.hash());
        }
      },
      n);
}

int natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) &&
        std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const auto na = std::stoull(std::string(a.substr(i, ie - i)));
      const auto nb = std::stoull(std::string(b.substr(j, je - j)));
      if (na != nb) return na < nb ? -1 : 1;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
    ++i;
    ++j;
  }
  if (a.size() - i != b.size() - j) return (a.size() - i) < (b.size() - j) ? -1 : 1;
  return 0;
}

int compare_names(std::string_view a, std::string_view b) {
  const int ra = variable_rank(a);
  const int rb = variable_rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  return natural_compare(a, b);
}

int compare_name_lists(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const int c = compare_names(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

void sort_index(std::vector<std::string>& index) {
  std::sort(index.begin(), index.end(),
            [](const std::string& a, const std::string& b) { return compare_names(a, b) < 0; });
}

void sort_index_by_args(std::vector<std::string>& index, const std::vector<std::string>& args) {
  auto pos = [&](const std::string& v) {
    auto it = std::find(args.begin(), args.end(), v);
    return static_cast<long>(it - args.begin());
  };
  std::sort(index.begin(), index.end(), [&](const std::string& a, const std::string& b) {
    const long pa = pos(a);
    const long pb = pos(b);
    if (pa != pb) return pa < pb;
    return compare_names(a, b) < 0;
  });
}

int kind_order(const Expr::Node& n) {
  switch (n.index()) {
    case 0: return 0;  // Constant
    case 1: return 1;  // Symbol
    case 5: return 2;  // Apply
    case 4: return 3;  // Power
    case 3: return 4;  // Product
    default: return 5; // Sum
  }
}

template <class T>
int compare_lists(const std::vector<T>& a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::shared_ptr<const ExprNode> make_node(Expr::Node n) {
  const auto h = compute_hash(n);
  return std::make_shared<const ExprNode>(ExprNode{std::move(n), h});
}

}  // namespace

// ---------------------------------------------------------------- Symbol

int variable_rank(std::string_view name) {
  if (name == "x") return 0;
  if (name == "t") return 1;
  if (name == "u") return 2;
  return 3;
}

Symbol Symbol::independent(std::string name) {
  return Symbol{SymbolKind::Independent, std::move(name), {}, {}};
}

Symbol Symbol::dependent(std::string name) {
  return Symbol{SymbolKind::Dependent, std::move(name), {}, {}};
}

Symbol Symbol::jet(std::vector<std::string> index, std::string base) {
  sort_index(index);
  return Symbol{SymbolKind::Jet, std::move(base), std::move(index), {}};
}

Symbol Symbol::parameter(std::string name) {
  return Symbol{SymbolKind::Parameter, std::move(name), {}, {}};
}

Symbol Symbol::unknown(std::string name, std::vector<std::string> args,
                       std::vector<std::string> index) {
  sort_index_by_args(index, args);
  return Symbol{SymbolKind::Unknown, std::move(name), std::move(index), std::move(args)};
}

std::string Symbol::display() const {
  if (index.empty()) return name;
  std::string out = name + "_";
  for (const auto& i : index) out += i;
  return out;
}

int compare(const Symbol& a, const Symbol& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case SymbolKind::Jet:
    case SymbolKind::Unknown: {
      if (a.kind == SymbolKind::Unknown) {
        const int n = natural_compare(a.name, b.name);
        if (n != 0) return n;
      }
      if (a.index.size() != b.index.size()) return a.index.size() < b.index.size() ? -1 : 1;
      const int c = compare_name_lists(a.index, b.index);
      if (c != 0) return c;
      const int n = natural_compare(a.name, b.name);
      if (n != 0) return n;
      return compare_name_lists(a.args, b.args);
    }
    default:
      return compare_names(a.name, b.name);
  }
}

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Arctan: return "arctan";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------- Expr

Expr::Expr() : Expr(Rational(0)) {}
Expr::Expr(long value) : Expr(Rational(value)) {}
Expr::Expr(const Rational& value) : node_(make_node(Constant{value})) {}
Expr::Expr(const Symbol& symbol) : node_(make_node(SymbolRef{symbol})) {}

Expr Expr::raw_sum(std::vector<Expr> terms) { return Expr(make_node(Sum{std::move(terms)})); }
Expr Expr::raw_product(std::vector<Expr> factors) {
  return Expr(make_node(Product{std::move(factors)}));
}
Expr Expr::raw_power(Expr base, Rational exponent) {
  return Expr(make_node(Power{std::move(base), std::move(exponent)}));
}
Expr Expr::raw_apply(Func func, Expr arg) { return Expr(make_node(Apply{func, std::move(arg)})); }

const Expr::Node& Expr::node() const { return node_->node; }
std::uint64_t Expr::hash() const { return node_->hash; }

bool Expr::is_constant() const { return std::holds_alternative<Constant>(node()); }
bool Expr::is_zero() const { return is_constant() && constant_value() == 0; }
bool Expr::is_one() const { return is_constant() && constant_value() == 1; }
const Rational& Expr::constant_value() const { return std::get<Constant>(node()).value; }
const Symbol* Expr::as_symbol() const {
  const auto* s = std::get_if<SymbolRef>(&node());
  return s ? &s->symbol : nullptr;
}

bool Expr::identical(const Expr& other) const {
  if (node_ == other.node_) return true;
  return hash() == other.hash() && compare(*this, other) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return 0;
  const int ka = kind_order(a.node());
  const int kb = kind_order(b.node());
  if (ka != kb) return ka < kb ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          const int c = cmp(x.value, y.value);
          return c < 0 ? -1 : (c > 0 ? 1 : 0);
        } else if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          return compare(x.symbol, y.symbol);
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          return compare_lists(x.terms, y.terms);
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          return compare_lists(x.factors, y.factors);
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          const int c = compare(x.base, y.base);
          if (c != 0) return c;
          const int k = cmp(x.exponent, y.exponent);
          return k < 0 ? -1 : (k > 0 ? 1 : 0);
        } else {
          if (x.func != y.func) return x.func < y.func ? -1 : 1;
          return compare(x.arg, y.arg);
        }
      },
      a.node());
}

// ---------------------------------------------------------------- arithmetic

Expr normalize(const Expr& e) { return detail::to_expr(detail::normal_rf(e)); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  return normalize(Expr::raw_sum({a, b}));
}
Expr operator-(const Expr& a) { return normalize(Expr::raw_product({Expr(-1L), a})); }
Expr operator-(const Expr& a, const Expr& b) {
  return normalize(Expr::raw_sum({a, Expr::raw_product({Expr(-1L), b})}));
}
Expr operator*(const Expr& a, const Expr& b) { return normalize(Expr::raw_product({a, b})); }
Expr operator/(const Expr& a, const Expr& b) {
  return normalize(Expr::raw_product({a, Expr::raw_power(b, -1)}));
}
Expr pow(const Expr& base, const Rational& exponent) {
  return normalize(Expr::raw_power(base, exponent));
}
Expr apply(Func func, const Expr& arg) { return normalize(Expr::raw_apply(func, arg)); }

bool equivalent(const Expr& a, const Expr& b) { return (a - b).is_zero(); }

std::pair<Expr, Expr> numerator_denominator(const Expr& e) {
  const auto rf = detail::normal_rf(e);
  detail::RatFunc den{detail::Poly{{detail::Mono{}, Rational(1)}}, {}};
  Expr d = 1L;
  std::vector<Expr> factors;
  for (const auto& [f, k] : rf.den) factors.push_back(Expr::raw_power(detail::poly_to_expr(f), k));
  if (!factors.empty()) d = normalize(Expr::raw_product(factors));
  return {detail::poly_to_expr(rf.num), d};
}

// ---------------------------------------------------------------- symbols

namespace {

void collect_symbols(const Expr& e, std::set<Symbol>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          out.insert(n.symbol);
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          for (const auto& t : n.terms) collect_symbols(t, out);
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          for (const auto& t : n.factors) collect_symbols(t, out);
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          collect_symbols(n.base, out);
        } else if constexpr (std::is_same_v<T, Expr::Apply>) {
          collect_symbols(n.arg, out);
        }
      },
      e.node());
}

Symbol variable_symbol(const std::string& name) {
  if (name == "x" || name == "t") return Symbol::independent(name);
  if (name == "u") return Symbol::dependent(name);
  return Symbol::parameter(name);
}

bool same_variable(const Symbol& s, const std::string& name) {
  return (s.kind == SymbolKind::Independent || s.kind == SymbolKind::Dependent ||
          s.kind == SymbolKind::Parameter) &&
         s.name == name && s.index.empty();
}

}  // namespace

std::set<Symbol> free_symbols(const Expr& e) {
  std::set<Symbol> out;
  collect_symbols(e, out);
  return out;
}

bool depends_on(const Expr& e, const Symbol& s) {
  const auto syms = free_symbols(e);
  if (syms.count(s)) return true;
  for (const auto& f : syms) {
    if (f.kind != SymbolKind::Unknown) continue;
    for (const auto& a : f.args) {
      if (same_variable(s, a)) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- differentiation

namespace {

Expr diff_raw(const Expr& e, const Symbol& s) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return Expr(0L);
        } else if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          if (n.symbol == s) return Expr(1L);
          if (n.symbol.kind == SymbolKind::Unknown) {
            for (const auto& a : n.symbol.args) {
              if (same_variable(s, a)) {
                auto index = n.symbol.index;
                index.push_back(a);
                return Expr(Symbol::unknown(n.symbol.name, n.symbol.args, index));
              }
            }
          }
          return Expr(0L);
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          std::vector<Expr> terms;
          for (const auto& t : n.terms) {
            Expr d = diff_raw(t, s);
            if (!d.is_zero()) terms.push_back(std::move(d));
          }
          if (terms.empty()) return Expr(0L);
          return Expr::raw_sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          std::vector<Expr> terms;
          for (std::size_t i = 0; i < n.factors.size(); ++i) {
            Expr d = diff_raw(n.factors[i], s);
            if (d.is_zero()) continue;
            std::vector<Expr> f = n.factors;
            f[i] = d;
            terms.push_back(Expr::raw_product(std::move(f)));
          }
          if (terms.empty()) return Expr(0L);
          return Expr::raw_sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          Expr d = diff_raw(n.base, s);
          if (d.is_zero()) return Expr(0L);
          return Expr::raw_product(
              {Expr(n.exponent), Expr::raw_power(n.base, n.exponent - 1), d});
        } else {
          Expr d = diff_raw(n.arg, s);
          if (d.is_zero()) return Expr(0L);
          const Expr& a = n.arg;
          Expr outer;
          switch (n.func) {
            case Func::Exp: outer = e; break;
            case Func::Log: outer = Expr::raw_power(a, -1); break;
            case Func::Sin: outer = Expr::raw_apply(Func::Cos, a); break;
            case Func::Cos:
              outer = Expr::raw_product({Expr(-1L), Expr::raw_apply(Func::Sin, a)});
              break;
            case Func::Tan:
              outer = Expr::raw_sum({Expr(1L), Expr::raw_power(e, 2)});
              break;
            case Func::Arctan:
              outer = Expr::raw_power(Expr::raw_sum({Expr(1L), Expr::raw_power(a, 2)}), -1);
              break;
            case Func::Sinh: outer = Expr::raw_apply(Func::Cosh, a); break;
            case Func::Cosh: outer = Expr::raw_apply(Func::Sinh, a); break;
            case Func::Sqrt:
              outer = Expr::raw_product({Expr(Rational(1, 2)), Expr::raw_power(a, Rational(-1, 2))});
              break;
          }
          return Expr::raw_product({outer, d});
        }
      },
      e.node());
}

}  // namespace

Expr differentiate(const Expr& e, const Symbol& s) { return normalize(diff_raw(e, s)); }

// ---------------------------------------------------------------- substitution

namespace {

Expr rebuild(const Expr& e, const std::function<std::optional<Expr>(const Symbol&)>& leaf) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return e;
        } else if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          auto r = leaf(n.symbol);
          return r ? *r : e;
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          std::vector<Expr> terms;
          terms.reserve(n.terms.size());
          for (const auto& t : n.terms) terms.push_back(rebuild(t, leaf));
          return Expr::raw_sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          std::vector<Expr> f;
          f.reserve(n.factors.size());
          for (const auto& t : n.factors) f.push_back(rebuild(t, leaf));
          return Expr::raw_product(std::move(f));
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          return Expr::raw_power(rebuild(n.base, leaf), n.exponent);
        } else {
          return Expr::raw_apply(n.func, rebuild(n.arg, leaf));
        }
      },
      e.node());
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  // Reject chains a -> ...b..., b -> ...a... (self references are allowed).
  std::map<Symbol, std::vector<Symbol>> edges;
  for (const auto& [s, v] : bindings) {
    for (const auto& d : free_symbols(v)) {
      if (!(d == s) && bindings.count(d)) edges[s].push_back(d);
    }
  }
  std::map<Symbol, int> state;
  std::function<void(const Symbol&)> visit = [&](const Symbol& s) {
    state[s] = 1;
    for (const auto& d : edges[s]) {
      if (state[d] == 1) throw Error(ErrorCode::CyclicBinding, "cyclic binding through " + s.display());
      if (state[d] == 0) visit(d);
    }
    state[s] = 2;
  };
  for (const auto& [s, v] : bindings) {
    if (state[s] == 0) visit(s);
  }
  return normalize(rebuild(e, [&](const Symbol& s) -> std::optional<Expr> {
    auto it = bindings.find(s);
    if (it == bindings.end()) return std::nullopt;
    return it->second;
  }));
}

Expr substitute_functions(const Expr& e, const std::map<std::string, Expr>& functions) {
  std::map<Symbol, Expr> cache;
  return normalize(rebuild(e, [&](const Symbol& s) -> std::optional<Expr> {
    if (s.kind != SymbolKind::Unknown) return std::nullopt;
    auto it = functions.find(s.name);
    if (it == functions.end()) return std::nullopt;
    auto c = cache.find(s);
    if (c != cache.end()) return c->second;
    Expr g = it->second;
    for (const auto& v : s.index) g = differentiate(g, variable_symbol(v));
    cache.emplace(s, g);
    return g;
  }));
}

// ---------------------------------------------------------------- numeric

namespace {

[[noreturn]] void domain_error(const std::string& what, const Expr& sub) {
  throw Error(ErrorCode::Domain, what + " in " + to_string(sub));
}

double eval_rec(const Expr& e, const NumericBindings& b, const EvalOptions& opts) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return n.value.get_d();
        } else if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          auto it = b.find(n.symbol.display());
          if (it == b.end()) {
            throw Error(ErrorCode::UnboundSymbol, "unbound symbol " + n.symbol.display());
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          double s = 0.0;
          for (const auto& t : n.terms) s += eval_rec(t, b, opts);
          return s;
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          double p = 1.0;
          for (const auto& t : n.factors) p *= eval_rec(t, b, opts);
          return p;
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          const double base = eval_rec(n.base, b, opts);
          if (n.exponent.get_den() == 1) {
            const long k = n.exponent.get_num().get_si();
            if (k < 0 && std::abs(base) <= opts.domain_margin) domain_error("division by zero", e);
            return std::pow(base, static_cast<double>(k));
          }
          if (base < 0 || (n.exponent < 0 ? base <= opts.domain_margin : base < opts.domain_margin)) {
            domain_error("negative base of rational power", e);
          }
          return std::pow(base, n.exponent.get_d());
        } else {
          const double a = eval_rec(n.arg, b, opts);
          switch (n.func) {
            case Func::Exp: return std::exp(a);
            case Func::Log:
              if (a <= opts.domain_margin) domain_error("log of non-positive value", e);
              return std::log(a);
            case Func::Sin: return std::sin(a);
            case Func::Cos: return std::cos(a);
            case Func::Tan: return std::tan(a);
            case Func::Arctan: return std::atan(a);
            case Func::Sinh: return std::sinh(a);
            case Func::Cosh: return std::cosh(a);
            case Func::Sqrt:
              if (a < 0 || a < opts.domain_margin) domain_error("sqrt of negative value", e);
              return std::sqrt(a);
          }
          return 0.0;
        }
      },
      e.node());
}

}  // namespace

double eval_numeric(const Expr& e, const NumericBindings& bindings, const EvalOptions& opts) {
  const double v = eval_rec(e, bindings, opts);
  if (!std::isfinite(v)) throw Error(ErrorCode::Domain, "non-finite value of " + to_string(e));
  return v;
}

// ---------------------------------------------------------------- coefficients

std::map<Monomial, Expr> poly_coeffs(const Expr& e, const std::vector<Symbol>& vars) {
  const auto rf = detail::normal_rf(e);
  auto mentions_var = [&](const Expr& atom) {
    for (const auto& v : vars) {
      if (depends_on(atom, v)) return true;
    }
    return false;
  };
  for (const auto& [f, k] : rf.den) {
    for (const auto& [m, c] : f) {
      for (const auto& [atom, ex] : m) {
        if (mentions_var(atom)) {
          throw Error(ErrorCode::NotPolynomial,
                      "denominator depends on a coefficient variable: " + to_string(e));
        }
      }
    }
  }
  std::map<Monomial, detail::Poly> parts;
  for (const auto& [m, c] : rf.num) {
    Monomial key(vars.size(), 0);
    detail::Mono rest;
    for (const auto& [atom, ex] : m) {
      const Symbol* s = atom.as_symbol();
      bool matched = false;
      if (s) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
          if (*s == vars[i]) {
            key[i] += ex;
            matched = true;
            break;
          }
        }
      }
      if (matched) continue;
      if (mentions_var(atom)) {
        throw Error(ErrorCode::NotPolynomial,
                    "variable occurs inside " + to_string(atom) + " in " + to_string(e));
      }
      rest.emplace_back(atom, ex);
    }
    auto& p = parts[key];
    auto [it, inserted] = p.try_emplace(rest, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) p.erase(it);
    }
  }
  std::map<Monomial, Expr> out;
  for (auto& [key, p] : parts) {
    if (p.empty()) continue;
    detail::RatFunc coeff{p, rf.den};
    out.emplace(key, normalize(detail::to_expr(coeff)));
  }
  return out;
}

// ---------------------------------------------------------------- expansion

namespace {

bool expandable(Func f) {
  return f == Func::Exp || f == Func::Sin || f == Func::Cos || f == Func::Sinh || f == Func::Cosh;
}

Expr expand_rec(const Expr& e);

Expr expand_fn(Func f, const Expr& arg) {
  // arg is normalized.
  if (const auto* s = std::get_if<Expr::Sum>(&arg.node())) {
    const Expr a = s->terms.front();
    std::vector<Expr> rest(s->terms.begin() + 1, s->terms.end());
    const Expr b = rest.size() == 1 ? rest.front() : Expr::raw_sum(rest);
    auto F = [&](Func g, const Expr& x) { return expand_fn(g, normalize(x)); };
    switch (f) {
      case Func::Exp: return F(Func::Exp, a) * F(Func::Exp, b);
      case Func::Sin: return F(Func::Sin, a) * F(Func::Cos, b) + F(Func::Cos, a) * F(Func::Sin, b);
      case Func::Cos: return F(Func::Cos, a) * F(Func::Cos, b) - F(Func::Sin, a) * F(Func::Sin, b);
      case Func::Sinh:
        return F(Func::Sinh, a) * F(Func::Cosh, b) + F(Func::Cosh, a) * F(Func::Sinh, b);
      case Func::Cosh:
        return F(Func::Cosh, a) * F(Func::Cosh, b) + F(Func::Sinh, a) * F(Func::Sinh, b);
      default: break;
    }
  }
  // Leading constant coefficient of a single term.
  Rational coeff = 1;
  Expr rest = arg;
  if (arg.is_constant()) {
    coeff = arg.constant_value();
    rest = Expr(1L);
  } else if (const auto* p = std::get_if<Expr::Product>(&arg.node())) {
    if (p->factors.front().is_constant()) {
      coeff = p->factors.front().constant_value();
      std::vector<Expr> fs(p->factors.begin() + 1, p->factors.end());
      rest = fs.size() == 1 ? fs.front() : Expr::raw_product(fs);
    }
  }
  if (coeff < 0) {
    const Expr pos = normalize(Expr::raw_product({Expr(-coeff), rest}));
    switch (f) {
      case Func::Exp: return Expr(1L) / expand_fn(Func::Exp, pos);
      case Func::Sin: return -expand_fn(Func::Sin, pos);
      case Func::Sinh: return -expand_fn(Func::Sinh, pos);
      case Func::Cos: return expand_fn(Func::Cos, pos);
      case Func::Cosh: return expand_fn(Func::Cosh, pos);
      default: break;
    }
  }
  if (coeff.get_den() == 1 && coeff > 1 && !arg.is_constant()) {
    // n*m -> m + (n-1)*m; built explicitly since normalize would recombine.
    const Expr one = normalize(rest);
    const Expr others = normalize(Expr::raw_product({Expr(coeff - 1), rest}));
    auto F = [&](Func g, const Expr& x) { return expand_fn(g, x); };
    switch (f) {
      case Func::Exp: return F(Func::Exp, one) * F(Func::Exp, others);
      case Func::Sin:
        return F(Func::Sin, one) * F(Func::Cos, others) + F(Func::Cos, one) * F(Func::Sin, others);
      case Func::Cos:
        return F(Func::Cos, one) * F(Func::Cos, others) - F(Func::Sin, one) * F(Func::Sin, others);
      case Func::Sinh:
        return F(Func::Sinh, one) * F(Func::Cosh, others) +
               F(Func::Cosh, one) * F(Func::Sinh, others);
      case Func::Cosh:
        return F(Func::Cosh, one) * F(Func::Cosh, others) +
               F(Func::Sinh, one) * F(Func::Sinh, others);
      default: break;
    }
  }
  return apply(f, arg);
}

Expr expand_rec(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant> || std::is_same_v<T, Expr::SymbolRef>) {
          return e;
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          std::vector<Expr> terms;
          for (const auto& t : n.terms) terms.push_back(expand_rec(t));
          return Expr::raw_sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          std::vector<Expr> f;
          for (const auto& t : n.factors) f.push_back(expand_rec(t));
          return Expr::raw_product(std::move(f));
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          return Expr::raw_power(expand_rec(n.base), n.exponent);
        } else {
          const Expr arg = normalize(expand_rec(n.arg));
          if (!expandable(n.func)) return Expr::raw_apply(n.func, arg);
          return expand_fn(n.func, arg);
        }
      },
      e.node());
}

}  // namespace

Expr expand_transcendental(const Expr& e) { return normalize(expand_rec(normalize(e))); }

// ---------------------------------------------------------------- printing

namespace {

// Precedence: 0 sum, 1 product, 2 power base / unary.
std::string print(const Expr& e, int prec);

std::string print_rational(const Rational& q, int prec) {
  std::string s = q.get_str();
  const bool needs = (q < 0 && prec > 0) || (q.get_den() != 1 && prec > 0);
  return needs ? "(" + s + ")" : s;
}

std::string print_exponent(const Rational& q) {
  if (q.get_den() == 1 && q > 0) return q.get_str();
  return "(" + q.get_str() + ")";
}

std::string print_power(const Expr& base, const Rational& exponent) {
  if (exponent == Rational(1, 2)) return "sqrt(" + print(base, 0) + ")";
  return print(base, 2) + "^" + print_exponent(exponent);
}

std::string print_product(const Expr::Product& p, int prec) {
  std::vector<std::string> num;
  std::vector<std::string> den;
  bool negative = false;
  for (const auto& f : p.factors) {
    if (f.is_constant()) {
      Rational c = f.constant_value();
      if (c < 0) {
        negative = !negative;
        c = -c;
      }
      if (c.get_num() != 1) num.push_back(c.get_num().get_str());
      if (c.get_den() != 1) den.push_back(c.get_den().get_str());
      continue;
    }
    if (const auto* pw = std::get_if<Expr::Power>(&f.node())) {
      if (pw->exponent < 0) {
        const Rational pos = -pw->exponent;
        den.push_back(pos == 1 ? print(pw->base, 2) : print_power(pw->base, pos));
        continue;
      }
    }
    num.push_back(print(f, 1));
  }
  std::string out;
  if (num.empty()) out = "1";
  for (std::size_t i = 0; i < num.size(); ++i) out += (i ? "*" : "") + num[i];
  if (!den.empty()) {
    out += "/";
    if (den.size() == 1) {
      out += den.front();
    } else {
      out += "(";
      for (std::size_t i = 0; i < den.size(); ++i) out += (i ? "*" : "") + den[i];
      out += ")";
    }
  }
  if (negative) out = "-" + out;
  if ((negative && prec > 0) || prec > 1) out = "(" + out + ")";
  return out;
}

std::string print(const Expr& e, int prec) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return print_rational(n.value, prec);
        } else if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          return n.symbol.display();
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          std::string out;
          for (std::size_t i = 0; i < n.terms.size(); ++i) {
            std::string t = print(n.terms[i], 0);
            if (i == 0) {
              out = t;
            } else if (!t.empty() && t[0] == '-') {
              out += " - " + t.substr(1);
            } else {
              out += " + " + t;
            }
          }
          return prec > 0 ? "(" + out + ")" : out;
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          return print_product(n, prec);
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          if (n.exponent < 0) {
            const Rational pos = -n.exponent;
            std::string s = "1/" + (pos == 1 ? print(n.base, 2) : print_power(n.base, pos));
            return prec > 0 ? "(" + s + ")" : s;
          }
          return print_power(n.base, n.exponent);
        } else {
          return std::string(func_name(n.func)) + "(" + print(n.arg, 0) + ")";
        }
      },
      e.node());
}

}  // namespace

std::string to_string(const Expr& e) { return print(e, 0); }

}  // namespace liesym
