#include "generators.hpp"

#include <cstdlib>

#include "liesym/jet.hpp"

namespace liesym::testgen {

std::uint64_t base_seed() {
  if (const char* s = std::getenv("LIESYM_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611ULL;
}

Rational Gen::rational() {
  Rational q(integer(-5, 5), integer(1, 4));
  q.canonicalize();
  return q;
}

Rational Gen::nonzero_rational() {
  Rational q = rational();
  while (q == 0) q = rational();
  return q;
}

Expr Gen::atom() {
  switch (integer(0, 7)) {
    case 0: return x_symbol();
    case 1: return t_symbol();
    case 2: return u_symbol();
    case 3: return Symbol::jet({"x"});
    case 4: return Symbol::jet({"t"});
    case 5: return Symbol::jet({"x", "t"});
    case 6: return Symbol::parameter("c1");
    default: return rational();
  }
}

Expr Gen::expr(int depth) {
  if (depth <= 0 || coin(0.25)) return atom();
  switch (integer(0, 6)) {
    case 0: return Expr::raw_sum({expr(depth - 1), expr(depth - 1)});
    case 1: return Expr::raw_sum({expr(depth - 1), Expr::raw_product({Expr(-1), expr(depth - 1)})});
    case 2:
    case 3: return Expr::raw_product({expr(depth - 1), expr(depth - 1)});
    case 4: return Expr::raw_power(expr(depth - 1), Rational(integer(2, 3)));
    case 5: {
      const Expr s = atom();
      const Expr den = Expr::raw_sum({Expr(1), Expr::raw_power(s, Rational(2))});
      return Expr::raw_product({expr(depth - 1), Expr::raw_power(den, Rational(-1))});
    }
    default: {
      static constexpr Func funcs[] = {Func::Sin, Func::Cos, Func::Exp, Func::Sinh, Func::Cosh, Func::Arctan};
      // Shallow arguments keep exp/sinh of large values out of the numeric checks.
      const Expr arg = Expr::raw_sum({Expr::raw_product({Expr(Rational(1, 2)), atom()}),
                                      Expr::raw_product({Expr(Rational(1, 4)), atom()})});
      return Expr::raw_apply(funcs[integer(0, 5)], arg);
    }
  }
}

Expr Gen::polynomial(const std::vector<Symbol>& vars, int max_degree, int terms) {
  Expr out;
  for (int k = 0; k < terms; ++k) {
    Expr mono(nonzero_rational());
    const int degree = integer(0, max_degree);
    for (int d = 0; d < degree; ++d) mono = mono * Expr(vars[static_cast<std::size_t>(integer(0, static_cast<int>(vars.size()) - 1))]);
    out = out + mono;
  }
  return out;
}

Expr Gen::jet_polynomial(int max_degree, int terms) {
  return polynomial({x_symbol(), t_symbol(), u_symbol(), Symbol::jet({"x"}), Symbol::jet({"t"}),
                     Symbol::jet({"x", "x"}), Symbol::jet({"x", "t"}), Symbol::jet({"t", "t"})},
                    max_degree, terms);
}

VectorField Gen::polynomial_field(int max_degree, int terms) {
  const std::vector<Symbol> base{x_symbol(), t_symbol(), u_symbol()};
  return {polynomial(base, max_degree, terms), polynomial(base, max_degree, terms),
          polynomial(base, max_degree, terms)};
}

Element Gen::element(std::size_t n) {
  Element out(n);
  for (auto& c : out) c = rational();
  return out;
}

NumericBindings Gen::bindings(const Expr& e, double lo, double hi) {
  NumericBindings b;
  for (const auto& s : free_symbols(e)) b[s.display()] = real(lo, hi);
  return b;
}

}  // namespace liesym::testgen
