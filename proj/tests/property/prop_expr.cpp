#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "liesym/jet.hpp"
#include "liesym/parser.hpp"

using namespace liesym;
using testgen::Gen;

namespace {

const Symbol kDiffVars[] = {x_symbol(), t_symbol(), u_symbol(), Symbol::jet({"x"})};

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

TEST_SUITE("expr") {
  TEST_CASE("normalize is idempotent") {
    Gen g(1);
    for (int n = 0; n < 200; ++n) {
      const Expr raw = g.expr(3);
      const Expr once = normalize(raw);
      CAPTURE(to_string(once));
      CHECK(normalize(once).identical(once));
    }
  }

  TEST_CASE("differentiation is linear and obeys the product rule") {
    Gen g(2);
    for (int n = 0; n < 150; ++n) {
      const Expr f = normalize(g.expr(3));
      const Expr h = normalize(g.expr(3));
      const Symbol& s = kDiffVars[g.integer(0, 3)];
      const Rational a = g.rational();
      CAPTURE(to_string(f));
      CAPTURE(to_string(h));
      CHECK((differentiate(f * h, s) - differentiate(f, s) * h - f * differentiate(h, s)).is_zero());
      CHECK((differentiate(Expr(a) * f + h, s) - Expr(a) * differentiate(f, s) - differentiate(h, s)).is_zero());
    }
  }

  TEST_CASE("parser round trip") {
    Gen g(3);
    for (int n = 0; n < 200; ++n) {
      const Expr e = normalize(g.expr(3));
      const std::string text = to_string(e);
      CAPTURE(text);
      CHECK(parse(text).identical(e));
    }
  }

  TEST_CASE("poly_coeffs reassembles its input") {
    Gen g(4);
    const std::vector<Symbol> vars{Symbol::jet({"x"}), Symbol::jet({"t"}), Symbol::jet({"x", "t"})};
    for (int n = 0; n < 150; ++n) {
      // Coefficients may carry x, t, u and transcendental atoms free of the vars.
      Expr e;
      for (int k = 0; k < 4; ++k) {
        Expr coeff = g.polynomial({x_symbol(), t_symbol(), u_symbol()}, 2, 2);
        if (g.coin(0.3)) coeff = coeff * apply(Func::Sin, Expr(x_symbol()));
        e = e + coeff * g.polynomial(vars, 3, 1);
      }
      Expr back;
      for (const auto& [mono, c] : poly_coeffs(e, vars)) {
        Expr m = c;
        for (std::size_t k = 0; k < vars.size(); ++k) m = m * pow(Expr(vars[k]), Rational(mono[k]));
        CHECK_FALSE(depends_on(c, vars[0]));
        back = back + m;
      }
      CAPTURE(to_string(e));
      CHECK((back - e).is_zero());
    }
  }

  TEST_CASE("numeric evaluation respects normalization") {
    Gen g(5);
    int compared = 0;
    for (int n = 0; n < 300; ++n) {
      const Expr raw = g.expr(3);
      const Expr norm = normalize(raw);
      const auto b = g.bindings(raw);
      double a = 0;
      double c = 0;
      try {
        a = eval_numeric(raw, b);
        c = eval_numeric(norm, b);
      } catch (const Error&) {
        continue;
      }
      if (!std::isfinite(a) || std::abs(a) > 1e6) continue;
      ++compared;
      CAPTURE(to_string(norm));
      CHECK(close(a, c));
    }
    CHECK(compared > 200);
  }

  TEST_CASE("numeric evaluation respects the squared identities") {
    Gen g(6);
    for (int n = 0; n < 100; ++n) {
      const Expr e = normalize(g.expr(2));
      const Expr s = g.atom();
      const Expr one_trig = pow(apply(Func::Sin, s), 2) + pow(apply(Func::Cos, s), 2);
      const Expr one_hyp = pow(apply(Func::Cosh, s), 2) - pow(apply(Func::Sinh, s), 2);
      CHECK((e * one_trig - e).is_zero());
      CHECK((e * one_hyp - e).is_zero());
      const auto b = g.bindings(Expr::raw_product({e, s}));
      double lhs = 0;
      double rhs = 0;
      try {
        lhs = eval_numeric(Expr::raw_product({e, one_hyp}), b);
        rhs = eval_numeric(e, b);
      } catch (const Error&) {
        continue;
      }
      CHECK(close(lhs, rhs));
    }
  }
}
