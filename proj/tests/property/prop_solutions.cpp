#include "doctest.h"
#include "generators.hpp"
#include "liesym/borninfeld.hpp"
#include "liesym/parser.hpp"

using namespace liesym;
using testgen::Gen;

namespace {

const Pde& bi() {
  static const Pde p = born_infeld_pde();
  return p;
}

}  // namespace

TEST_SUITE("solutions") {
  TEST_CASE("every action transports linear solutions") {
    Gen g(51);
    const auto actions = action_fixtures();
    const Grid grid = parse_grid("x=-0.5:0.5:9,t=1.2:2:9");
    for (const auto& a : actions) {
      for (int n = 0; n < 3; ++n) {
        SolutionCandidate s = parse_solution("a*x + b*t + c");
        s.params = {{"a", g.real(-0.6, 0.6)}, {"b", g.real(-0.6, 0.6)}, {"c", g.real(-1, 1)}};
        const double eps = g.real(-0.8, 0.8);
        const auto moved = transform_solution(a.action, eps, s);
        const auto r = residual(bi(), moved, grid);
        CAPTURE(a.action.label);
        CAPTURE(eps);
        CHECK(r.points == 81);
        CHECK(r.max_abs <= 1e-6);
      }
    }
  }

  TEST_CASE("lifted solutions of the reduced equations solve the equation") {
    Gen g(52);
    const Grid grid = parse_grid("x=0.5:1:21,t=1.2:2:21");
    for (const auto& fx : reduction_fixtures()) {
      if (!fx.check) continue;
      const Reduction red = reduce(bi(), fx.ansatz);
      const Expr v = parse(*fx.check);
      CHECK(substitute_ode_solution(red.ode, v).is_zero());
      for (int n = 0; n < 5; ++n) {
        const Expr lifted = substitute(fx.ansatz.g, {{ode_v(), substitute(v, {{ode_y(), fx.ansatz.y}})}});
        SolutionCandidate s;
        s.expr = lifted;
        s.params = {{"c1", g.real(-1, 1)}, {"c2", g.real(-0.5, 0.5)}};
        CAPTURE(fx.ansatz.generator);
        CHECK(residual(bi(), s, grid).max_abs <= 1e-8);
      }
    }
  }
}
