#include <cmath>

#include "doctest.h"
#include "liesym/borninfeld.hpp"
#include "liesym/parser.hpp"
#include "liesym/solutions.hpp"

using namespace liesym;

namespace {

const Pde& bi() {
  static const Pde p = born_infeld_pde();
  return p;
}

const GroupAction& action(int i) {
  static const auto all = action_fixtures();
  return all.at(static_cast<std::size_t>(i - 1)).action;
}

VectorField gen(int i) { return born_infeld_generators().at(static_cast<std::size_t>(i - 1)).field; }

bool all_zero(const std::array<Expr, 3>& a) { return a[0].is_zero() && a[1].is_zero() && a[2].is_zero(); }

SolutionCandidate explicit_solution(const std::string& text, std::map<std::string, double> params = {}) {
  SolutionCandidate s = parse_solution(text);
  s.params = std::move(params);
  return s;
}

double eval_at(const SolutionCandidate& s, double x, double t) {
  NumericBindings b(s.params.begin(), s.params.end());
  b["x"] = x;
  b["t"] = t;
  return eval_numeric(s.expr, b);
}

const Grid kGrid = parse_grid("x=-0.5:0.5:41,t=1.2:2:41");

}  // namespace

TEST_SUITE("solutions") {
  TEST_CASE("infinitesimal checks") {
    CHECK(all_zero(infinitesimal_check(action(7), gen(7))));
    CHECK(all_zero(infinitesimal_check(action(4), gen(4))));
    CHECK_FALSE(all_zero(infinitesimal_check(action(1), gen(2))));
  }

  TEST_CASE("group law and identity for every action") {
    for (int i = 1; i <= 7; ++i) {
      CAPTURE(i);
      CHECK(all_zero(group_law_defect(action(i))));
      CHECK(all_zero(identity_defect(action(i))));
    }
  }

  TEST_CASE("parse_solution and parse_grid") {
    const auto s = parse_solution("implicit:u^2 - x");
    CHECK(s.form == SolutionCandidate::Form::Implicit);
    CHECK(parse_solution("c1*t").form == SolutionCandidate::Form::Explicit);
    CHECK(kGrid.nx == 41);
    CHECK(kGrid.t0 == 1.2);
    CHECK(kGrid.x1 == 0.5);
    CHECK_THROWS_AS(parse_grid("x=0:1"), Error);
    CHECK_THROWS_AS(parse_grid("x=0:1:0,t=0:1:5"), Error);
  }

  TEST_CASE("transport of explicit solutions") {
    const auto f = explicit_solution("c1*t + c2", {{"c1", 0.4}, {"c2", 1.3}});
    const auto g3 = transform_solution(action(3), 0.5, f);
    CHECK(g3.form == SolutionCandidate::Form::Explicit);
    CHECK(eval_at(g3, 0.2, 1.5) == doctest::Approx(0.4 * 1.5 + 1.3 + 0.5));
    const auto g7 = transform_solution(action(7), 0.6, explicit_solution("x"));
    CHECK(eval_at(g7, 0.3, 1.4) == doctest::Approx(0.3));
    for (int i = 1; i <= 7; ++i) {
      const auto same = transform_solution(action(i), 0.0, f);
      CHECK(residual(bi(), same, kGrid).max_abs <= 1e-12);
    }
  }

  TEST_CASE("transport through the rotation is implicit") {
    const auto f = explicit_solution("c1*x + c2*t", {{"c1", 0.4}, {"c2", 0.3}});
    const auto g5 = transform_solution(action(5), 0.2, f);
    CHECK(g5.form == SolutionCandidate::Form::Implicit);
    const auto r = residual(bi(), g5, parse_grid("x=-0.5:0.5:11,t=1.2:2:11"));
    CHECK(r.points == 121);
    CHECK(r.max_abs <= 1e-6);
  }

  TEST_CASE("residuals of the baseline solutions") {
    CHECK(residual(bi(), explicit_solution("c1*x + c2*t", {{"c1", 0.4}, {"c2", 1.3}}), kGrid).max_abs <= 1e-15);
    CHECK(residual(bi(), explicit_solution("c1*t + c2", {{"c1", 0.4}, {"c2", 1.3}}), kGrid).max_abs == 0.0);
    const auto cone = residual(bi(), explicit_solution("sqrt(t^2 - x^2)"), kGrid);
    CHECK(cone.points == 41 * 41);
    CHECK(cone.max_abs <= 1e-9);
    CHECK(residual(bi(), explicit_solution("x^2*t"), kGrid).max_abs > 1.0);
  }

  TEST_CASE("residual requires every parameter") {
    try {
      residual(bi(), explicit_solution("c1*x"), kGrid);
      FAIL("expected UnboundSymbol");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnboundSymbol);
    }
  }

  TEST_CASE("residual rejects points near singular sets") {
    const auto r = residual(bi(), explicit_solution("sqrt(t^2 - x^2)"), parse_grid("x=-1:1:21,t=0:1:21"));
    CHECK(r.rejected > 0);
    CHECK(r.points + r.rejected == 21 * 21);
  }

  TEST_CASE("invariant solutions") {
    const auto rep = verify_invariant_solution(gen(7), explicit_solution("c1*x + c2*t", {{"c1", 0.4}, {"c2", 0.3}}),
                                               bi(), kGrid);
    CHECK(rep.pde.max_abs <= 1e-12);
    CHECK(rep.invariance_max_abs <= 1e-12);
    const auto v1 = verify_invariant_solution(gen(1), explicit_solution("c1*t + c2", {{"c1", 0.4}, {"c2", 1.3}}),
                                              bi(), kGrid);
    CHECK(v1.invariance_max_abs == 0.0);
    const auto wrong = verify_invariant_solution(gen(2), explicit_solution("c1*t + c2", {{"c1", 0.4}, {"c2", 1.3}}),
                                                 bi(), kGrid);
    CHECK(wrong.invariance_max_abs > 0.1);
  }

  TEST_CASE("safeguarded Newton") {
    const auto r = safeguarded_newton([](double x) { return x * x - 2; }, [](double x) { return 2 * x; }, 1.0,
                                      1e-14, 60);
    CHECK(r.converged);
    CHECK(r.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const auto none = safeguarded_newton([](double x) { return x * x + 1; }, [](double x) { return 2 * x; }, 1.0,
                                         1e-14, 20);
    CHECK_FALSE(none.converged);
  }

  TEST_CASE("reductions") {
    const auto fx = reduction_fixtures();
    auto find = [&](const std::string& g) {
      for (const auto& r : fx)
        if (r.ansatz.generator == g) return r;
      FAIL("missing reduction " << g);
      return fx.front();
    };
    for (const char* g : {"v1", "v2"}) {
      const Reduction red = reduce(bi(), find(g).ansatz);
      CHECK_FALSE(depends_on(red.ode / Expr(ode_vpp()), ode_vpp()));
      CHECK((red.ode / Expr(ode_vpp())).is_constant());
    }
    const Reduction v7 = reduce(bi(), find("v7").ansatz);
    CHECK(substitute_ode_solution(v7.ode, parse("c1 + c2*y")).is_zero());
    CHECK_FALSE(substitute_ode_solution(v7.ode, parse("y^2")).is_zero());
  }

  TEST_CASE("change_coordinates") {
    const Expr e = parse("x + 2*t");
    CHECK(change_coordinates(e, {parse("t"), parse("x"), std::nullopt}).identical(parse("t + 2*x")));
  }
}
