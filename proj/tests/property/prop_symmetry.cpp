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

TEST_SUITE("symmetry") {
  TEST_CASE("explicit and recursive prolongations agree") {
    Gen g(21);
    for (int n = 0; n < 100; ++n) {
      const VectorField v = g.polynomial_field(2, 3);
      const ProlongedField a = prolong(v, 2);
      const ProlongedField b = prolong_recursive(v, 2);
      REQUIRE(a.coeffs.size() == b.coeffs.size());
      for (const auto& [jet, c] : a.coeffs) {
        CAPTURE(to_string(v));
        CAPTURE(jet.display());
        CHECK((c - b.coeffs.at(jet)).is_zero());
      }
    }
  }

  TEST_CASE("generators satisfy every generated determining equation") {
    const auto ds = determining_system(bi());
    for (const auto& gen : born_infeld_generators()) {
      std::vector<Expr> raw;
      for (const auto& e : ds.raw) raw.push_back(e.equation);
      CHECK_MESSAGE(equation_residuals(gen.field, raw).empty(), gen.label);
      CHECK_MESSAGE(equation_residuals(gen.field, ds.reduced).empty(), gen.label);
    }
  }

  TEST_CASE("a field is a symmetry exactly when it lies in the span") {
    Gen g(22);
    const auto gens = fields_of(born_infeld_generators());
    for (int n = 0; n < 40; ++n) {
      VectorField v{Expr(), Expr(), Expr()};
      for (const auto& f : gens) v = v + Expr(g.rational()) * f;
      if (g.coin()) v = v + g.polynomial_field(1, 2);
      std::vector<VectorField> with = gens;
      with.push_back(v);
      const bool in_span = same_span(with, gens);
      CAPTURE(to_string(v));
      CHECK(verify_symmetry(v, bi()).exact_zero == in_span);
    }
  }

  TEST_CASE("ansatz basis is closed under brackets") {
    const auto basis = solve_ansatz(determining_system(bi()), 2).basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        std::vector<VectorField> with = basis;
        with.push_back(bracket(basis[i], basis[j]));
        CHECK(same_span(with, basis));
      }
  }
}
