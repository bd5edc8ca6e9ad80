#include "doctest.h"
#include "liesym/borninfeld.hpp"
#include "liesym/parser.hpp"
#include "liesym/symmetry.hpp"

using namespace liesym;

namespace {

VectorField gen(int i) { return born_infeld_generators().at(static_cast<std::size_t>(i - 1)).field; }

}  // namespace

TEST_SUITE("symmetry") {
  TEST_CASE("characteristic") {
    CHECK(characteristic(gen(3)).is_one());
    CHECK(equivalent(characteristic(gen(7)), parse("u - x*u_x - t*u_t")));
    CHECK(equivalent(characteristic(gen(4)), parse("-t*u_x - x*u_t")));
  }

  TEST_CASE("second prolongation") {
    const Symbol ux = Symbol::jet({"x"});
    CHECK(prolong(gen(7), 2).coeffs.at(ux).is_zero());
    for (const auto& [jet, c] : prolong(gen(1), 2).coeffs) CHECK_MESSAGE(c.is_zero(), jet.display());
    CHECK(equivalent(prolong(gen(5), 2).coeffs.at(ux), parse("1 + u_x^2")));
    const auto pr = prolong(gen(7), 2);
    CHECK(equivalent(pr.coeffs.at(Symbol::jet({"x", "x"})), parse("-u_xx")));
  }

  TEST_CASE("prolonged field on the equation") {
    const Pde bi = born_infeld_pde();
    CHECK(apply_prolonged(prolong(gen(1), 2), bi).is_zero());
    CHECK(restrict_to_solutions(apply_prolonged(prolong(gen(7), 2), bi), bi).value.is_zero());
    CHECK_FALSE(restrict_to_solutions(apply_prolonged(prolong(make_field("0", "0", "u"), 2), bi), bi)
                    .value.is_zero());
  }

  TEST_CASE("verify_symmetry") {
    const Pde bi = born_infeld_pde();
    CHECK(verify_symmetry(gen(6), bi).exact_zero);
    CHECK(verify_symmetry(gen(3), bi).exact_zero);
    const auto xdx = verify_symmetry(make_field("x", "0", "0"), bi);
    CHECK_FALSE(xdx.exact_zero);
    CHECK_FALSE(xdx.residual.is_zero());
  }

  TEST_CASE("wave equation admits translations and scaling of u") {
    const Pde wave = make_pde(parse("u_tt - u_xx"));
    const auto ds = determining_system(wave);
    for (const auto& v : {make_field("1", "0", "0"), make_field("0", "1", "0"), make_field("0", "0", "u")}) {
      CHECK(verify_symmetry(v, wave).exact_zero);
      CHECK(equation_residuals(v, ds.reduced).empty());
    }
  }

  TEST_CASE("heat equation rejects t d_x") {
    const Pde heat = make_pde(parse("u_t - u_xx"));
    CHECK_FALSE(verify_symmetry(make_field("t", "0", "0"), heat).exact_zero);
    CHECK(verify_symmetry(make_field("2*t", "0", "-x*u"), heat).exact_zero);
    CHECK_FALSE(equation_residuals(make_field("t", "0", "0"), determining_system(heat).reduced).empty());
  }

  TEST_CASE("Born-Infeld determining system and ansatz") {
    const auto ds = determining_system(born_infeld_pde());
    CHECK(ds.clearing_power == 1);
    CHECK(ds.raw.size() == 31);
    CHECK(ds.reduced.size() == 15);
    const auto fixture = fields_of(born_infeld_generators());
    for (int degree : {1, 2}) {
      const auto sol = solve_ansatz(ds, degree);
      CHECK(sol.dimension == 7);
      CHECK(same_span(sol.basis, fixture));
    }
    const auto trans = solve_ansatz(ds, 0);
    CHECK(trans.dimension == 3);
    CHECK(same_span(trans.basis, {gen(1), gen(2), gen(3)}));
  }

  TEST_CASE("degree-2 ansatz coefficients vanish on the solution space") {
    const auto sol = solve_ansatz(determining_system(born_infeld_pde()), 2);
    const auto monos = ansatz_monomials(2);
    const std::size_t per = monos.size();
    for (std::size_t r = 0; r < sol.raw_nullspace.rows(); ++r)
      for (std::size_t f = 0; f < 3; ++f)
        for (std::size_t m = 0; m < per; ++m) {
          int deg = 0;
          for (int k : monos[m]) deg += k;
          if (deg == 2) CHECK(sol.raw_nullspace(r, f * per + m) == 0);
        }
  }

  TEST_CASE("ansatz coordinates round trip") {
    const VectorField v = make_field("x*t - 3", "u^2/2", "t");
    CHECK(equivalent(field_from_coordinates(field_coordinates(v, 2), 2), v));
    CHECK_THROWS_AS(field_coordinates(v, 1), Error);
    CHECK_THROWS_AS(field_coordinates(make_field("sin(x)", "0", "0"), 2), Error);
    CHECK(ansatz_monomials(1).size() == 4);
    CHECK(ansatz_monomials(2).size() == 10);
  }

  TEST_CASE("printed system admits exactly two extra quadratic fields") {
    const FixtureFile f = load_embedded("generators.fix");
    std::vector<Expr> printed;
    const auto ctx = ParseContext::symmetry_unknowns();
    for (const auto& [k, v] : f.get("determining/printed").entries)
      if (k != "anchor") printed.push_back(parse(v, ctx));
    CHECK(printed.size() == 10);
    const auto ds = system_from_equations(printed);
    CHECK(solve_ansatz(ds, 1).dimension == 7);
    const auto deg2 = solve_ansatz(ds, 2);
    CHECK(deg2.dimension == 9);
    auto expected = fields_of(born_infeld_generators());
    expected.push_back(make_field("x^2 + t^2 - u^2", "2*x*t", "2*x*u"));
    expected.push_back(make_field("x*u", "t*u", "-x^2/2 + t^2/2 + u^2/2"));
    CHECK(same_span(deg2.basis, expected));
  }
}
