#include <cmath>

#include "doctest.h"
#include "liesym/adjoint.hpp"
#include "liesym/borninfeld.hpp"
#include "liesym/parser.hpp"

using namespace liesym;

namespace {

const LieAlgebra& bi() {
  static const LieAlgebra g = born_infeld_algebra();
  return g;
}

void check_close(const RealVector& a, const RealVector& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= tol);
}

}  // namespace

TEST_SUITE("adjoint") {
  TEST_CASE("ad matrices") {
    RationalMatrix d(7, 7);
    for (std::size_t k = 0; k < 3; ++k) d(k, k) = -1;
    CHECK(ad_matrix(bi(), bi().basis(6)) == d);
    CHECK(ad_matrix(bi(), Element(7, 0)).is_zero());
    const RationalMatrix a1 = ad_matrix(bi(), bi().basis(0));
    CHECK_FALSE(a1.is_zero());
    CHECK((a1 * a1).is_zero());
    CHECK(is_nilpotent(a1));
    CHECK_FALSE(is_nilpotent(d));
  }

  TEST_CASE("adjoint_apply") {
    RealVector v1(7, 0.0);
    v1[0] = 1.0;
    const double eps = 0.37;
    RealVector expected(7, 0.0);
    expected[0] = std::exp(eps);
    check_close(adjoint_apply(bi(), 6, eps, v1), expected, 1e-12);
    expected.assign(7, 0.0);
    expected[0] = std::cosh(eps);
    expected[1] = std::sinh(eps);
    check_close(adjoint_apply(bi(), 3, eps, v1), expected, 1e-12);
    const RealVector y{0.3, -1, 2, 0.5, 0, 1, -2};
    for (std::size_t i = 0; i < 7; ++i) check_close(adjoint_apply(bi(), i, 0.0, y), y, 0.0);
  }

  TEST_CASE("adjoint matrices of the nilpotent generators") {
    const AdjointMatrix m1 = adjoint_matrix(bi(), 0, 0.5);
    CHECK(m1.exact);
    CHECK(m1.values[3][3] == 1.0);
    CHECK(m1.values[3][1] == -0.5);
    CHECK(m1.values[4][2] == -0.5);
    CHECK(m1.values[6][0] == -0.5);
    const auto sym = adjoint_matrix_symbolic(bi(), 2, Symbol::parameter("eps"));
    CHECK(sym[4][0].identical(parse("eps")));
    CHECK(sym[4][4].is_one());
    CHECK_THROWS_AS(adjoint_matrix_symbolic(bi(), 3, Symbol::parameter("eps")), Error);
  }

  TEST_CASE("hyperbolic blocks of Ad(exp(eps v6))") {
    const double eps = 0.8;
    const AdjointMatrix m6 = adjoint_matrix(bi(), 5, eps);
    CHECK_FALSE(m6.exact);
    CHECK(m6.values[1][1] == doctest::Approx(std::cosh(eps)).epsilon(1e-12));
    CHECK(m6.values[1][2] == doctest::Approx(std::sinh(eps)).epsilon(1e-12));
    CHECK(m6.values[3][4] == doctest::Approx(std::sinh(eps)).epsilon(1e-12));
    CHECK(m6.values[4][4] == doctest::Approx(std::cosh(eps)).epsilon(1e-12));
  }

  TEST_CASE("orbit invariants") {
    CHECK(orbit_invariants(bi(), bi().basis(0)).killing == 0);
    const auto v7 = orbit_invariants(bi(), bi().basis(6));
    CHECK(v7.killing == 3);
    CHECK(v7.ad_rank == 3);
    CHECK(v7.charpoly.size() == 8);
    const auto numeric = orbit_invariants(bi(), to_real(bi().basis(6)));
    CHECK(invariant_drift(v7, numeric) <= 1e-12);
  }

  TEST_CASE("invariants survive an adjoint word") {
    const Element x5 = parse_element("v1 + 1/2*v2 + v3 - v6", bi().labels());
    const auto before = orbit_invariants(bi(), x5);
    const RealVector moved = simplify_by_adjoint(bi(), to_real(x5), {{0, 0.3}, {5, -0.7}, {3, 1.1}, {6, 0.2}});
    CHECK(invariant_drift(before, orbit_invariants(bi(), moved)) <= 1e-9);
  }

  TEST_CASE("simplify_by_adjoint") {
    const RealVector x{0, 0.25, 0, 1, 0, 0, 0};
    check_close(simplify_by_adjoint(bi(), x, {}), x, 0.0);
    // [v1, v4] = v2, so Ad(exp(d v1)) v4 = v4 - d v2 absorbs the v2 part.
    check_close(simplify_by_adjoint(bi(), x, {{0, 0.25}}), RealVector{0, 0, 0, 1, 0, 0, 0}, 1e-15);
    const GreedyResult g = greedy_simplify(bi(), x, {-0.5, -0.25, 0.25, 0.5});
    CHECK(g.nonzeros == 1);
    const RealVector x4{0, 2, -1.5, 0, 0, 0, 0.5};
    const RealVector y = simplify_by_adjoint(bi(), x4, {{0, 0.4}, {0, -1.3}});
    for (std::size_t k = 3; k < 6; ++k) CHECK(y[k] == 0.0);
  }

  TEST_CASE("vetting is deterministic") {
    const std::vector<std::pair<std::string, Element>> xs{{"a", bi().basis(3)},
                                                           {"b", parse_element("v1 + v5", bi().labels())}};
    const auto r1 = vet_optimal_system(bi(), xs, 42);
    const auto r2 = vet_optimal_system(bi(), xs, 42);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].max_drift == r2[0].max_drift);
    CHECK(r1[1].max_drift == r2[1].max_drift);
    CHECK(r1[0].compositions == 50);
    CHECK(r1[0].max_drift <= 1e-7);
  }
}
