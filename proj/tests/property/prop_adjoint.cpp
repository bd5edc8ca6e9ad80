#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "liesym/adjoint.hpp"
#include "liesym/borninfeld.hpp"

using namespace liesym;
using testgen::Gen;

namespace {

const LieAlgebra& bi() {
  static const LieAlgebra g = born_infeld_algebra();
  return g;
}

RealVector bracket_real(const RealVector& x, const RealVector& y) {
  const std::size_t n = bi().dim();
  RealVector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (x[i] == 0.0 || y[j] == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] += x[i] * y[j] * bi().c(i, j, k).get_d();
    }
  return out;
}

double killing_real(const RealVector& x, const RealVector& y) {
  static const RationalMatrix k = killing_form(bi());
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * k(i, j).get_d() * y[j];
  return s;
}

RealVector random_vector(Gen& g) {
  RealVector v(7);
  for (auto& c : v) c = g.real(-1, 1);
  return v;
}

double max_diff(const RealVector& a, const RealVector& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_SUITE("adjoint") {
  TEST_CASE("group law, numeric") {
    Gen g(41);
    for (int n = 0; n < 100; ++n) {
      const auto i = static_cast<std::size_t>(g.integer(0, 6));
      const double e1 = g.real(-1.5, 1.5);
      const double e2 = g.real(-1.5, 1.5);
      const RealVector y = random_vector(g);
      const RealVector two = adjoint_apply(bi(), i, e1, adjoint_apply(bi(), i, e2, y));
      CHECK(max_diff(two, adjoint_apply(bi(), i, e1 + e2, y)) <= 1e-9);
    }
  }

  TEST_CASE("group law, exact for nilpotent generators") {
    const Symbol a = Symbol::parameter("a");
    const Symbol b = Symbol::parameter("b");
    for (std::size_t i = 0; i < 3; ++i) {
      const auto ma = adjoint_matrix_symbolic(bi(), i, a);
      const auto mb = adjoint_matrix_symbolic(bi(), i, b);
      const auto mab = adjoint_matrix_symbolic(bi(), i, a);
      for (std::size_t r = 0; r < 7; ++r)
        for (std::size_t c = 0; c < 7; ++c) {
          Expr prod;
          for (std::size_t k = 0; k < 7; ++k) prod = prod + ma[r][k] * mb[k][c];
          const Expr sum = substitute(mab[r][c], {{a, Expr(a) + Expr(b)}});
          CHECK((prod - sum).is_zero());
        }
    }
  }

  TEST_CASE("adjoint maps are automorphisms") {
    Gen g(42);
    for (int n = 0; n < 100; ++n) {
      const auto i = static_cast<std::size_t>(g.integer(0, 6));
      const double eps = g.real(-1.2, 1.2);
      const RealVector x = random_vector(g);
      const RealVector y = random_vector(g);
      const RealVector lhs = adjoint_apply(bi(), i, eps, bracket_real(x, y));
      const RealVector rhs = bracket_real(adjoint_apply(bi(), i, eps, x), adjoint_apply(bi(), i, eps, y));
      CHECK(max_diff(lhs, rhs) <= 1e-8);
    }
  }

  TEST_CASE("Killing form is Ad-invariant") {
    Gen g(43);
    for (int n = 0; n < 100; ++n) {
      const auto i = static_cast<std::size_t>(g.integer(0, 6));
      const double eps = g.real(-1.2, 1.2);
      const RealVector x = random_vector(g);
      const RealVector y = random_vector(g);
      const double moved = killing_real(adjoint_apply(bi(), i, eps, x), adjoint_apply(bi(), i, eps, y));
      CHECK(std::abs(moved - killing_real(x, y)) <= 1e-8);
    }
  }

  TEST_CASE("Killing invariance is exact for nilpotent generators") {
    Gen g(44);
    const Symbol eps = Symbol::parameter("eps");
    const RationalMatrix k = killing_form(bi());
    for (std::size_t i = 0; i < 3; ++i) {
      const auto m = adjoint_matrix_symbolic(bi(), i, eps);
      for (int n = 0; n < 10; ++n) {
        const Element x = g.element(7);
        const Element y = g.element(7);
        std::vector<Expr> ax(7), ay(7);
        for (std::size_t c = 0; c < 7; ++c)
          for (std::size_t r = 0; r < 7; ++r) {
            ax[c] = ax[c] + Expr(x[r]) * m[r][c];
            ay[c] = ay[c] + Expr(y[r]) * m[r][c];
          }
        Expr kappa;
        for (std::size_t r = 0; r < 7; ++r)
          for (std::size_t c = 0; c < 7; ++c) kappa = kappa + ax[r] * Expr(k(r, c)) * ay[c];
        CHECK((kappa - Expr(killing(bi(), x, y))).is_zero());
      }
    }
  }

  TEST_CASE("derivative at the identity is minus the bracket") {
    Gen g(45);
    for (int n = 0; n < 50; ++n) {
      const auto i = static_cast<std::size_t>(g.integer(0, 6));
      const RealVector y = random_vector(g);
      auto central = [&](double h) {
        const RealVector p = adjoint_apply(bi(), i, h, y);
        const RealVector m = adjoint_apply(bi(), i, -h, y);
        RealVector d(7);
        for (std::size_t k = 0; k < 7; ++k) d[k] = (p[k] - m[k]) / (2 * h);
        return d;
      };
      const RealVector d1 = central(1e-2);
      const RealVector d2 = central(5e-3);
      RealVector rich(7);
      for (std::size_t k = 0; k < 7; ++k) rich[k] = (4 * d2[k] - d1[k]) / 3;
      RealVector expected = bracket_real(to_real(bi().basis(i)), y);
      for (auto& c : expected) c = -c;
      CHECK(max_diff(rich, expected) <= 1e-6);
    }
  }

  TEST_CASE("orbit invariants are constant along random adjoint words") {
    Gen g(46);
    for (int n = 0; n < 30; ++n) {
      const Element x = g.element(7);
      const auto exact = orbit_invariants(bi(), x);
      Schedule word;
      for (int k = 0; k < 4; ++k) word.emplace_back(static_cast<std::size_t>(g.integer(0, 6)), g.real(-0.3, 0.3));
      const RealVector moved = simplify_by_adjoint(bi(), to_real(x), word);
      CHECK(invariant_drift(exact, orbit_invariants(bi(), moved)) <= 1e-7);
    }
  }
}
