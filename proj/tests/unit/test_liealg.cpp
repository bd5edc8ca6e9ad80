#include "doctest.h"
#include "liesym/borninfeld.hpp"
#include "liesym/liealg.hpp"
#include "liesym/parser.hpp"

using namespace liesym;

namespace {

const LieAlgebra& bi() {
  static const LieAlgebra g = born_infeld_algebra();
  return g;
}

Element e(std::size_t i) { return bi().basis(i - 1); }

Subspace coords(std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> idx;
  for (auto i : one_based) idx.push_back(i - 1);
  return coordinate_span(7, idx);
}

LieAlgebra sub(std::initializer_list<std::size_t> one_based) {
  std::vector<VectorField> fields;
  std::vector<std::string> labels;
  const auto gens = born_infeld_generators();
  for (auto i : one_based) {
    fields.push_back(gens[i - 1].field);
    labels.push_back(gens[i - 1].label);
  }
  return structure_constants(fields, labels);
}

RationalMatrix diag(std::vector<long> d) {
  RationalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_SUITE("liealg") {
  TEST_CASE("brackets of fields") {
    CHECK(bi().bracket(e(4), e(5)) == e(6));
    CHECK(bi().bracket(e(1), e(1)) == Element(7, 0));
    CHECK(bi().bracket(e(1), e(4)) == e(2));
    const auto gens = born_infeld_generators();
    CHECK(equivalent(bracket(gens[0].field, gens[3].field), gens[1].field));
  }

  TEST_CASE("structure constants of subsets") {
    const LieAlgebra g1 = sub({4, 5, 6});
    CHECK(g1.bracket(g1.basis(0), g1.basis(1)) == g1.basis(2));
    CHECK(g1.bracket(g1.basis(0), g1.basis(2)) == g1.basis(1));
    CHECK(g1.bracket(g1.basis(1), g1.basis(2)) == g1.basis(0));
    const LieAlgebra ab = sub({1, 2, 3});
    for (const auto& c : ab.constants()) CHECK(c == 0);
    try {
      sub({1, 4});
      FAIL("expected NotClosed");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NotClosed);
    }
  }

  TEST_CASE("constructor validates antisymmetry and Jacobi") {
    std::vector<Rational> c(8, 0);
    c[(0 * 2 + 1) * 2 + 0] = 1;  // [e1,e2] = e1 without [e2,e1] = -e1
    CHECK_THROWS_AS(LieAlgebra({"a", "b"}, c), Error);
    c[(1 * 2 + 0) * 2 + 0] = -1;
    CHECK_NOTHROW(LieAlgebra({"a", "b"}, c));
  }

  TEST_CASE("element printing") {
    CHECK(element_to_string(bi(), Element{1, 0, -2, 0, 0, 0, 0}) == "v1 - 2*v3");
    CHECK(element_to_string(bi(), Element(7, 0)) == "0");
  }

  TEST_CASE("Killing forms") {
    CHECK(killing_form(sub({1, 2, 3})).is_zero());
    CHECK(killing_form(sub({4, 5, 6})) == diag({2, -2, 2}));
    const RationalMatrix k = killing_form(bi());
    CHECK(rank(k) == 4);
    CHECK(killing(bi(), e(7), e(7)) == 3);
    CHECK(killing(bi(), e(1), e(1)) == 0);
  }

  TEST_CASE("derived series") {
    const auto r = derived_series(bi(), coords({1, 2, 3, 7}));
    REQUIRE(r.size() == 3);
    CHECK(r[1] == coords({1, 2, 3}));
    CHECK(r[2].dim() == 0);
    CHECK(is_solvable(bi(), coords({1, 2, 3, 7})));
    const auto s = derived_series(bi(), coords({4, 5, 6}));
    CHECK(s.back() == coords({4, 5, 6}));
    CHECK_FALSE(is_solvable(bi(), coords({4, 5, 6})));
    const LieAlgebra ab = sub({1, 2, 3});
    CHECK(derived_series(ab).back().dim() == 0);
    CHECK(derived_series(bi()).back() == coords({1, 2, 3, 4, 5, 6}));
    CHECK(generator_bracket_span(bi()) == whole(bi()));
  }

  TEST_CASE("radical and Levi complement") {
    const Subspace r = radical(bi());
    CHECK(r == coords({1, 2, 3, 7}));
    CHECK(radical(sub({4, 5, 6})).dim() == 0);
    CHECK(is_semisimple(sub({4, 5, 6})));
    const LieAlgebra ab = sub({1, 2, 3});
    CHECK(radical(ab) == whole(ab));
    CHECK(levi_complement(bi(), r) == coords({4, 5, 6}));
    const LieAlgebra ss = sub({4, 5, 6});
    CHECK(levi_complement(ss, radical(ss)) == whole(ss));
    CHECK(levi_complement(ab, radical(ab)).dim() == 0);
  }

  TEST_CASE("quotients") {
    const LieAlgebra q = quotient(bi(), radical(bi()));
    REQUIRE(q.dim() == 3);
    CHECK(q.labels() == std::vector<std::string>{"w1", "w2", "w3"});
    CHECK(q.bracket(q.basis(0), q.basis(1)) == q.basis(2));
    CHECK(q.bracket(q.basis(0), q.basis(2)) == q.basis(1));
    CHECK(q.bracket(q.basis(1), q.basis(2)) == q.basis(0));
    CHECK(quotient(bi(), whole(bi())).dim() == 0);
    CHECK(quotient(bi(), coords({1, 2, 3})).dim() == 4);
    try {
      quotient(bi(), coords({4}));
      FAIL("expected NotIdeal");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NotIdeal);
    }
  }

  TEST_CASE("centralizers") {
    CHECK(centralizer(bi(), coords({4, 5, 6})) == coords({7}));
    CHECK(centralizer(bi(), radical(bi())).dim() == 0);
    CHECK(centralizer(bi(), radical(bi()), radical(bi())).dim() == 0);
    CHECK(centralizer(bi(), span(7, {})) == whole(bi()));
    CHECK(centralizer(bi(), coords({1, 2}), radical(bi())) == coords({1, 2, 3}));
  }

  TEST_CASE("minimal ideals") {
    CHECK(minimal_ideal_containing(bi(), coords({4, 5, 6})) == coords({1, 2, 3, 4, 5, 6}));
    CHECK(minimal_ideal_containing(bi(), whole(bi())) == whole(bi()));
    CHECK(minimal_ideal_containing(bi(), coords({3})) == coords({1, 2, 3}));
  }

  TEST_CASE("subspace helpers") {
    const Subspace s = span(7, {Element{1, 1, 0, 0, 0, 0, 0}, Element{2, 2, 0, 0, 0, 0, 0}});
    CHECK(s.dim() == 1);
    CHECK(s.contains(Element{-3, -3, 0, 0, 0, 0, 0}));
    CHECK_FALSE(s.contains(e(1)));
    CHECK(sum(coords({1}), coords({2})) == coords({1, 2}));
    CHECK(is_subalgebra(bi(), coords({4, 5, 6})));
    CHECK_FALSE(is_ideal(bi(), coords({4, 5, 6})));
    CHECK(is_ideal(bi(), radical(bi())));
    CHECK(describe(bi(), coords({2, 7})) == std::vector<std::string>{"v2", "v7"});
  }
}
