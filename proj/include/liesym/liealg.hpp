#pragma once

#include <string>
#include <vector>

#include "liesym/linalg.hpp"
#include "liesym/symmetry.hpp"

namespace liesym {

using Element = std::vector<Rational>;

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c(i, j, k) e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Validates antisymmetry and the Jacobi identity; throws InvalidArgument.
  LieAlgebra(std::vector<std::string> labels, std::vector<Rational> constants);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim() + j) * dim() + k];
  }
  const std::vector<Rational>& constants() const { return c_; }

  Element basis(std::size_t i) const;
  Element bracket(const Element& x, const Element& y) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> c_;
};

/// Coefficient-wise Lie bracket of vector fields: [v,w]^a = v(w^a) - w(v^a).
VectorField bracket(const VectorField& v, const VectorField& w);

/// Throws NotClosed naming the first bracket outside the span.
LieAlgebra structure_constants(const std::vector<VectorField>& basis,
                               const std::vector<std::string>& labels);

/// "v1 - 2*v3", "0".
std::string element_to_string(const LieAlgebra& g, const Element& x);

/// Subspace of the algebra, rows in RREF.
struct Subspace {
  RationalMatrix basis;

  std::size_t dim() const { return basis.rows(); }
  bool contains(const Element& x) const;
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis == b.basis; }
};

Subspace span(std::size_t n, const std::vector<Element>& vectors);
/// Span of the listed basis elements (0-based indices).
Subspace coordinate_span(std::size_t n, const std::vector<std::size_t>& indices);
Subspace whole(const LieAlgebra& g);
Subspace sum(const Subspace& a, const Subspace& b);
std::vector<std::string> describe(const LieAlgebra& g, const Subspace& s);

/// [a, b] as a subspace.
Subspace commutator(const LieAlgebra& g, const Subspace& a, const Subspace& b);
bool is_subalgebra(const LieAlgebra& g, const Subspace& s);
bool is_ideal(const LieAlgebra& g, const Subspace& s);

/// Column j holds the coordinates of [x, e_j].
RationalMatrix ad_matrix(const LieAlgebra& g, const Element& x);

RationalMatrix killing_form(const LieAlgebra& g);
Rational killing(const LieAlgebra& g, const Element& x, const Element& y);
/// Killing form of g restricted to s, in the RREF basis of s.
RationalMatrix restricted_killing_form(const LieAlgebra& g, const Subspace& s);

/// s, [s,s], [[s,s],[s,s]], ... until the chain stabilizes.
std::vector<Subspace> derived_series(const LieAlgebra& g, const Subspace& s);
std::vector<Subspace> derived_series(const LieAlgebra& g);
/// g, [g,g], [g,[g,g]], ...
std::vector<Subspace> lower_central_series(const LieAlgebra& g);
/// Span{e_i, [e_i, e_j]}: the generators are included alongside the brackets.
Subspace generator_bracket_span(const LieAlgebra& g);

bool is_solvable(const LieAlgebra& g, const Subspace& s);
bool is_solvable(const LieAlgebra& g);

/// Killing-orthogonal complement of [g,g]; self-checked to be a solvable ideal.
Subspace radical(const LieAlgebra& g);
bool is_semisimple(const LieAlgebra& g);

/// First coordinate subalgebra S with S + r = g and S ∩ r = 0; throws
/// NoComplement when no coordinate subset works.
Subspace levi_complement(const LieAlgebra& g, const Subspace& r);

/// Quotient by an ideal on coset representatives of the non-pivot basis
/// elements, labelled w1, w2, ...; throws NotIdeal.
LieAlgebra quotient(const LieAlgebra& g, const Subspace& ideal);
/// Basis indices used as coset representatives by quotient().
std::vector<std::size_t> quotient_representatives(const LieAlgebra& g, const Subspace& ideal);

/// Elements of `within` commuting with every element of s.
Subspace centralizer(const LieAlgebra& g, const Subspace& s, const Subspace& within);
Subspace centralizer(const LieAlgebra& g, const Subspace& s);

/// s as an algebra in its own right, on the RREF rows of s; throws NotClosed.
LieAlgebra subalgebra(const LieAlgebra& g, const Subspace& s, std::vector<std::string> labels);

/// Smallest ideal containing s.
Subspace minimal_ideal_containing(const LieAlgebra& g, const Subspace& s);

}  // namespace liesym
