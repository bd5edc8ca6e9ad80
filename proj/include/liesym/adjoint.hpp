#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liesym/liealg.hpp"

namespace liesym {

using RealVector = std::vector<double>;
/// Row-major dense real matrix.
using RealMatrix = std::vector<std::vector<double>>;

bool is_nilpotent(const RationalMatrix& m);

/// exp(-eps ad(e_i)) y. Finite series when ad(e_i) is nilpotent, otherwise
/// Taylor scaling-and-squaring.
RealVector adjoint_apply(const LieAlgebra& g, std::size_t i, double eps, const RealVector& y);

struct AdjointMatrix {
  std::size_t generator = 0;
  double epsilon = 0.0;
  /// Nilpotent ad(e_i): entries are exact polynomials in epsilon.
  bool exact = false;
  /// Row j holds the coordinates of Ad(exp(eps e_i)) e_j.
  RealMatrix values;
};

AdjointMatrix adjoint_matrix(const LieAlgebra& g, std::size_t i, double eps);

/// For nilpotent ad(e_i): matrix entries as polynomials in the parameter
/// `eps` (row convention as above). Throws InvalidArgument otherwise.
std::vector<std::vector<Expr>> adjoint_matrix_symbolic(const LieAlgebra& g, std::size_t i,
                                                       const Symbol& eps);

struct ExactOrbitInvariants {
  Rational killing;
  std::size_t ad_rank = 0;
  /// det(lambda - ad X), highest degree first.
  std::vector<Rational> charpoly;
};

struct OrbitInvariants {
  double killing = 0.0;
  std::size_t ad_rank = 0;
  std::vector<double> charpoly;
};

ExactOrbitInvariants orbit_invariants(const LieAlgebra& g, const Element& x);
/// Numeric version; the rank uses a relative singular-value cutoff of 1e-9.
OrbitInvariants orbit_invariants(const LieAlgebra& g, const RealVector& x);

/// Largest absolute difference between the two records (rank mismatch is
/// reported as infinity).
double invariant_drift(const ExactOrbitInvariants& a, const OrbitInvariants& b);

using Schedule = std::vector<std::pair<std::size_t, double>>;

/// Applies the schedule left to right.
RealVector simplify_by_adjoint(const LieAlgebra& g, const RealVector& x, const Schedule& schedule);

struct GreedyResult {
  Schedule schedule;
  RealVector result;
  std::size_t nonzeros = 0;
};

/// Heuristic: repeatedly picks the (generator, eps) from the grid that most
/// reduces the number of coordinates above `zero_tol`, ties broken by the
/// l1 norm; stops when no step improves.
GreedyResult greedy_simplify(const LieAlgebra& g, const RealVector& x, const std::vector<double>& eps_grid,
                             std::size_t max_steps = 8, double zero_tol = 1e-9);

struct VetRecord {
  std::string label;
  Element element;
  ExactOrbitInvariants invariants;
  double max_drift = 0.0;
  std::size_t compositions = 0;
};

/// For every element, applies `compositions` random words of adjoint maps
/// (random generator, eps uniform in [-eps_max, eps_max]) and records the
/// largest invariant drift. Deterministic for a given seed.
std::vector<VetRecord> vet_optimal_system(const LieAlgebra& g,
                                          const std::vector<std::pair<std::string, Element>>& elements,
                                          std::uint64_t seed, std::size_t compositions = 50,
                                          double eps_max = 0.3, std::size_t word_length = 4);

RealVector to_real(const Element& x);

}  // namespace liesym
