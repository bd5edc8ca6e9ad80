#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "liesym/jet.hpp"
#include "liesym/liealg.hpp"
#include "liesym/solutions.hpp"

namespace liesym {

using Json = nlohmann::ordered_json;

enum class Emit { Determining, Basis, All };

/// Throws InvalidArgument for anything but "determining", "basis", "all".
Emit parse_emit(const std::string& text);

/// {pde, principal, clearing_power, ansatz_degree, dimension, determining?, basis?}
Json symmetries_json(const Pde& pde, int degree, Emit emit);

/// {labels, table, antisymmetric, jacobi, fixture?}; the fixture comparison is
/// attached when g has the labels v1..v7.
Json bracket_table_json(const LieAlgebra& g);

/// {labels, c, killing, radical_basis, levi_basis, quotient, derived_series,
///  lower_central_series, generator_bracket_span, centralizers, minimal_ideals,
///  levi_killing, solvable, semisimple}
Json algebra_structure_json(const LieAlgebra& g);

/// `generator` is 0-based; the matrix rows are the images of the basis.
Json adjoint_json(const LieAlgebra& g, std::size_t generator, double eps);

/// Optimal-system fixture elements with exact orbit invariants; with `vet`,
/// adds the maximum invariant drift over random adjoint compositions.
Json optimal_system_json(const LieAlgebra& g, bool vet, std::uint64_t seed);

Json verify_solution_json(const Pde& pde, const SolutionCandidate& s, const Grid& grid, double tol);

/// Uses the reduction fixture for `generator` (e.g. "v7").
Json reduce_json(const Pde& pde, const std::string& generator);

struct Claim {
  std::string claim_id;
  std::string paper_anchor;
  /// match | match-after-typo-correction | mismatch | out-of-scope
  std::string status;
  Json details;
};

/// Runs every fixture check on the Born-Infeld data. `seed` drives the
/// adjoint compositions of the optimal-system vetting.
std::vector<Claim> reproduce_paper(std::uint64_t seed);

/// List of {claim_id, paper_anchor, status, details}.
Json report_json(const std::vector<Claim>& claims);

}  // namespace liesym
