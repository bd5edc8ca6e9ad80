#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liesym/fixture.hpp"
#include "liesym/jet.hpp"
#include "liesym/liealg.hpp"
#include "liesym/solutions.hpp"
#include "liesym/symmetry.hpp"

namespace liesym {

/// Fixture text compiled into the library ("borninfeld.pde", "adjoint.fix", ...).
/// Throws InvalidArgument for an unknown name.
const std::string& embedded_fixture(const std::string& name);
std::vector<std::string> embedded_fixture_names();
FixtureFile load_embedded(const std::string& name);

Pde born_infeld_pde();

struct NamedField {
  std::string label;
  std::string anchor;
  VectorField field;
};

/// v1..v7.
std::vector<NamedField> born_infeld_generators();
std::vector<VectorField> fields_of(const std::vector<NamedField>& named);
/// Structure constants of v1..v7 computed from the fields.
LieAlgebra born_infeld_algebra();

/// 7x7 table of elements read from a commutator-table section ("printed",
/// "corrected") or a 3x3 quotient table.
std::vector<std::vector<Element>> fixture_table(const FixtureSection& section,
                                                const std::vector<std::string>& labels);
/// Element from "v3", "-v1", "0" or a linear combination.
Element parse_element(const std::string& text, const std::vector<std::string>& labels);

/// Computed bracket table, entry [i][j] = [e_i, e_j].
std::vector<std::vector<Element>> bracket_table(const LieAlgebra& g);

struct AdjointFixture {
  std::string label;
  std::string anchor;
  std::size_t generator = 0;
  /// rows[j][k]: coefficient of v_k in the image of v_j, as an expression in eps.
  std::vector<std::vector<Expr>> rows;
  /// 0-based (row, col) entries flagged as suspected typos.
  std::set<std::pair<std::size_t, std::size_t>> flags;
};

std::vector<AdjointFixture> adjoint_fixtures();

struct OptimalFixture {
  std::string label;
  std::string anchor;
  std::string element;
  std::vector<std::pair<std::string, std::vector<Rational>>> grid;
};

std::vector<OptimalFixture> optimal_fixtures();
/// Every grid point of the fixture, labelled like "X4[a=-1,b=1/2,c=2]".
std::vector<std::pair<std::string, Element>> expand_optimal(const OptimalFixture& f,
                                                            const std::vector<std::string>& labels);

struct ActionFixture {
  std::string anchor;
  std::size_t generator = 0;
  GroupAction action;
};

std::vector<ActionFixture> action_fixtures();

struct PrintedImage {
  std::string label;
  std::string anchor;
  std::string action;
  /// Template in F = f(fx, ft).
  std::string printed;
  std::optional<std::string> corrected;
  std::string fx;
  std::string ft;
};

std::vector<PrintedImage> printed_images();
/// Instantiates an image template on u = f(x, t); implicit when it contains u.
SolutionCandidate instantiate_image(const PrintedImage& img, const std::string& form,
                                    const SolutionCandidate& f);

struct SolutionFixture {
  std::string label;
  std::string anchor;
  std::string generator;
  std::string text;
  SolutionCandidate candidate;
  Grid grid;
  /// Reading of a printed candidate checked alongside it.
  std::optional<std::string> corrected;
  /// Seed solutions for the transport checks; the rest are printed candidates.
  bool baseline = false;
};

std::vector<SolutionFixture> solution_fixtures();

/// "c1 = 0.4, c2 = 1.3".
std::map<std::string, double> parse_params(const std::string& text);

struct ReductionFixture {
  std::string anchor;
  ReductionAnsatz ansatz;
  std::string chart_text;
  std::optional<std::string> check;
};

std::vector<ReductionFixture> reduction_fixtures();

}  // namespace liesym
