#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liesym/jet.hpp"
#include "liesym/symmetry.hpp"

namespace liesym {

/// u = expr(x, t) or expr(x, t, u) = 0. Parameters (c1, eps, ...) are bound
/// numerically through `params`.
struct SolutionCandidate {
  enum class Form { Explicit, Implicit };
  Form form = Form::Explicit;
  Expr expr;
  std::map<std::string, double> params;
  /// Implicit only: explicit u(x, t) used as the Newton start.
  std::optional<Expr> guess;
  /// Implicit only: parameter walked from 0 to its value for continuation
  /// (the guess is exact at 0).
  std::optional<std::string> continuation;
  std::string label;
};

/// "implicit:<expr>" selects the implicit form; otherwise explicit.
SolutionCandidate parse_solution(const std::string& text);

/// (x, t, u) -> (x~, t~, u~) with group parameter `eps`.
struct GroupAction {
  std::string label;
  std::array<Expr, 3> image;
  Symbol eps = Symbol::parameter("eps");
};

GroupAction make_action(std::string label, const std::string& x, const std::string& t, const std::string& u);

/// Coordinate change x -> a, t -> b, u -> c (unset entries stay) where the
/// images may mention x, t, u again; goes through fresh symbols so the
/// bindings stay acyclic.
Expr change_coordinates(const Expr& e, const std::array<std::optional<Expr>, 3>& images);

/// d/d eps at 0 of the action minus (xi1, xi2, eta).
std::array<Expr, 3> infinitesimal_check(const GroupAction& g, const VectorField& v);

/// action(e1) after action(e2) minus action(e1 + e2), after the
/// addition-formula pass; all zero for a one-parameter group.
std::array<Expr, 3> group_law_defect(const GroupAction& g);

/// action at eps = 0 minus the identity.
std::array<Expr, 3> identity_defect(const GroupAction& g);

/// Pushes the graph of s forward by the action at `eps`. The inverse map
/// is the action at -eps; when it keeps x, t free of u and is affine in u
/// the result is explicit, otherwise it is the implicit relation
/// u(inverse) - f(x(inverse), t(inverse)) = 0 with continuation in eps.
SolutionCandidate transform_solution(const GroupAction& g, double eps, const SolutionCandidate& s);

struct Grid {
  double x0 = -1, x1 = 1;
  int nx = 41;
  double t0 = -1, t1 = 1;
  int nt = 41;
};

/// "x=-0.5:0.5:41,t=1.2:2:41"
Grid parse_grid(const std::string& text);

struct GridFailure {
  double x = 0, t = 0;
  std::string reason;
};

struct ResidualReport {
  double max_abs = 0.0;
  int points = 0;
  /// Rejected by the domain margin (singular sets, branch points).
  int rejected = 0;
  int newton_failures = 0;
  std::vector<GridFailure> failures;
};

struct ResidualOptions {
  double domain_margin = 0.05;
  double newton_tol = 1e-12;
  int newton_max_iter = 60;
  int continuation_steps = 8;
  std::size_t max_failures_kept = 5;
};

ResidualReport residual(const Pde& pde, const SolutionCandidate& s, const Grid& grid,
                        const ResidualOptions& opts = {});

struct NewtonResult {
  double root = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Newton on f with df, falling back to bisection once a sign change is
/// bracketed around x0.
/// Returns non-converged when no root is found within max_iter steps.
NewtonResult safeguarded_newton(const std::function<double(double)>& f,
                                const std::function<double(double)>& df, double x0, double tol,
                                int max_iter);

struct InvariantSolutionReport {
  ResidualReport pde;
  /// max |eta - xi1 u_x - xi2 u_t| along the graph.
  double invariance_max_abs = 0.0;
  int invariance_points = 0;
};

InvariantSolutionReport verify_invariant_solution(const VectorField& v, const SolutionCandidate& s,
                                                  const Pde& pde, const Grid& grid,
                                                  const ResidualOptions& opts = {});

/// u = G(x, t, v(y)), y = Y(x, t). `chart` rewrites one of x, t through y
/// (e.g. t -> x*y) so that the result separates.
struct ReductionAnsatz {
  std::string generator;
  Expr y;
  Expr g;
  Bindings chart;
};

/// Parameter symbols used for the reduced ODE: y, v, vp (v'), vpp (v'').
Symbol ode_y();
Symbol ode_v();
Symbol ode_vp();
Symbol ode_vpp();

struct Reduction {
  /// ODE in y, v, vp, vpp.
  Expr ode;
  /// Original equation after substitution = prefactor * ode.
  Expr prefactor;
  std::string chart;
};

/// Throws InvalidArgument when the prefactor vanishes identically or the
/// substituted equation does not separate into prefactor(x, t) * ode.
Reduction reduce(const Pde& pde, const ReductionAnsatz& ansatz);

/// Substitutes v = v(y) (and its derivatives) into the ODE.
Expr substitute_ode_solution(const Expr& ode, const Expr& v_of_y);

}  // namespace liesym
