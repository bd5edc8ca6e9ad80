#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Scalar PDE lhs = 0 in independents (x, t) and dependent u, with the
/// principal derivative solved for on the solution manifold.
struct Pde {
  Expr lhs;
  Symbol principal;
  /// principal = solved on solutions.
  Expr solved;
  /// Certified nonvanishing factor cleared from restricted expressions.
  Expr denominator{1L};
  /// "constant" or "one-plus-squares".
  std::string certificate;
  /// Power of `denominator` needed to make `solved` polynomial.
  int clearing_power = 0;
  int order = 2;
};

Symbol x_symbol();
Symbol t_symbol();
Symbol u_symbol();

/// Highest jet order occurring in e (0 if only x, t, u or none).
int jet_order(const Expr& e);

/// Builds a Pde from its left side and solves for `principal`. Without one,
/// the top-order jets are tried pure-t first (u_tt, u_xt, u_xx) and the
/// first certifiable choice is kept.
Pde make_pde(const Expr& lhs, std::optional<Symbol> principal = std::nullopt);

/// Re-solves for pde.principal. Throws NotCertifiable when the principal
/// enters nonlinearly or its coefficient cannot be shown nonvanishing.
Pde solve_principal(const Pde& pde);

/// D_v e with v in {x, t}; unknown functions of (x, t, u) are chained
/// through u.
Expr total_derivative(const Expr& e, const Symbol& v);

/// Applies total derivatives along each entry of `vars` in order.
Expr total_derivative(const Expr& e, const std::vector<std::string>& vars);

struct Restricted {
  Expr value;
  int clearing_power = 0;
};

/// Eliminates the principal derivative and its total derivatives via the
/// solved form, then multiplies by the minimal power of the PDE denominator
/// that removes it from the result's denominator.
Restricted restrict_to_solutions(const Expr& e, const Pde& pde);

/// All jet symbols of order 1..max_order in (x, t), canonical order.
std::vector<Symbol> jet_symbols(int max_order);

/// True when jet index contains the principal's index as a sub-multiset.
bool is_principal_derivative(const Symbol& jet, const Symbol& principal);

std::string pde_to_json(const Pde& pde);
Pde pde_from_json(const std::string& text);

/// Reads either the JSON form or a key/value file with `lhs = "..."` and an
/// optional `principal = "..."`.
Pde load_pde(const std::string& path);
Pde pde_from_text(const std::string& text);

}  // namespace liesym
