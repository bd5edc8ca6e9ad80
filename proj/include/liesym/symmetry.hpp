#pragma once

#include <map>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"
#include "liesym/linalg.hpp"

namespace liesym {

/// xi1 d/dx + xi2 d/dt + eta d/du with coefficients in (x, t, u).
struct VectorField {
  Expr xi1;
  Expr xi2;
  Expr eta;

  const Expr& component(int i) const { return i == 0 ? xi1 : (i == 1 ? xi2 : eta); }
  Expr& component(int i) { return i == 0 ? xi1 : (i == 1 ? xi2 : eta); }
  bool is_zero() const { return xi1.is_zero() && xi2.is_zero() && eta.is_zero(); }
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& s, const VectorField& a);
bool equivalent(const VectorField& a, const VectorField& b);
std::string to_string(const VectorField& v);

/// Parses components given as strings.
VectorField make_field(const std::string& xi1, const std::string& xi2, const std::string& eta);

/// The field with unknown-function coefficients xi1(x,t,u), xi2(x,t,u), eta(x,t,u).
VectorField unknown_field();

/// Q = eta - xi1 u_x - xi2 u_t.
Expr characteristic(const VectorField& v);

struct ProlongedField {
  VectorField base;
  int order = 0;
  /// phi^J keyed by jet symbol, for all jets up to `order`.
  std::map<Symbol, Expr> coeffs;
};

/// phi^J = D_J Q + xi1 u_{J,x} + xi2 u_{J,t} for every jet J up to `order`.
ProlongedField prolong(const VectorField& v, int order);

/// Recursive form phi^{J,i} = D_i phi^J - u_{J,x} D_i xi1 - u_{J,t} D_i xi2,
/// independent of the characteristic; used to cross-check prolong().
ProlongedField prolong_recursive(const VectorField& v, int order);

/// pr v (lhs), not yet restricted to solutions.
Expr apply_prolonged(const ProlongedField& pr, const Pde& pde);

struct DeterminingEquation {
  Expr equation;
  /// Jet monomial whose coefficient produced this equation, e.g. "u_x^2*u_xt".
  std::string source;
};

struct DeterminingSystem {
  /// xi1, xi2, eta as unknown-function symbols.
  std::vector<Symbol> unknowns;
  std::vector<DeterminingEquation> raw;
  /// RREF-reduced equations, one per independent row.
  std::vector<Expr> reduced;
  int clearing_power = 0;
};

DeterminingSystem determining_system(const Pde& pde);

/// Wraps externally supplied equations (e.g. a printed list) so that they can
/// be solved with the same ansatz machinery.
DeterminingSystem system_from_equations(const std::vector<Expr>& equations);

/// Coordinates of a polynomial ansatz of total degree <= degree in (x, t, u):
/// all monomials in ascending graded order, for xi1, then xi2, then eta.
std::vector<Monomial> ansatz_monomials(int degree);

struct AnsatzSolveResult {
  int degree = 0;
  int dimension = 0;
  std::vector<VectorField> basis;
  /// Rows are the basis coordinate vectors (RREF).
  RationalMatrix raw_nullspace;
};

AnsatzSolveResult solve_ansatz(const DeterminingSystem& ds, int degree);

/// Coordinate vector of a polynomial field with rational coefficients;
/// throws InvalidArgument if it is not representable at this degree.
std::vector<Rational> field_coordinates(const VectorField& v, int degree);
VectorField field_from_coordinates(const std::vector<Rational>& coords, int degree);

/// Exact span equality of two lists of polynomial fields.
bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b);

struct SymmetryCheck {
  bool exact_zero = false;
  Expr residual;
};

SymmetryCheck verify_symmetry(const VectorField& v, const Pde& pde);

/// Substitutes v into each equation; returns the nonzero residuals.
std::vector<Expr> equation_residuals(const VectorField& v, const std::vector<Expr>& equations);

}  // namespace liesym
