#pragma once

// Internal polynomial / rational-function representation behind normalize().

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym::detail {

/// Sorted (atom, exponent) list; exponents are positive.
using Mono = std::vector<std::pair<Expr, int>>;

/// Graded order: total degree first, then exponents compared atom by atom in
/// ascending atom order (a larger exponent on an earlier atom wins).
int mono_compare(const Mono& a, const Mono& b);

struct MonoGreater {
  bool operator()(const Mono& a, const Mono& b) const { return mono_compare(a, b) > 0; }
};

using Poly = std::map<Mono, Rational, MonoGreater>;

int poly_compare(const Poly& a, const Poly& b);

struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return poly_compare(a, b) < 0; }
};

/// num / prod(factor^mult). Factors are primitive with positive leading
/// coefficient; single-atom factors hold plain atoms (never roots).
struct RatFunc {
  Poly num;
  std::map<Poly, int, PolyLess> den;

  bool is_zero() const { return num.empty(); }
};

RatFunc from_expr(const Expr& e);
Expr to_expr(const RatFunc& rf);
Expr poly_to_expr(const Poly& p);

/// Full normalization pipeline (conversion, trig post-pass, cancellation).
RatFunc normal_rf(const Expr& e);

bool is_root_atom(const Expr& atom);

}  // namespace liesym::detail
