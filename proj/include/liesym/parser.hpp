#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Declares which identifiers denote unknown functions and their argument
/// lists. `xi1(x,t,u)`, `xi1` and `xi1_xu` then parse to the unknown function
/// or one of its derivatives.
struct ParseContext {
  std::map<std::string, std::vector<std::string>> unknown_functions;

  /// xi1, xi2, eta of (x, t, u).
  static ParseContext symmetry_unknowns();
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ('-'|'+') factor | base ('^' exponent)?
///   exponent := ['-'] number | '(' ['-'] integer ['/' integer] ')'
///   base   := number | ident | ident '(' args ')' | '(' expr ')'
/// Numbers are integers or decimals (optionally with e-notation), read
/// exactly as rationals. The result is normalized.
Expr parse(std::string_view text, const ParseContext& ctx = {});

/// Same as parse() without the final normalization (for tests of the
/// normalizer itself).
Expr parse_raw(std::string_view text, const ParseContext& ctx = {});

/// Parses a single symbol name such as "u_tt" or "x".
Symbol parse_symbol(std::string_view text, const ParseContext& ctx = {});

}  // namespace liesym
