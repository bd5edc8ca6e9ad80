#include "liesym/jet.hpp"

#include <algorithm>
#include <json.hpp>

#include "liesym/fixture.hpp"
#include "liesym/parser.hpp"

namespace liesym {

Symbol x_symbol() { return Symbol::independent("x"); }
Symbol t_symbol() { return Symbol::independent("t"); }
Symbol u_symbol() { return Symbol::dependent("u"); }

int jet_order(const Expr& e) {
  int order = 0;
  for (const auto& s : free_symbols(e)) {
    if (s.kind == SymbolKind::Jet) order = std::max(order, s.order());
  }
  return order;
}

bool is_principal_derivative(const Symbol& jet, const Symbol& principal) {
  if (jet.kind != SymbolKind::Jet) return false;
  std::vector<std::string> rest = jet.index;
  for (const auto& v : principal.index) {
    auto it = std::find(rest.begin(), rest.end(), v);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return true;
}

std::vector<Symbol> jet_symbols(int max_order) {
  std::vector<Symbol> out;
  for (int order = 1; order <= max_order; ++order) {
    // Multisets over {x, t} of this size: k copies of t.
    for (int k = 0; k <= order; ++k) {
      std::vector<std::string> index(static_cast<std::size_t>(order - k), "x");
      for (int i = 0; i < k; ++i) index.emplace_back("t");
      out.push_back(Symbol::jet(index));
    }
  }
  return out;
}

namespace {

std::vector<std::string> multiset_minus(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (const auto& v : b) a.erase(std::find(a.begin(), a.end(), v));
  return a;
}

// Positive constant plus positive-coefficient monomials with even exponents.
bool one_plus_squares(const Expr& a) {
  if (!numerator_denominator(a).second.is_one()) return false;
  const auto syms = free_symbols(a);
  std::vector<Symbol> vars(syms.begin(), syms.end());
  std::map<Monomial, Expr> coeffs;
  try {
    coeffs = poly_coeffs(a, vars);
  } catch (const Error&) {
    return false;
  }
  bool has_constant = false;
  for (const auto& [mono, c] : coeffs) {
    if (!c.is_constant() || c.constant_value() <= 0) return false;
    bool constant_term = true;
    for (int e : mono) {
      if (e % 2 != 0) return false;
      if (e != 0) constant_term = false;
    }
    has_constant = has_constant || constant_term;
  }
  return has_constant;
}

}  // namespace

Pde solve_principal(const Pde& input) {
  Pde pde = input;
  const Expr coeff = differentiate(pde.lhs, pde.principal);
  if (depends_on(coeff, pde.principal)) {
    throw Error(ErrorCode::NotCertifiable,
                "principal derivative " + pde.principal.display() + " enters nonlinearly");
  }
  if (coeff.is_zero()) {
    throw Error(ErrorCode::NotCertifiable, pde.principal.display() + " does not occur in the equation");
  }
  const Expr rest = normalize(pde.lhs - coeff * Expr(pde.principal));
  if (coeff.is_constant()) {
    pde.certificate = "constant";
    pde.denominator = Expr(1L);
    pde.clearing_power = 0;
    pde.solved = normalize(-rest / coeff);
    return pde;
  }
  Expr positive;
  if (one_plus_squares(coeff)) {
    positive = coeff;
  } else if (one_plus_squares(-coeff)) {
    positive = -coeff;
  } else {
    throw Error(ErrorCode::NotCertifiable,
                "coefficient " + to_string(coeff) + " of " + pde.principal.display() +
                    " is not certifiably nonvanishing");
  }
  pde.certificate = "one-plus-squares";
  pde.denominator = positive;
  pde.clearing_power = 1;
  pde.solved = normalize(-rest / coeff);
  return pde;
}

Pde make_pde(const Expr& lhs, std::optional<Symbol> principal) {
  Pde pde;
  pde.lhs = normalize(lhs);
  pde.order = std::max(1, jet_order(pde.lhs));
  if (principal) {
    pde.principal = *principal;
    return solve_principal(pde);
  }
  // Highest-order jets, pure t first; the first certifiable one wins.
  std::vector<Symbol> candidates;
  for (const auto& s : jet_symbols(pde.order)) {
    if (s.order() == pde.order && depends_on(pde.lhs, s)) candidates.push_back(s);
  }
  std::reverse(candidates.begin(), candidates.end());
  if (candidates.empty()) throw Error(ErrorCode::NotCertifiable, "equation has no jet variables");
  for (std::size_t i = 0; i + 1 < candidates.size(); ++i) {
    pde.principal = candidates[i];
    try {
      return solve_principal(pde);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotCertifiable) throw;
    }
  }
  pde.principal = candidates.back();
  return solve_principal(pde);
}

Expr total_derivative(const Expr& e, const Symbol& v) {
  std::vector<Expr> terms;
  terms.push_back(differentiate(e, v));
  const Expr du = differentiate(e, u_symbol());
  if (!du.is_zero()) terms.push_back(Expr::raw_product({Expr(Symbol::jet({v.name})), du}));
  for (const auto& s : free_symbols(e)) {
    if (s.kind != SymbolKind::Jet) continue;
    auto index = s.index;
    index.push_back(v.name);
    const Expr d = differentiate(e, s);
    if (!d.is_zero()) terms.push_back(Expr::raw_product({Expr(Symbol::jet(index)), d}));
  }
  return normalize(Expr::raw_sum(std::move(terms)));
}

Expr total_derivative(const Expr& e, const std::vector<std::string>& vars) {
  Expr out = e;
  for (const auto& v : vars) out = total_derivative(out, Symbol::independent(v));
  return out;
}

Restricted restrict_to_solutions(const Expr& e, const Pde& pde) {
  Expr cur = normalize(e);
  for (int iter = 0; iter < 16; ++iter) {
    Bindings b;
    for (const auto& s : free_symbols(cur)) {
      if (!is_principal_derivative(s, pde.principal)) continue;
      b.emplace(s, total_derivative(pde.solved, multiset_minus(s.index, pde.principal.index)));
    }
    if (b.empty()) break;
    cur = substitute(cur, b);
  }
  for (const auto& s : free_symbols(cur)) {
    if (is_principal_derivative(s, pde.principal)) {
      throw Error(ErrorCode::SelfCheck,
                  "principal derivative " + s.display() + " survived restriction");
    }
  }
  Restricted out{cur, 0};
  if (pde.denominator.is_constant()) return out;
  for (int m = 0; m < 32; ++m) {
    const Expr next = normalize(out.value * pde.denominator);
    const Expr d0 = numerator_denominator(out.value).second;
    const Expr d1 = numerator_denominator(next).second;
    if (d0.identical(d1)) return out;
    out.value = next;
    out.clearing_power = m + 1;
  }
  throw Error(ErrorCode::SelfCheck, "denominator clearing did not terminate");
}

std::string pde_to_json(const Pde& pde) {
  nlohmann::ordered_json j;
  j["lhs"] = to_string(pde.lhs);
  j["principal"] = pde.principal.display();
  j["solved"] = to_string(pde.solved);
  j["denominator"] = to_string(pde.denominator);
  j["clearing_power"] = pde.clearing_power;
  return j.dump(2);
}

Pde pde_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, std::string("invalid PDE JSON: ") + ex.what());
  }
  if (!j.contains("lhs")) throw Error(ErrorCode::Parse, "PDE JSON lacks 'lhs'");
  std::optional<Symbol> principal;
  if (j.contains("principal")) principal = parse_symbol(j["principal"].get<std::string>());
  Pde pde = make_pde(parse(j["lhs"].get<std::string>()), principal);
  if (j.contains("solved")) {
    const Expr stored = parse(j["solved"].get<std::string>());
    if (!equivalent(stored, pde.solved)) {
      throw Error(ErrorCode::InvalidArgument, "stored solved form disagrees with the equation");
    }
  }
  return pde;
}

Pde pde_from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return pde_from_json(text);
  const FixtureFile f = parse_fixture(text);
  const FixtureSection* sec = nullptr;
  for (const auto& s : f.sections) {
    if (s.find("lhs")) {
      sec = &s;
      break;
    }
  }
  if (!sec) throw Error(ErrorCode::Parse, "PDE file has no 'lhs' entry");
  std::optional<Symbol> principal;
  if (auto p = sec->find("principal")) principal = parse_symbol(*p);
  return make_pde(parse(sec->get("lhs")), principal);
}

Pde load_pde(const std::string& path) { return pde_from_text(read_file(path)); }

}  // namespace liesym
