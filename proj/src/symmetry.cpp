#include "liesym/symmetry.hpp"

#include <algorithm>
#include <set>

#include "liesym/parser.hpp"

namespace liesym {

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.xi1 + b.xi1, a.xi2 + b.xi2, a.eta + b.eta};
}

VectorField operator*(const Expr& s, const VectorField& a) { return {s * a.xi1, s * a.xi2, s * a.eta}; }

bool equivalent(const VectorField& a, const VectorField& b) {
  return equivalent(a.xi1, b.xi1) && equivalent(a.xi2, b.xi2) && equivalent(a.eta, b.eta);
}

std::string to_string(const VectorField& v) {
  static const char* const kDirs[3] = {"d_x", "d_t", "d_u"};
  std::string out;
  for (int i = 0; i < 3; ++i) {
    const Expr& c = v.component(i);
    if (c.is_zero()) continue;
    std::string term;
    bool negative = false;
    if (c.is_one()) {
      term = kDirs[i];
    } else if ((-c).is_one()) {
      term = kDirs[i];
      negative = true;
    } else {
      std::string s = to_string(c);
      if (std::holds_alternative<Expr::Sum>(c.node())) {
        s = "(" + s + ")";
      } else if (s[0] == '-') {
        negative = true;
        s = s.substr(1);
      }
      term = s + "*" + kDirs[i];
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

VectorField make_field(const std::string& xi1, const std::string& xi2, const std::string& eta) {
  return {parse(xi1), parse(xi2), parse(eta)};
}

VectorField unknown_field() {
  const std::vector<std::string> args{"x", "t", "u"};
  return {Expr(Symbol::unknown("xi1", args)), Expr(Symbol::unknown("xi2", args)),
          Expr(Symbol::unknown("eta", args))};
}

Expr characteristic(const VectorField& v) {
  return v.eta - v.xi1 * Expr(Symbol::jet({"x"})) - v.xi2 * Expr(Symbol::jet({"t"}));
}

namespace {

Symbol extend(const Symbol& jet, const std::string& var) {
  auto index = jet.index;
  index.push_back(var);
  return Symbol::jet(index);
}

}  // namespace

ProlongedField prolong(const VectorField& v, int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "prolongation order must be positive");
  ProlongedField pr{v, order, {}};
  const Expr q = characteristic(v);
  for (const auto& jet : jet_symbols(order)) {
    pr.coeffs[jet] = total_derivative(q, jet.index) + v.xi1 * Expr(extend(jet, "x")) +
                     v.xi2 * Expr(extend(jet, "t"));
  }
  return pr;
}

ProlongedField prolong_recursive(const VectorField& v, int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "prolongation order must be positive");
  ProlongedField pr{v, order, {}};
  for (const auto& jet : jet_symbols(order)) {
    auto lower = jet.index;
    const std::string var = lower.back();
    lower.pop_back();
    const Symbol di = Symbol::independent(var);
    const Expr prev = lower.empty() ? v.eta : pr.coeffs.at(Symbol::jet(lower));
    const Expr ux = lower.empty() ? Expr(Symbol::jet({"x"})) : Expr(extend(Symbol::jet(lower), "x"));
    const Expr ut = lower.empty() ? Expr(Symbol::jet({"t"})) : Expr(extend(Symbol::jet(lower), "t"));
    pr.coeffs[jet] = total_derivative(prev, di) - ux * total_derivative(v.xi1, di) -
                     ut * total_derivative(v.xi2, di);
  }
  return pr;
}

Expr apply_prolonged(const ProlongedField& pr, const Pde& pde) {
  std::vector<Expr> terms;
  for (const auto& s : free_symbols(pde.lhs)) {
    const Expr d = differentiate(pde.lhs, s);
    if (s == x_symbol()) {
      terms.push_back(pr.base.xi1 * d);
    } else if (s == t_symbol()) {
      terms.push_back(pr.base.xi2 * d);
    } else if (s == u_symbol()) {
      terms.push_back(pr.base.eta * d);
    } else if (s.kind == SymbolKind::Jet) {
      auto it = pr.coeffs.find(s);
      if (it == pr.coeffs.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "prolongation of order " + std::to_string(pr.order) + " lacks " + s.display());
      }
      terms.push_back(it->second * d);
    }
  }
  return normalize(Expr::raw_sum(std::move(terms)));
}

namespace {

int unknown_rank(const std::string& name) {
  if (name == "xi1") return 0;
  if (name == "xi2") return 1;
  if (name == "eta") return 2;
  return 3;
}

// Highest derivatives first so that RREF pivots on them.
bool derivative_less(const Symbol& a, const Symbol& b) {
  if (a.order() != b.order()) return a.order() > b.order();
  const int ra = unknown_rank(a.name);
  const int rb = unknown_rank(b.name);
  if (ra != rb) return ra < rb;
  return compare(a, b) < 0;
}

std::string monomial_label(const Monomial& m, const std::vector<Symbol>& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i].display();
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

void reduce_system(DeterminingSystem& ds) {
  std::set<Symbol> found;
  for (const auto& eq : ds.raw) {
    for (const auto& s : free_symbols(eq.equation)) {
      if (s.kind == SymbolKind::Unknown) found.insert(s);
    }
  }
  std::vector<Symbol> derivs(found.begin(), found.end());
  std::sort(derivs.begin(), derivs.end(), derivative_less);

  std::vector<std::vector<Expr>> rows;
  bool constant = true;
  for (const auto& eq : ds.raw) {
    const auto coeffs = poly_coeffs(eq.equation, derivs);
    std::vector<Expr> row(derivs.size());
    for (const auto& [mono, c] : coeffs) {
      int total = 0;
      std::size_t at = 0;
      for (std::size_t i = 0; i < mono.size(); ++i) {
        total += mono[i];
        if (mono[i]) at = i;
      }
      if (total != 1) {
        throw Error(ErrorCode::SelfCheck, "determining equation is not linear homogeneous: " +
                                              to_string(eq.equation));
      }
      row[at] = c;
      constant = constant && c.is_constant();
    }
    rows.push_back(std::move(row));
  }

  ds.reduced.clear();
  auto emit = [&](const std::vector<Expr>& row) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < derivs.size(); ++j) {
      if (!row[j].is_zero()) terms.push_back(row[j] * Expr(derivs[j]));
    }
    ds.reduced.push_back(normalize(Expr::raw_sum(std::move(terms))));
  };
  if (constant) {
    RationalMatrix m(0, derivs.size());
    for (const auto& row : rows) {
      std::vector<Rational> r(derivs.size());
      for (std::size_t j = 0; j < derivs.size(); ++j) r[j] = row[j].is_zero() ? Rational(0) : row[j].constant_value();
      m.append_row(r);
    }
    const RationalMatrix red = row_space(m);
    for (std::size_t i = 0; i < red.rows(); ++i) {
      std::vector<Expr> row;
      for (const auto& q : red.row(i)) row.emplace_back(q);
      emit(row);
    }
    return;
  }
  // Coefficients depend on (x, t, u): eliminate over the rational functions.
  const std::size_t cols = derivs.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Expr piv = rows[r][c];
    for (auto& e : rows[r]) e = e / piv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Expr f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
    }
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i) emit(rows[i]);
}

}  // namespace

DeterminingSystem determining_system(const Pde& pde) {
  DeterminingSystem ds;
  const VectorField v = unknown_field();
  for (int i = 0; i < 3; ++i) ds.unknowns.push_back(*v.component(i).as_symbol());
  const Restricted r = restrict_to_solutions(apply_prolonged(prolong(v, pde.order), pde), pde);
  ds.clearing_power = r.clearing_power;
  const Expr numerator = numerator_denominator(r.value).first;
  std::vector<Symbol> jets;
  for (const auto& s : free_symbols(numerator)) {
    if (s.kind == SymbolKind::Jet) jets.push_back(s);
  }
  for (const auto& [mono, c] : poly_coeffs(numerator, jets)) {
    if (c.is_zero()) continue;
    ds.raw.push_back({c, monomial_label(mono, jets)});
  }
  reduce_system(ds);
  return ds;
}

DeterminingSystem system_from_equations(const std::vector<Expr>& equations) {
  DeterminingSystem ds;
  const VectorField v = unknown_field();
  for (int i = 0; i < 3; ++i) ds.unknowns.push_back(*v.component(i).as_symbol());
  for (std::size_t i = 0; i < equations.size(); ++i) {
    ds.raw.push_back({normalize(equations[i]), "given[" + std::to_string(i) + "]"});
  }
  reduce_system(ds);
  return ds;
}

std::vector<Monomial> ansatz_monomials(int degree) {
  std::vector<Monomial> out;
  for (int d = 0; d <= degree; ++d) {
    for (int a = d; a >= 0; --a) {
      for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
    }
  }
  return out;
}

namespace {

const std::vector<Symbol>& xtu() {
  static const std::vector<Symbol> vars{x_symbol(), t_symbol(), u_symbol()};
  return vars;
}

Expr monomial_expr(const Monomial& m) {
  Expr e(1L);
  for (std::size_t i = 0; i < 3; ++i) {
    if (m[i]) e = e * pow(Expr(xtu()[i]), m[i]);
  }
  return e;
}

const char* const kUnknownNames[3] = {"xi1", "xi2", "eta"};

}  // namespace

AnsatzSolveResult solve_ansatz(const DeterminingSystem& ds, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "ansatz degree must be non-negative");
  const auto monos = ansatz_monomials(degree);
  const std::size_t n = 3 * monos.size();

  std::vector<Expr> equations;
  for (const auto& e : ds.reduced) equations.push_back(numerator_denominator(e).first);

  std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::map<std::string, Expr> functions;
    for (int f = 0; f < 3; ++f) functions[kUnknownNames[f]] = Expr(0L);
    functions[kUnknownNames[k / monos.size()]] = monomial_expr(monos[k % monos.size()]);
    for (std::size_t i = 0; i < equations.size(); ++i) {
      const Expr val = substitute_functions(equations[i], functions);
      if (val.is_zero()) continue;
      for (const auto& [mono, c] : poly_coeffs(val, xtu())) {
        if (!c.is_constant()) {
          throw Error(ErrorCode::NotPolynomial,
                      "ansatz coefficient " + to_string(c) + " is not a rational constant");
        }
        auto [it, inserted] = row_of.emplace(std::make_pair(i, mono), row_of.size());
        columns[k].emplace_back(it->second, c.constant_value());
      }
    }
  }
  RationalMatrix m(row_of.size(), n);
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [r, c] : columns[k]) m(r, k) += c;
  }

  AnsatzSolveResult out;
  out.degree = degree;
  out.raw_nullspace = nullspace(m);
  out.dimension = static_cast<int>(out.raw_nullspace.rows());
  for (std::size_t i = 0; i < out.raw_nullspace.rows(); ++i) {
    out.basis.push_back(field_from_coordinates(out.raw_nullspace.row(i), degree));
  }
  return out;
}

std::vector<Rational> field_coordinates(const VectorField& v, int degree) {
  const auto monos = ansatz_monomials(degree);
  std::vector<Rational> out(3 * monos.size());
  for (int f = 0; f < 3; ++f) {
    for (const auto& [mono, c] : poly_coeffs(v.component(f), xtu())) {
      if (!c.is_constant()) {
        throw Error(ErrorCode::InvalidArgument, "field coefficient " + to_string(c) + " is not rational");
      }
      auto it = std::find(monos.begin(), monos.end(), mono);
      if (it == monos.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "field exceeds ansatz degree " + std::to_string(degree));
      }
      out[static_cast<std::size_t>(f) * monos.size() + static_cast<std::size_t>(it - monos.begin())] =
          c.constant_value();
    }
  }
  return out;
}

VectorField field_from_coordinates(const std::vector<Rational>& coords, int degree) {
  const auto monos = ansatz_monomials(degree);
  if (coords.size() != 3 * monos.size()) {
    throw Error(ErrorCode::InvalidArgument, "coordinate vector has wrong length");
  }
  VectorField v;
  for (int f = 0; f < 3; ++f) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < monos.size(); ++j) {
      const Rational& c = coords[static_cast<std::size_t>(f) * monos.size() + j];
      if (c != 0) terms.push_back(Expr(c) * monomial_expr(monos[j]));
    }
    v.component(f) = normalize(Expr::raw_sum(std::move(terms)));
  }
  return v;
}

namespace {

int field_degree(const VectorField& v) {
  int d = 0;
  for (int f = 0; f < 3; ++f) {
    for (const auto& [mono, c] : poly_coeffs(v.component(f), xtu())) {
      d = std::max(d, mono[0] + mono[1] + mono[2]);
    }
  }
  return d;
}

}  // namespace

bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
  int degree = 0;
  for (const auto& v : a) degree = std::max(degree, field_degree(v));
  for (const auto& v : b) degree = std::max(degree, field_degree(v));
  const std::size_t cols = 3 * ansatz_monomials(degree).size();
  RationalMatrix ma(0, cols);
  RationalMatrix mb(0, cols);
  for (const auto& v : a) ma.append_row(field_coordinates(v, degree));
  for (const auto& v : b) mb.append_row(field_coordinates(v, degree));
  return row_space(ma) == row_space(mb);
}

SymmetryCheck verify_symmetry(const VectorField& v, const Pde& pde) {
  const Restricted r = restrict_to_solutions(apply_prolonged(prolong(v, pde.order), pde), pde);
  return {r.value.is_zero(), r.value};
}

std::vector<Expr> equation_residuals(const VectorField& v, const std::vector<Expr>& equations) {
  const std::map<std::string, Expr> functions{{"xi1", v.xi1}, {"xi2", v.xi2}, {"eta", v.eta}};
  std::vector<Expr> out;
  for (const auto& e : equations) {
    Expr r = substitute_functions(e, functions);
    if (!r.is_zero()) out.push_back(r);
  }
  return out;
}

}  // namespace liesym
