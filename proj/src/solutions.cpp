#include "liesym/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "liesym/parser.hpp"

namespace liesym {

SolutionCandidate parse_solution(const std::string& text) {
  SolutionCandidate s;
  s.label = text;
  const std::string prefix = "implicit:";
  if (text.rfind(prefix, 0) == 0) {
    s.form = SolutionCandidate::Form::Implicit;
    s.expr = parse(text.substr(prefix.size()));
  } else {
    s.expr = parse(text);
  }
  for (const auto& sym : free_symbols(s.expr)) {
    if (sym.kind == SymbolKind::Jet) {
      throw Error(ErrorCode::InvalidArgument, "solution must not contain jet variables");
    }
    if (s.form == SolutionCandidate::Form::Explicit && sym.kind == SymbolKind::Dependent) {
      throw Error(ErrorCode::InvalidArgument, "explicit solution must not contain u; use implicit:");
    }
  }
  return s;
}

GroupAction make_action(std::string label, const std::string& x, const std::string& t, const std::string& u) {
  return {std::move(label), {parse(x), parse(t), parse(u)}, Symbol::parameter("eps")};
}

namespace {

const std::array<Symbol, 3>& base_symbols() {
  static const std::array<Symbol, 3> s{x_symbol(), t_symbol(), u_symbol()};
  return s;
}

}  // namespace

Expr change_coordinates(const Expr& e, const std::array<std::optional<Expr>, 3>& images) {
  Bindings rename;
  Bindings fill;
  for (int k = 0; k < 3; ++k) {
    if (!images[k]) continue;
    const Symbol fresh = Symbol::parameter("__" + base_symbols()[k].name);
    rename.emplace(base_symbols()[k], Expr(fresh));
    fill.emplace(fresh, *images[k]);
  }
  return substitute(substitute(e, rename), fill);
}

std::array<Expr, 3> infinitesimal_check(const GroupAction& g, const VectorField& v) {
  std::array<Expr, 3> out;
  for (int k = 0; k < 3; ++k) {
    const Expr d = substitute(differentiate(g.image[k], g.eps), {{g.eps, Expr(0L)}});
    out[k] = normalize(expand_transcendental(d) - v.component(k));
  }
  return out;
}

std::array<Expr, 3> identity_defect(const GroupAction& g) {
  std::array<Expr, 3> out;
  for (int k = 0; k < 3; ++k) {
    out[k] = normalize(substitute(g.image[k], {{g.eps, Expr(0L)}}) - Expr(base_symbols()[k]));
  }
  return out;
}

std::array<Expr, 3> group_law_defect(const GroupAction& g) {
  const Symbol e1 = Symbol::parameter("e1");
  const Symbol e2 = Symbol::parameter("e2");
  Bindings first{{g.eps, Expr(e2)}};
  std::array<Expr, 3> inner;
  for (int k = 0; k < 3; ++k) inner[k] = substitute(g.image[k], first);
  std::array<Expr, 3> out;
  for (int k = 0; k < 3; ++k) {
    const Expr composed =
        change_coordinates(substitute(g.image[k], {{g.eps, Expr(e1)}}), {inner[0], inner[1], inner[2]});
    const Expr direct = substitute(g.image[k], {{g.eps, Expr(e1) + Expr(e2)}});
    out[k] = normalize(expand_transcendental(composed) - expand_transcendental(direct));
  }
  return out;
}

SolutionCandidate transform_solution(const GroupAction& g, double eps, const SolutionCandidate& s) {
  // Fresh name for this transform's parameter.
  std::string name = g.eps.name;
  for (int k = 2; s.params.count(name) || depends_on(s.expr, Symbol::parameter(name)); ++k) {
    name = g.eps.name + std::to_string(k);
  }
  const Symbol p = Symbol::parameter(name);
  std::array<Expr, 3> inv;
  for (int k = 0; k < 3; ++k) inv[k] = substitute(g.image[k], {{g.eps, -Expr(p)}});

  SolutionCandidate out;
  out.params = s.params;
  out.params[name] = eps;
  out.label = g.label + "(" + s.label + ")";
  const Symbol u = u_symbol();

  if (s.form == SolutionCandidate::Form::Explicit) {
    const Expr moved = change_coordinates(s.expr, {inv[0], inv[1], std::nullopt});
    bool explicit_form = !depends_on(inv[0], u) && !depends_on(inv[1], u);
    Expr a;
    Expr b;
    if (explicit_form) {
      try {
        const auto coeffs = poly_coeffs(inv[2], {u});
        for (const auto& [mono, c] : coeffs) {
          if (mono[0] == 0) b = c;
          else if (mono[0] == 1) a = c;
          else explicit_form = false;
        }
        explicit_form = explicit_form && !a.is_zero();
      } catch (const Error&) {
        explicit_form = false;
      }
    }
    if (explicit_form) {
      out.form = SolutionCandidate::Form::Explicit;
      out.expr = normalize((moved - b) / a);
      return out;
    }
    out.form = SolutionCandidate::Form::Implicit;
    out.expr = normalize(inv[2] - moved);
    out.guess = s.expr;
    out.continuation = name;
    return out;
  }
  out.form = SolutionCandidate::Form::Implicit;
  out.expr = change_coordinates(s.expr, {inv[0], inv[1], inv[2]});
  out.guess = s.guess;
  out.continuation = name;
  return out;
}

Grid parse_grid(const std::string& text) {
  Grid g;
  bool have_x = false;
  bool have_t = false;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "grid entry '" + part + "' lacks '='");
    const std::string var = part.substr(0, eq);
    double lo = 0;
    double hi = 0;
    int n = 0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(part.substr(eq + 1));
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
      throw Error(ErrorCode::Parse, "grid entry '" + part + "' is not lo:hi:n");
    }
    if (var == "x") {
      g.x0 = lo, g.x1 = hi, g.nx = n, have_x = true;
    } else if (var == "t") {
      g.t0 = lo, g.t1 = hi, g.nt = n, have_t = true;
    } else {
      throw Error(ErrorCode::Parse, "grid variable must be x or t, got '" + var + "'");
    }
  }
  if (!have_x || !have_t) throw Error(ErrorCode::Parse, "grid needs both x and t ranges");
  return g;
}

NewtonResult safeguarded_newton(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                double x0, double tol, int max_iter) {
  NewtonResult r{x0, false, 0};
  double x = x0;
  double fx = f(x);
  if (!std::isfinite(fx)) return r;
  double last_step = 1e-3;
  for (int it = 0; it < max_iter; ++it) {
    r.iterations = it + 1;
    if (fx == 0.0) {
      r.root = x;
      r.converged = true;
      return r;
    }
    const double d = df(x);
    const double step = fx / d;
    bool accepted = false;
    if (std::isfinite(step) && std::abs(step) <= tol * (1.0 + std::abs(x))) {
      r.root = x - step;
      r.converged = true;
      return r;
    }
    if (std::isfinite(step)) {
      double lambda = 1.0;
      for (int h = 0; h < 30; ++h, lambda *= 0.5) {
        const double xn = x - lambda * step;
        const double fn = f(xn);
        if (std::isfinite(fn) && std::abs(fn) < std::abs(fx)) {
          last_step = std::abs(xn - x);
          const bool done = last_step <= tol * (1.0 + std::abs(xn));
          x = xn;
          fx = fn;
          accepted = true;
          if (done) {
            r.root = x;
            r.converged = true;
            return r;
          }
          break;
        }
      }
    }
    if (accepted) continue;
    // Newton stalled: bracket a sign change around x and bisect.
    double h = std::max(last_step, 1e-6 * (1.0 + std::abs(x)));
    double a = x;
    double fa = fx;
    double b = x;
    double fb = fx;
    bool bracketed = false;
    for (int k = 0; k < 60 && !bracketed; ++k, h *= 2.0) {
      for (double cand : {x - h, x + h}) {
        const double fc = f(cand);
        if (std::isfinite(fc) && (fc == 0.0 || std::signbit(fc) != std::signbit(fx))) {
          b = cand;
          fb = fc;
          bracketed = true;
          break;
        }
      }
    }
    if (!bracketed) return r;
    if (fb == 0.0) {
      r.root = b;
      r.converged = true;
      return r;
    }
    for (int k = 0; k < 200; ++k) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (!std::isfinite(fm)) return r;
      if (fm == 0.0 || std::abs(b - a) <= tol * (1.0 + std::abs(m))) {
        r.root = m;
        r.converged = true;
        return r;
      }
      if (std::signbit(fm) == std::signbit(fa)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    return r;
  }
  return r;
}

namespace {

struct PointJets {
  double u, ux, ut, uxx, uxt, utt;
};

// Evaluates u and its derivatives up to order two at grid points.
class JetEvaluator {
 public:
  JetEvaluator(const SolutionCandidate& s, const ResidualOptions& opts) : s_(s), opts_(opts) {
    const Symbol x = x_symbol();
    const Symbol t = t_symbol();
    const Symbol u = u_symbol();
    const Expr& f = s.expr;
    if (s.form == SolutionCandidate::Form::Explicit) {
      d_ = {f,
            differentiate(f, x),
            differentiate(f, t),
            differentiate(differentiate(f, x), x),
            differentiate(differentiate(f, x), t),
            differentiate(differentiate(f, t), t)};
    } else {
      const Expr fx = differentiate(f, x);
      const Expr ft = differentiate(f, t);
      const Expr fu = differentiate(f, u);
      d_ = {f,
            fx,
            ft,
            fu,
            differentiate(fx, x),
            differentiate(fx, t),
            differentiate(ft, t),
            differentiate(fx, u),
            differentiate(ft, u),
            differentiate(fu, u)};
      if (s.guess) guess_ = *s.guess;
    }
  }

  std::optional<PointJets> at(double x, double t, std::string& reason, bool& newton_failed) const {
    NumericBindings b = s_.params;
    b["x"] = x;
    b["t"] = t;
    const EvalOptions strict{opts_.domain_margin};
    newton_failed = false;
    try {
      if (s_.form == SolutionCandidate::Form::Explicit) {
        std::array<double, 6> v{};
        for (std::size_t k = 0; k < 6; ++k) v[k] = eval_numeric(d_[k], b, strict);
        return PointJets{v[0], v[1], v[2], v[3], v[4], v[5]};
      }
      const auto root = solve_u(b);
      if (!root) {
        reason = "newton did not converge";
        newton_failed = true;
        return std::nullopt;
      }
      b["u"] = *root;
      std::array<double, 10> v{};
      for (std::size_t k = 0; k < 10; ++k) v[k] = eval_numeric(d_[k], b, strict);
      const double fx = v[1], ft = v[2], fu = v[3], fxx = v[4], fxt = v[5], ftt = v[6], fxu = v[7],
                   ftu = v[8], fuu = v[9];
      if (std::abs(fu) <= opts_.domain_margin * (1.0 + std::abs(fx) + std::abs(ft))) {
        reason = "F_u near zero";
        return std::nullopt;
      }
      PointJets j{};
      j.u = *root;
      j.ux = -fx / fu;
      j.ut = -ft / fu;
      j.uxx = -(fxx + 2 * fxu * j.ux + fuu * j.ux * j.ux) / fu;
      j.uxt = -(fxt + fxu * j.ut + ftu * j.ux + fuu * j.ux * j.ut) / fu;
      j.utt = -(ftt + 2 * ftu * j.ut + fuu * j.ut * j.ut) / fu;
      return j;
    } catch (const Error& e) {
      reason = e.what();
      return std::nullopt;
    }
  }

 private:
  std::optional<double> solve_u(NumericBindings b) const {
    const EvalOptions loose{};
    auto feval = [&](const Expr& e, double u) {
      b["u"] = u;
      try {
        return eval_numeric(e, b, loose);
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    double u0 = 0.0;
    int steps = 1;
    double target = 0.0;
    if (s_.continuation) {
      target = b.at(*s_.continuation);
      steps = std::max(1, opts_.continuation_steps);
      b[*s_.continuation] = 0.0;
    }
    if (guess_) {
      u0 = eval_numeric(*guess_, b, loose);
    }
    for (int k = 1; k <= steps; ++k) {
      if (s_.continuation) b[*s_.continuation] = target * k / steps;
      const auto r = safeguarded_newton([&](double u) { return feval(d_[0], u); },
                                        [&](double u) { return feval(d_[3], u); }, u0, opts_.newton_tol,
                                        opts_.newton_max_iter);
      if (!r.converged) return std::nullopt;
      u0 = r.root;
    }
    return u0;
  }

  const SolutionCandidate& s_;
  ResidualOptions opts_;
  std::vector<Expr> d_;
  std::optional<Expr> guess_;
};

NumericBindings jet_bindings(const PointJets& j, double x, double t, const std::map<std::string, double>& params) {
  NumericBindings b = params;
  b["x"] = x;
  b["t"] = t;
  b["u"] = j.u;
  b["u_x"] = j.ux;
  b["u_t"] = j.ut;
  b["u_xx"] = j.uxx;
  b["u_xt"] = j.uxt;
  b["u_tt"] = j.utt;
  return b;
}

double grid_coord(double lo, double hi, int n, int i) {
  return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

template <class Visit>
void walk_grid(const Grid& grid, const JetEvaluator& ev, ResidualReport& rep, const ResidualOptions& opts,
               Visit visit) {
  for (int i = 0; i < grid.nx; ++i)
    for (int k = 0; k < grid.nt; ++k) {
      const double x = grid_coord(grid.x0, grid.x1, grid.nx, i);
      const double t = grid_coord(grid.t0, grid.t1, grid.nt, k);
      std::string reason;
      bool newton_failed = false;
      const auto j = ev.at(x, t, reason, newton_failed);
      if (!j) {
        if (newton_failed) {
          ++rep.newton_failures;
          if (rep.failures.size() < opts.max_failures_kept) rep.failures.push_back({x, t, reason});
        } else {
          ++rep.rejected;
        }
        continue;
      }
      ++rep.points;
      visit(x, t, *j);
    }
}

// Every parameter of the candidate and the equation needs a value; otherwise
// each grid point would be rejected and the report would look merely empty.
void require_bound(const Pde& pde, const SolutionCandidate& s) {
  std::set<Symbol> free = free_symbols(s.expr);
  if (s.guess) free.merge(free_symbols(*s.guess));
  free.merge(free_symbols(pde.lhs));
  for (const auto& sym : free) {
    if (sym.kind != SymbolKind::Parameter || s.params.count(sym.name)) continue;
    throw Error(ErrorCode::UnboundSymbol, "unbound symbol " + sym.display());
  }
}

}  // namespace

ResidualReport residual(const Pde& pde, const SolutionCandidate& s, const Grid& grid, const ResidualOptions& opts) {
  require_bound(pde, s);
  ResidualReport rep;
  const JetEvaluator ev(s, opts);
  walk_grid(grid, ev, rep, opts, [&](double x, double t, const PointJets& j) {
    const double r = eval_numeric(pde.lhs, jet_bindings(j, x, t, s.params));
    rep.max_abs = std::max(rep.max_abs, std::isfinite(r) ? std::abs(r) : std::numeric_limits<double>::infinity());
  });
  return rep;
}

InvariantSolutionReport verify_invariant_solution(const VectorField& v, const SolutionCandidate& s, const Pde& pde,
                                                  const Grid& grid, const ResidualOptions& opts) {
  InvariantSolutionReport out;
  out.pde = residual(pde, s, grid, opts);
  const Expr q = characteristic(v);
  ResidualReport scratch;
  const JetEvaluator ev(s, opts);
  walk_grid(grid, ev, scratch, opts, [&](double x, double t, const PointJets& j) {
    const double r = eval_numeric(q, jet_bindings(j, x, t, s.params));
    out.invariance_max_abs = std::max(out.invariance_max_abs, std::abs(r));
  });
  out.invariance_points = scratch.points;
  return out;
}

Symbol ode_y() { return Symbol::parameter("y"); }
Symbol ode_v() { return Symbol::parameter("v"); }
Symbol ode_vp() { return Symbol::parameter("vp"); }
Symbol ode_vpp() { return Symbol::parameter("vpp"); }

namespace {

Symbol ode_vppp() { return Symbol::parameter("vppp"); }

// Total derivative along v(y(x, t)) treating vp, vpp as successive derivatives.
Expr chain_derivative(const Expr& h, const Symbol& var, const Expr& y) {
  const Expr dy = differentiate(y, var);
  return differentiate(h, var) + dy * (differentiate(h, ode_v()) * Expr(ode_vp()) +
                                       differentiate(h, ode_vp()) * Expr(ode_vpp()) +
                                       differentiate(h, ode_vpp()) * Expr(ode_vppp()));
}

// Replaces roots B^(p/q) whose base depends on `vars` by w^p with w a fresh
// parameter; `roots` records w -> B^(1/q).
Expr freeze_roots(const Expr& e, const std::vector<Symbol>& vars, std::map<Symbol, Expr>& roots) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Sum>) {
          std::vector<Expr> terms;
          for (const auto& a : n.terms) terms.push_back(freeze_roots(a, vars, roots));
          return Expr::raw_sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          std::vector<Expr> fs;
          for (const auto& a : n.factors) fs.push_back(freeze_roots(a, vars, roots));
          return Expr::raw_product(std::move(fs));
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          const Rational& r = n.exponent;
          bool depends = false;
          for (const auto& v : vars) depends = depends || depends_on(n.base, v);
          if (r.get_den() == 1 || !depends) {
            return Expr::raw_power(freeze_roots(n.base, vars, roots), r);
          }
          const Rational root(1, r.get_den());
          const Expr atom = pow(n.base, root);
          Symbol w;
          bool found = false;
          for (const auto& [sym, val] : roots) {
            if (val.identical(atom)) {
              w = sym;
              found = true;
            }
          }
          if (!found) {
            w = Symbol::parameter("w" + std::to_string(roots.size() + 1));
            roots.emplace(w, atom);
          }
          return Expr::raw_power(Expr(w), Rational(r.get_num()));
        } else {
          return e;
        }
      },
      e.node());
}

}  // namespace

Reduction reduce(const Pde& pde, const ReductionAnsatz& ansatz) {
  const Symbol x = x_symbol();
  const Symbol t = t_symbol();
  const Expr& g = ansatz.g;
  const Expr ux = chain_derivative(g, x, ansatz.y);
  const Expr ut = chain_derivative(g, t, ansatz.y);
  Bindings b{{u_symbol(), g},
             {Symbol::jet({"x"}), ux},
             {Symbol::jet({"t"}), ut},
             {Symbol::jet({"x", "x"}), chain_derivative(ux, x, ansatz.y)},
             {Symbol::jet({"x", "t"}), chain_derivative(ux, t, ansatz.y)},
             {Symbol::jet({"t", "t"}), chain_derivative(ut, t, ansatz.y)}};
  for (const auto& s : free_symbols(pde.lhs)) {
    if (s.kind == SymbolKind::Jet && !b.count(s)) {
      throw Error(ErrorCode::InvalidArgument, "reduction supports equations up to second order");
    }
  }
  Expr e = substitute(pde.lhs, b);
  if (depends_on(e, ode_vppp())) throw Error(ErrorCode::SelfCheck, "third derivative leaked into the reduction");

  Reduction out;
  for (const auto& [s, val] : ansatz.chart) {
    if (!out.chart.empty()) out.chart += ", ";
    out.chart += s.display() + " = " + to_string(val);
  }
  if (!ansatz.chart.empty()) e = substitute(e, ansatz.chart);

  std::vector<Symbol> rest;
  for (const auto& s : {x, t})
    if (depends_on(e, s)) rest.push_back(s);
  std::map<Symbol, Expr> roots;
  const Expr frozen = normalize(freeze_roots(e, rest, roots));
  std::vector<Symbol> sep = rest;
  for (const auto& [w, val] : roots) sep.push_back(w);

  const auto [num, den] = numerator_denominator(frozen);
  if (num.is_zero()) {
    out.ode = Expr(0L);
    out.prefactor = Expr(1L);
    return out;
  }
  std::map<Monomial, Expr> coeffs;
  try {
    coeffs = poly_coeffs(num, sep);
  } catch (const Error& ex) {
    throw Error(ErrorCode::InvalidArgument, std::string("reduced equation does not separate: ") + ex.what());
  }
  const Expr c0 = coeffs.begin()->second;
  const std::vector<Symbol> ode_vars{ode_y(), ode_v(), ode_vp(), ode_vpp()};
  std::vector<Expr> pre;
  for (const auto& [mono, c] : coeffs) {
    const Expr ratio = c / c0;
    for (const auto& s : ode_vars) {
      if (depends_on(ratio, s)) {
        throw Error(ErrorCode::InvalidArgument,
                    "reduced equation keeps x, t dependence tied to the ODE variables: " + to_string(ratio));
      }
    }
    Expr m = ratio;
    for (std::size_t i = 0; i < sep.size(); ++i)
      if (mono[i]) m = m * pow(Expr(sep[i]), mono[i]);
    pre.push_back(m);
  }
  Bindings thaw;
  for (const auto& [w, val] : roots) thaw.emplace(w, val);
  Expr prefactor = normalize(Expr::raw_sum(std::move(pre)) / den);
  if (!thaw.empty()) prefactor = substitute(prefactor, thaw);
  if (prefactor.is_zero()) throw Error(ErrorCode::InvalidArgument, "prefactor vanishes identically");
  out.ode = c0;
  out.prefactor = prefactor;
  return out;
}

Expr substitute_ode_solution(const Expr& ode, const Expr& v_of_y) {
  const Expr d1 = differentiate(v_of_y, ode_y());
  const Expr d2 = differentiate(d1, ode_y());
  return substitute(ode, {{ode_v(), v_of_y}, {ode_vp(), d1}, {ode_vpp(), d2}});
}

}  // namespace liesym
