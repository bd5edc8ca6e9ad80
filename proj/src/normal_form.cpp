#include "normal_form.hpp"

#include <algorithm>
#include <cassert>

namespace liesym::detail {
namespace {

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

std::optional<Mono> mono_div(const Mono& a, const Mono& b) {
  Mono out;
  std::size_t i = 0;
  for (const auto& [atom, e] : b) {
    while (i < a.size() && compare(a[i].first, atom) < 0) out.push_back(a[i++]);
    if (i == a.size() || compare(a[i].first, atom) != 0 || a[i].second < e) return std::nullopt;
    if (a[i].second > e) out.emplace_back(atom, a[i].second - e);
    ++i;
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  return out;
}

void add_term(Poly& p, const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly poly_const(const Rational& c) {
  Poly p;
  if (c != 0) p.emplace(Mono{}, c);
  return p;
}

Poly poly_atom(const Expr& atom, int e = 1) {
  Poly p;
  p.emplace(Mono{{atom, e}}, Rational(1));
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) add_term(out, m, c);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_term(out, mono_mul(ma, mb), ca * cb);
  return out;
}

Poly poly_scale(const Poly& a, const Rational& s) {
  if (s == 0) return {};
  Poly out;
  for (const auto& [m, c] : a) out.emplace(m, c * s);
  return out;
}

Poly poly_pow(const Poly& a, int k) {
  Poly out = poly_const(1);
  for (int i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

std::optional<Poly> exact_div(Poly p, const Poly& d) {
  assert(!d.empty());
  const auto& [lm, lc] = *d.begin();
  Poly q;
  while (!p.empty()) {
    const auto& [pm, pc] = *p.begin();
    auto qm = mono_div(pm, lm);
    if (!qm) return std::nullopt;
    const Rational qc = pc / lc;
    add_term(q, *qm, qc);
    for (const auto& [dm, dc] : d) add_term(p, mono_mul(*qm, dm), -qc * dc);
  }
  return q;
}

// Canonical root atom for base^(1/q).
Expr root_atom(const Expr& base, long q) { return Expr::raw_power(base, Rational(1, q)); }

long root_degree(const Expr& atom) {
  const auto& pw = std::get<Expr::Power>(atom.node());
  return pw.exponent.get_den().get_si();
}

const Expr& root_base(const Expr& atom) { return std::get<Expr::Power>(atom.node()).base; }

RatFunc rf_const(const Rational& c) { return RatFunc{poly_const(c), {}}; }

RatFunc rf_mul(const RatFunc& a, const RatFunc& b);
RatFunc rf_inverse(const RatFunc& a);

RatFunc rf_pow(const RatFunc& a, long k) {
  if (k < 0) return rf_pow(rf_inverse(a), -k);
  RatFunc out = rf_const(1);
  for (long i = 0; i < k; ++i) out = rf_mul(out, a);
  return out;
}

// Moves root exponents >= q out into powers of their base.
RatFunc rf_add(const RatFunc& a, const RatFunc& b);

RatFunc reduce_roots(RatFunc rf) {
  bool needs = false;
  for (const auto& [m, c] : rf.num) {
    for (const auto& [atom, e] : m) {
      if (is_root_atom(atom) && e >= root_degree(atom)) needs = true;
    }
  }
  if (!needs) return rf;
  Poly plain;
  RatFunc acc;
  for (const auto& [m, c] : rf.num) {
    Mono kept;
    RatFunc factor = rf_const(c);
    bool reduced = false;
    for (const auto& [atom, e] : m) {
      const long q = is_root_atom(atom) ? root_degree(atom) : 0;
      if (q > 0 && e >= q) {
        if (e % q > 0) kept.emplace_back(atom, static_cast<int>(e % q));
        factor = rf_mul(factor, rf_pow(from_expr(root_base(atom)), e / q));
        reduced = true;
      } else {
        kept.emplace_back(atom, e);
      }
    }
    if (!reduced) {
      add_term(plain, m, c);
      continue;
    }
    Poly t;
    t.emplace(kept, Rational(1));
    acc = rf_add(acc, rf_mul(RatFunc{t, {}}, factor));
  }
  acc = rf_add(acc, RatFunc{plain, {}});
  for (const auto& [f, k] : rf.den) acc.den[f] += k;
  return acc;
}

Rational poly_content(const Poly& p) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : p) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.begin()->second < 0) content = -content;
  return content;
}

// Splits a monomial-with-coefficient divisor into the numerator correction and
// denominator factors: returns 1/(c*m) as a RatFunc.
RatFunc invert_term(const Mono& m, const Rational& c) {
  RatFunc out = rf_const(Rational(1) / c);
  for (const auto& [atom, e] : m) {
    if (is_root_atom(atom)) {
      const long q = root_degree(atom);
      const long whole = (e + q - 1) / q;
      const int rest = static_cast<int>(whole * q - e);
      if (rest > 0) out = rf_mul(out, RatFunc{poly_atom(atom, rest), {}});
      out = rf_mul(out, rf_pow(rf_inverse(from_expr(root_base(atom))), whole));
    } else {
      out.den[poly_atom(atom)] += e;
    }
  }
  return out;
}

RatFunc rf_inverse(const RatFunc& a) {
  if (a.num.empty()) throw Error(ErrorCode::Domain, "division by zero");
  RatFunc out{poly_const(1), {}};
  for (const auto& [f, k] : a.den) out.num = poly_mul(out.num, poly_pow(f, k));
  const Poly& p = a.num;
  if (p.size() == 1) {
    return rf_mul(out, invert_term(p.begin()->first, p.begin()->second));
  }
  // Monomial gcd across all terms.
  Mono g = p.begin()->first;
  for (const auto& [m, c] : p) {
    Mono next;
    for (const auto& [atom, e] : g) {
      for (const auto& [atom2, e2] : m) {
        if (compare(atom, atom2) == 0) {
          next.emplace_back(atom, std::min(e, e2));
          break;
        }
      }
    }
    g = std::move(next);
  }
  Poly rest;
  for (const auto& [m, c] : p) rest.emplace(*mono_div(m, g), c);
  const Rational content = poly_content(rest);
  Poly prim = poly_scale(rest, Rational(1) / content);
  out.den[prim] += 1;
  return rf_mul(out, invert_term(g, content));
}

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  if (a.num.empty() || b.num.empty()) return {};
  RatFunc out{poly_mul(a.num, b.num), a.den};
  for (const auto& [f, k] : b.den) out.den[f] += k;
  return reduce_roots(std::move(out));
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  if (a.num.empty()) return b;
  if (b.num.empty()) return a;
  std::map<Poly, int, PolyLess> lcm = a.den;
  for (const auto& [f, k] : b.den) lcm[f] = std::max(lcm[f], k);
  Poly na = a.num;
  Poly nb = b.num;
  for (const auto& [f, k] : lcm) {
    auto ia = a.den.find(f);
    auto ib = b.den.find(f);
    const int ka = ia == a.den.end() ? 0 : ia->second;
    const int kb = ib == b.den.end() ? 0 : ib->second;
    if (k > ka) na = poly_mul(na, poly_pow(f, k - ka));
    if (k > kb) nb = poly_mul(nb, poly_pow(f, k - kb));
  }
  RatFunc out{poly_add(na, nb), lcm};
  if (out.num.empty()) out.den.clear();
  return reduce_roots(std::move(out));
}

RatFunc cancel(RatFunc rf) {
  if (rf.num.empty()) {
    rf.den.clear();
    return rf;
  }
  for (auto it = rf.den.begin(); it != rf.den.end();) {
    while (it->second > 0) {
      auto q = exact_div(rf.num, it->first);
      if (!q) break;
      rf.num = std::move(*q);
      --it->second;
    }
    if (it->second == 0) {
      it = rf.den.erase(it);
    } else {
      ++it;
    }
  }
  return rf;
}

}  // namespace

RatFunc normal_rf(const Expr& e);

namespace {

bool perfect_root(const mpz_class& v, long q, mpz_class& out) {
  if (v < 0) return false;
  return mpz_root(out.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(q)) != 0;
}

RatFunc rational_power(const Expr& base, const Rational& exponent) {
  const Expr b = to_expr(normal_rf(base));
  const long q = exponent.get_den().get_si();
  const long p = exponent.get_num().get_si();
  // floor division
  long whole = p / q;
  long rest = p % q;
  if (rest < 0) {
    rest += q;
    whole -= 1;
  }
  if (b.is_zero()) {
    if (exponent > 0) return {};
    throw Error(ErrorCode::Domain, "division by zero");
  }
  if (b.is_constant()) {
    const Rational& v = b.constant_value();
    mpz_class rn, rd;
    if (perfect_root(v.get_num(), q, rn) && perfect_root(v.get_den(), q, rd)) {
      Rational r(rn, rd);
      r.canonicalize();
      Rational result = 1;
      const long ap = p < 0 ? -p : p;
      for (long i = 0; i < ap; ++i) result *= r;
      if (p < 0) result = Rational(1) / result;
      return rf_const(result);
    }
  }
  RatFunc out = rf_pow(from_expr(b), whole);
  return rf_mul(out, RatFunc{poly_atom(root_atom(b, q), static_cast<int>(rest)), {}});
}

bool odd_function(Func f) {
  return f == Func::Sin || f == Func::Tan || f == Func::Arctan || f == Func::Sinh;
}

RatFunc apply_rf(Func f, const Expr& arg) {
  if (f == Func::Sqrt) return rational_power(arg, Rational(1, 2));
  RatFunc norm = normal_rf(arg);
  // Parity: arguments are kept with a positive leading coefficient.
  bool negated = false;
  if ((odd_function(f) || f == Func::Cos || f == Func::Cosh) && !norm.num.empty() &&
      norm.num.begin()->second < 0) {
    norm.num = poly_scale(norm.num, -1);
    negated = true;
  }
  const Expr a = to_expr(norm);
  if (a.is_zero()) {
    switch (f) {
      case Func::Exp:
      case Func::Cos:
      case Func::Cosh:
        return rf_const(1);
      case Func::Sin:
      case Func::Tan:
      case Func::Arctan:
      case Func::Sinh:
        return {};
      case Func::Log:
        throw Error(ErrorCode::Domain, "log(0)");
      case Func::Sqrt:
        break;
    }
  }
  if (f == Func::Log && a.is_one()) return {};
  const Poly atom = poly_atom(Expr::raw_apply(f, a));
  return RatFunc{negated && odd_function(f) ? poly_scale(atom, -1) : atom, {}};
}

// cos^2 -> 1 - sin^2, cosh^2 -> 1 + sinh^2.
Poly trig_reduce(const Poly& p) {
  std::vector<std::pair<Mono, Rational>> work(p.begin(), p.end());
  Poly out;
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    bool done = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Expr& atom = m[i].first;
      const auto* ap = std::get_if<Expr::Apply>(&atom.node());
      if (!ap || (ap->func != Func::Cos && ap->func != Func::Cosh) || m[i].second < 2) continue;
      Mono base = m;
      base[i].second -= 2;
      if (base[i].second == 0) base.erase(base.begin() + static_cast<long>(i));
      const Func partner = ap->func == Func::Cos ? Func::Sin : Func::Sinh;
      const Rational sign = ap->func == Func::Cos ? Rational(-1) : Rational(1);
      Mono with_sq = mono_mul(base, Mono{{Expr::raw_apply(partner, ap->arg), 2}});
      work.emplace_back(base, c);
      work.emplace_back(with_sq, c * sign);
      done = false;
      break;
    }
    if (done) add_term(out, m, c);
  }
  return out;
}

RatFunc trig_pass(const RatFunc& rf) {
  RatFunc out{trig_reduce(rf.num), {}};
  for (const auto& [f, k] : rf.den) {
    Poly reduced = trig_reduce(f);
    if (poly_compare(reduced, f) == 0) {
      out.den[f] += k;
    } else {
      out = rf_mul(out, rf_pow(rf_inverse(RatFunc{reduced, {}}), k));
    }
  }
  return out;
}

Expr mono_to_expr(const Mono& m, const Rational& c, std::vector<Expr>* flat) {
  std::vector<Expr> factors;
  if (c != 1 || m.empty()) factors.emplace_back(c);
  for (const auto& [atom, e] : m) {
    if (is_root_atom(atom)) {
      const auto& pw = std::get<Expr::Power>(atom.node());
      factors.push_back(Expr::raw_power(pw.base, pw.exponent * e));
    } else if (e == 1) {
      factors.push_back(atom);
    } else {
      factors.push_back(Expr::raw_power(atom, e));
    }
  }
  if (flat) {
    for (auto& f : factors) flat->push_back(f);
    return {};
  }
  if (factors.size() == 1) return factors.front();
  return Expr::raw_product(std::move(factors));
}

}  // namespace

int mono_compare(const Mono& a, const Mono& b) {
  int da = 0;
  int db = 0;
  for (const auto& t : a) da += t.second;
  for (const auto& t : b) db += t.second;
  if (da != db) return da < db ? -1 : 1;
  std::size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    const int c = compare(a[i].first, b[i].first);
    // An earlier atom present in only one monomial makes that monomial larger.
    if (c != 0) return c < 0 ? 1 : -1;
    if (a[i].second != b[i].second) return a[i].second < b[i].second ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int poly_compare(const Poly& a, const Poly& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    const int c = mono_compare(ia->first, ib->first);
    if (c != 0) return c;
    const int k = cmp(ia->second, ib->second);
    if (k != 0) return k < 0 ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

bool is_root_atom(const Expr& atom) {
  const auto* pw = std::get_if<Expr::Power>(&atom.node());
  return pw && pw->exponent.get_num() == 1 && pw->exponent.get_den() > 1;
}

namespace {

// Inverts products and integer powers factor by factor so that denominators
// keep their factored shape.
RatFunc inverse_structural(const Expr& e) {
  if (const auto* p = std::get_if<Expr::Product>(&e.node())) {
    RatFunc acc = rf_const(1);
    for (const auto& f : p->factors) acc = rf_mul(acc, inverse_structural(f));
    return acc;
  }
  if (const auto* pw = std::get_if<Expr::Power>(&e.node())) {
    if (pw->exponent.get_den() == 1) {
      const long k = pw->exponent.get_num().get_si();
      if (k > 0) return rf_pow(inverse_structural(pw->base), k);
      return rf_pow(from_expr(pw->base), -k);
    }
  }
  return rf_inverse(from_expr(e));
}

}  // namespace

RatFunc from_expr(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> RatFunc {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return rf_const(n.value);
        } else if constexpr (std::is_same_v<T, Expr::SymbolRef>) {
          return RatFunc{poly_atom(e), {}};
        } else if constexpr (std::is_same_v<T, Expr::Sum>) {
          RatFunc acc;
          for (const auto& t : n.terms) acc = rf_add(acc, from_expr(t));
          return acc;
        } else if constexpr (std::is_same_v<T, Expr::Product>) {
          RatFunc acc = rf_const(1);
          for (const auto& f : n.factors) {
            acc = rf_mul(acc, from_expr(f));
            if (acc.is_zero()) break;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, Expr::Power>) {
          if (n.exponent.get_den() == 1) {
            const long k = n.exponent.get_num().get_si();
            if (k < 0) return rf_pow(inverse_structural(n.base), -k);
            return rf_pow(from_expr(n.base), k);
          }
          return rational_power(n.base, n.exponent);
        } else {
          return apply_rf(n.func, n.arg);
        }
      },
      e.node());
}

Expr poly_to_expr(const Poly& p) {
  if (p.empty()) return Expr(0L);
  if (p.size() == 1) return mono_to_expr(p.begin()->first, p.begin()->second, nullptr);
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) terms.push_back(mono_to_expr(m, c, nullptr));
  return Expr::raw_sum(std::move(terms));
}

Expr to_expr(const RatFunc& rf) {
  if (rf.den.empty() || rf.num.empty()) return poly_to_expr(rf.num);
  std::vector<Expr> factors;
  if (rf.num.size() == 1) {
    const auto& [m, c] = *rf.num.begin();
    if (!(c == 1 && !m.empty())) factors.emplace_back(c);
    mono_to_expr(m, 1, &factors);
    if (c == 1 && m.empty()) factors.clear();
  } else {
    factors.push_back(poly_to_expr(rf.num));
  }
  for (const auto& [f, k] : rf.den) factors.push_back(Expr::raw_power(poly_to_expr(f), -k));
  if (factors.size() == 1) return factors.front();
  return Expr::raw_product(std::move(factors));
}

RatFunc normal_rf(const Expr& e) {
  RatFunc rf = cancel(from_expr(e));
  rf = trig_pass(rf);
  return cancel(std::move(rf));
}

}  // namespace liesym::detail
