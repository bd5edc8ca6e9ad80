#include "liesym/liealg.hpp"

#include <algorithm>
#include <functional>

namespace liesym {

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<Rational> constants)
    : labels_(std::move(labels)), c_(std::move(constants)) {
  const std::size_t n = dim();
  if (c_.size() != n * n * n) throw Error(ErrorCode::InvalidArgument, "structure constant array has wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (c(i, j, k) != -c(j, i, k)) {
          throw Error(ErrorCode::InvalidArgument,
                      "structure constants are not antisymmetric at [" + labels_[i] + ", " + labels_[j] + "]");
        }
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Rational s = 0;
          for (std::size_t m = 0; m < n; ++m) {
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          }
          if (s != 0) {
            throw Error(ErrorCode::InvalidArgument, "Jacobi identity fails for (" + labels_[i] + ", " +
                                                        labels_[j] + ", " + labels_[k] + ")");
          }
        }
}

Element LieAlgebra::basis(std::size_t i) const {
  Element e(dim());
  e[i] = 1;
  return e;
}

Element LieAlgebra::bracket(const Element& x, const Element& y) const {
  const std::size_t n = dim();
  Element out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      const Rational f = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) out[k] += f * c(i, j, k);
    }
  }
  return out;
}

namespace {

Expr apply_field(const VectorField& v, const Expr& f) {
  return v.xi1 * differentiate(f, x_symbol()) + v.xi2 * differentiate(f, t_symbol()) +
         v.eta * differentiate(f, u_symbol());
}

}  // namespace

VectorField bracket(const VectorField& v, const VectorField& w) {
  VectorField out;
  for (int a = 0; a < 3; ++a) out.component(a) = apply_field(v, w.component(a)) - apply_field(w, v.component(a));
  return out;
}

LieAlgebra structure_constants(const std::vector<VectorField>& basis, const std::vector<std::string>& labels) {
  const std::size_t n = basis.size();
  if (labels.size() != n) throw Error(ErrorCode::InvalidArgument, "one label per basis field expected");
  // Brackets of polynomial fields stay within twice the maximal degree.
  int degree = 0;
  for (const auto& v : basis) {
    for (int a = 0; a < 3; ++a) {
      for (const auto& [mono, c] : poly_coeffs(v.component(a), {x_symbol(), t_symbol(), u_symbol()}))
        degree = std::max(degree, mono[0] + mono[1] + mono[2]);
    }
  }
  degree = std::max(1, 2 * degree);
  RationalMatrix cols(0, 0);
  for (const auto& v : basis) cols.append_row(field_coordinates(v, degree));
  const RationalMatrix a = cols.transpose();
  if (rank(a) != n) throw Error(ErrorCode::InvalidArgument, "basis fields are linearly dependent");

  std::vector<Rational> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorField br = bracket(basis[i], basis[j]);
      if (br.is_zero()) continue;
      const auto sol = solve(a, field_coordinates(br, degree));
      if (!sol) {
        throw Error(ErrorCode::NotClosed,
                    "[" + labels[i] + ", " + labels[j] + "] = " + to_string(br) + " is not in the span");
      }
      for (std::size_t k = 0; k < n; ++k) {
        c[(i * n + j) * n + k] = (*sol)[k];
        c[(j * n + i) * n + k] = -(*sol)[k];
      }
    }
  return LieAlgebra(labels, std::move(c));
}

std::string element_to_string(const LieAlgebra& g, const Element& x) {
  std::string out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (x[i] == 0) continue;
    const Rational a = abs(x[i]);
    std::string term = a == 1 ? g.labels()[i] : a.get_str() + "*" + g.labels()[i];
    if (out.empty()) {
      out = x[i] < 0 ? "-" + term : term;
    } else {
      out += x[i] < 0 ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

bool Subspace::contains(const Element& x) const {
  RationalMatrix m = basis;
  if (m.rows() == 0) m = RationalMatrix(0, x.size());
  m.append_row(x);
  return rank(m) == dim();
}

Subspace span(std::size_t n, const std::vector<Element>& vectors) {
  RationalMatrix m(0, n);
  for (const auto& v : vectors) m.append_row(v);
  return {row_space(m)};
}

Subspace coordinate_span(std::size_t n, const std::vector<std::size_t>& indices) {
  std::vector<Element> vs;
  for (auto i : indices) {
    Element e(n);
    e[i] = 1;
    vs.push_back(e);
  }
  return span(n, vs);
}

Subspace whole(const LieAlgebra& g) { return {RationalMatrix::identity(g.dim())}; }

namespace {

std::vector<Element> rows_of(const Subspace& s) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < s.basis.rows(); ++i) out.push_back(s.basis.row(i));
  return out;
}

}  // namespace

Subspace sum(const Subspace& a, const Subspace& b) {
  auto vs = rows_of(a);
  for (auto& v : rows_of(b)) vs.push_back(v);
  return span(std::max(a.basis.cols(), b.basis.cols()), vs);
}

std::vector<std::string> describe(const LieAlgebra& g, const Subspace& s) {
  std::vector<std::string> out;
  for (const auto& r : rows_of(s)) out.push_back(element_to_string(g, r));
  return out;
}

Subspace commutator(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<Element> vs;
  for (const auto& x : rows_of(a))
    for (const auto& y : rows_of(b)) vs.push_back(g.bracket(x, y));
  return span(g.dim(), vs);
}

bool is_subalgebra(const LieAlgebra& g, const Subspace& s) {
  for (const auto& v : rows_of(commutator(g, s, s)))
    if (!s.contains(v)) return false;
  return true;
}

bool is_ideal(const LieAlgebra& g, const Subspace& s) {
  for (const auto& v : rows_of(commutator(g, whole(g), s)))
    if (!s.contains(v)) return false;
  return true;
}

RationalMatrix ad_matrix(const LieAlgebra& g, const Element& x) {
  const std::size_t n = g.dim();
  RationalMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Element col = g.bracket(x, g.basis(j));
    for (std::size_t k = 0; k < n; ++k) m(k, j) = col[k];
  }
  return m;
}

Rational killing(const LieAlgebra& g, const Element& x, const Element& y) {
  return (ad_matrix(g, x) * ad_matrix(g, y)).trace();
}

RationalMatrix killing_form(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  std::vector<RationalMatrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(ad_matrix(g, g.basis(i)));
  RationalMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = (ads[i] * ads[j]).trace();
      k(j, i) = k(i, j);
    }
  return k;
}

RationalMatrix restricted_killing_form(const LieAlgebra& g, const Subspace& s) {
  const auto rows = rows_of(s);
  RationalMatrix k(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) k(i, j) = killing(g, rows[i], rows[j]);
  return k;
}

std::vector<Subspace> derived_series(const LieAlgebra& g, const Subspace& s) {
  std::vector<Subspace> out{s};
  while (true) {
    Subspace next = commutator(g, out.back(), out.back());
    if (next == out.back()) break;
    out.push_back(next);
    if (next.dim() == 0) break;
  }
  return out;
}

std::vector<Subspace> derived_series(const LieAlgebra& g) { return derived_series(g, whole(g)); }

std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  std::vector<Subspace> out{whole(g)};
  while (true) {
    Subspace next = commutator(g, whole(g), out.back());
    if (next == out.back()) break;
    out.push_back(next);
    if (next.dim() == 0) break;
  }
  return out;
}

Subspace generator_bracket_span(const LieAlgebra& g) {
  std::vector<Element> vs;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    vs.push_back(g.basis(i));
    for (std::size_t j = 0; j < g.dim(); ++j) vs.push_back(g.bracket(g.basis(i), g.basis(j)));
  }
  return span(g.dim(), vs);
}

bool is_solvable(const LieAlgebra& g, const Subspace& s) { return derived_series(g, s).back().dim() == 0; }
bool is_solvable(const LieAlgebra& g) { return is_solvable(g, whole(g)); }

Subspace radical(const LieAlgebra& g) {
  const Subspace d = commutator(g, whole(g), whole(g));
  const RationalMatrix k = killing_form(g);
  // x ⟂ d  <=>  (D K) x = 0
  const RationalMatrix constraints = d.dim() ? d.basis * k : RationalMatrix(0, g.dim());
  Subspace r{constraints.rows() ? nullspace(constraints) : RationalMatrix::identity(g.dim())};
  if (!is_ideal(g, r) || !is_solvable(g, r)) {
    throw Error(ErrorCode::SelfCheck, "Killing complement of the derived algebra is not a solvable ideal");
  }
  return r;
}

bool is_semisimple(const LieAlgebra& g) { return radical(g).dim() == 0; }

Subspace levi_complement(const LieAlgebra& g, const Subspace& r) {
  const std::size_t n = g.dim();
  const std::size_t m = n - r.dim();
  if (m == 0) return {RationalMatrix(0, n)};
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
  // prev_permutation on a true-first mask visits subsets in lexicographic order.
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) idx.push_back(i);
    const Subspace s = coordinate_span(n, idx);
    if (sum(s, r).dim() == n && is_subalgebra(g, s)) return s;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  throw Error(ErrorCode::NoComplement, "no coordinate subalgebra complements the radical");
}

std::vector<std::size_t> quotient_representatives(const LieAlgebra& g, const Subspace& ideal) {
  std::vector<bool> pivot(g.dim(), false);
  if (ideal.dim()) {
    for (auto p : rref(ideal.basis).pivots) pivot[p] = true;
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (!pivot[i]) reps.push_back(i);
  return reps;
}

LieAlgebra quotient(const LieAlgebra& g, const Subspace& ideal) {
  if (!is_ideal(g, ideal)) throw Error(ErrorCode::NotIdeal, "subspace is not an ideal");
  const auto reps = quotient_representatives(g, ideal);
  const Rref red = ideal.dim() ? rref(ideal.basis) : Rref{RationalMatrix(0, g.dim()), {}};
  const std::size_t m = reps.size();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back("w" + std::to_string(i + 1));
  std::vector<Rational> c(m * m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Element z = g.bracket(g.basis(reps[a]), g.basis(reps[b]));
      for (std::size_t i = 0; i < red.pivots.size(); ++i) {
        const Rational f = z[red.pivots[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < g.dim(); ++j) z[j] -= f * red.matrix(i, j);
      }
      for (std::size_t k = 0; k < m; ++k) c[(a * m + b) * m + k] = z[reps[k]];
    }
  return LieAlgebra(labels, std::move(c));
}

Subspace centralizer(const LieAlgebra& g, const Subspace& s, const Subspace& within) {
  const auto ws = rows_of(within);
  const auto ss = rows_of(s);
  if (ws.empty()) return {RationalMatrix(0, g.dim())};
  // x = sum lambda_i w_i; constraints [w_i, s_k] lambda = 0.
  RationalMatrix a(0, ws.size());
  for (const auto& sk : ss) {
    std::vector<Element> cols;
    for (const auto& w : ws) cols.push_back(g.bracket(w, sk));
    for (std::size_t r = 0; r < g.dim(); ++r) {
      Element row(ws.size());
      for (std::size_t i = 0; i < ws.size(); ++i) row[i] = cols[i][r];
      a.append_row(row);
    }
  }
  if (a.rows() == 0) return within;
  const RationalMatrix ker = nullspace(a);
  std::vector<Element> vs;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    Element x(g.dim());
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) x[j] += ker(r, i) * ws[i][j];
    vs.push_back(x);
  }
  return span(g.dim(), vs);
}

Subspace centralizer(const LieAlgebra& g, const Subspace& s) { return centralizer(g, s, whole(g)); }

LieAlgebra subalgebra(const LieAlgebra& g, const Subspace& s, std::vector<std::string> labels) {
  const auto rows = rows_of(s);
  const std::size_t m = rows.size();
  if (labels.size() != m) throw Error(ErrorCode::InvalidArgument, "one label per subspace basis vector expected");
  const RationalMatrix a = s.basis.transpose();
  std::vector<Rational> c(m * m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto sol = solve(a, g.bracket(rows[i], rows[j]));
      if (!sol) throw Error(ErrorCode::NotClosed, "[" + labels[i] + ", " + labels[j] + "] leaves the subspace");
      for (std::size_t k = 0; k < m; ++k) c[(i * m + j) * m + k] = (*sol)[k];
    }
  return LieAlgebra(std::move(labels), std::move(c));
}

Subspace minimal_ideal_containing(const LieAlgebra& g, const Subspace& s) {
  Subspace cur = s;
  while (true) {
    Subspace next = sum(cur, commutator(g, whole(g), cur));
    if (next == cur) return cur;
    cur = next;
  }
}

}  // namespace liesym
