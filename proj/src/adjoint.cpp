#include "liesym/adjoint.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

namespace liesym {

namespace {

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return out;
}

Eigen::MatrixXd ad_real(const LieAlgebra& g, const RealVector& x) {
  const auto n = static_cast<Eigen::Index>(g.dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < g.dim(); ++j)
      for (std::size_t k = 0; k < g.dim(); ++k) {
        const Rational& c = g.c(i, j, k);
        if (c != 0) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) += x[i] * c.get_d();
      }
  }
  return m;
}

// Taylor series on A / 2^s with ||A / 2^s||_1 <= 1/2, then s squarings.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd b = a / std::ldexp(1.0, s);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k < 60; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
    // Remaining tail is bounded by ||term|| since ||b|| <= 1/2.
    if (term.cwiseAbs().colwise().sum().maxCoeff() < 1e-17) break;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

// exp(-eps A) for nilpotent A: finite sum of (-eps)^k A^k / k!.
Eigen::MatrixXd nilpotent_exp(const RationalMatrix& a, double eps) {
  const std::size_t n = a.rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  RationalMatrix power = RationalMatrix::identity(n);
  double coeff = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * a;
    if (power.is_zero()) break;
    coeff *= -eps / static_cast<double>(k);
    sum += coeff * to_eigen(power);
  }
  return sum;
}

Eigen::MatrixXd exp_minus_ad(const LieAlgebra& g, std::size_t i, double eps, bool* exact) {
  const RationalMatrix a = ad_matrix(g, g.basis(i));
  const bool nil = is_nilpotent(a);
  if (exact) *exact = nil;
  if (nil) return nilpotent_exp(a, eps);
  return expm(-eps * to_eigen(a));
}

RealVector from_eigen(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const RealVector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> charpoly_real(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + c[static_cast<std::size_t>(k - 1)] * id;
    c[static_cast<std::size_t>(k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

}  // namespace

RealVector to_real(const Element& x) {
  RealVector out;
  for (const auto& q : x) out.push_back(q.get_d());
  return out;
}

bool is_nilpotent(const RationalMatrix& m) {
  RationalMatrix p = m;
  for (std::size_t k = 1; k < m.rows(); ++k) p = p * m;
  return m.rows() == 0 || p.is_zero();
}

RealVector adjoint_apply(const LieAlgebra& g, std::size_t i, double eps, const RealVector& y) {
  return from_eigen(exp_minus_ad(g, i, eps, nullptr) * to_eigen(y));
}

AdjointMatrix adjoint_matrix(const LieAlgebra& g, std::size_t i, double eps) {
  AdjointMatrix out;
  out.generator = i;
  out.epsilon = eps;
  const Eigen::MatrixXd e = exp_minus_ad(g, i, eps, &out.exact);
  const auto n = static_cast<Eigen::Index>(g.dim());
  for (Eigen::Index j = 0; j < n; ++j) {
    std::vector<double> row;
    for (Eigen::Index k = 0; k < n; ++k) row.push_back(e(k, j));
    out.values.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Expr>> adjoint_matrix_symbolic(const LieAlgebra& g, std::size_t i, const Symbol& eps) {
  const RationalMatrix a = ad_matrix(g, g.basis(i));
  if (!is_nilpotent(a)) {
    throw Error(ErrorCode::InvalidArgument, "ad(" + g.labels()[i] + ") is not nilpotent");
  }
  const std::size_t n = g.dim();
  std::vector<std::vector<Expr>> out(n, std::vector<Expr>(n));
  RationalMatrix power = RationalMatrix::identity(n);
  Expr coeff(1L);
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      power = power * a;
      coeff = coeff * (-Expr(eps)) / Expr(static_cast<long>(k));
    }
    if (power.is_zero()) break;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        if (power(l, j) != 0) out[j][l] = out[j][l] + Expr(power(l, j)) * coeff;
      }
  }
  return out;
}

ExactOrbitInvariants orbit_invariants(const LieAlgebra& g, const Element& x) {
  const RationalMatrix a = ad_matrix(g, x);
  return {(a * a).trace(), rank(a), characteristic_polynomial(a)};
}

OrbitInvariants orbit_invariants(const LieAlgebra& g, const RealVector& x) {
  const Eigen::MatrixXd a = ad_real(g, x);
  OrbitInvariants out;
  out.killing = (a * a).trace();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++out.ad_rank;
  out.charpoly = charpoly_real(a);
  return out;
}

double invariant_drift(const ExactOrbitInvariants& a, const OrbitInvariants& b) {
  if (a.ad_rank != b.ad_rank || a.charpoly.size() != b.charpoly.size())
    return std::numeric_limits<double>::infinity();
  double d = std::abs(a.killing.get_d() - b.killing);
  for (std::size_t k = 0; k < a.charpoly.size(); ++k)
    d = std::max(d, std::abs(a.charpoly[k].get_d() - b.charpoly[k]));
  return d;
}

RealVector simplify_by_adjoint(const LieAlgebra& g, const RealVector& x, const Schedule& schedule) {
  RealVector cur = x;
  for (const auto& [i, eps] : schedule) cur = adjoint_apply(g, i, eps, cur);
  return cur;
}

namespace {

std::pair<std::size_t, double> score(const RealVector& v, double zero_tol) {
  std::size_t nz = 0;
  double l1 = 0.0;
  for (double c : v) {
    if (std::abs(c) > zero_tol) ++nz;
    l1 += std::abs(c);
  }
  return {nz, l1};
}

}  // namespace

GreedyResult greedy_simplify(const LieAlgebra& g, const RealVector& x, const std::vector<double>& eps_grid,
                             std::size_t max_steps, double zero_tol) {
  GreedyResult out{{}, x, score(x, zero_tol).first};
  auto best = score(x, zero_tol);
  for (std::size_t step = 0; step < max_steps; ++step) {
    bool improved = false;
    std::pair<std::size_t, double> move{0, 0.0};
    RealVector next;
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (double eps : eps_grid) {
        const RealVector cand = adjoint_apply(g, i, eps, out.result);
        const auto s = score(cand, zero_tol);
        if (s.first < best.first || (s.first == best.first && s.second < best.second - 1e-12)) {
          best = s;
          move = {i, eps};
          next = cand;
          improved = true;
        }
      }
    if (!improved) break;
    out.schedule.push_back(move);
    out.result = next;
  }
  out.nonzeros = best.first;
  return out;
}

std::vector<VetRecord> vet_optimal_system(const LieAlgebra& g,
                                          const std::vector<std::pair<std::string, Element>>& elements,
                                          std::uint64_t seed, std::size_t compositions, double eps_max,
                                          std::size_t word_length) {
  std::mt19937_64 rng(seed);
  // Explicit conversions keep the stream identical across standard libraries.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<VetRecord> out;
  for (const auto& [label, x] : elements) {
    VetRecord rec{label, x, orbit_invariants(g, x), 0.0, compositions};
    const RealVector x0 = to_real(x);
    for (std::size_t c = 0; c < compositions; ++c) {
      Schedule word;
      for (std::size_t w = 0; w < word_length; ++w) {
        const auto i = static_cast<std::size_t>(rng() % g.dim());
        word.emplace_back(i, (2.0 * unit() - 1.0) * eps_max);
      }
      const RealVector y = simplify_by_adjoint(g, x0, word);
      rec.max_drift = std::max(rec.max_drift, invariant_drift(rec.invariants, orbit_invariants(g, y)));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace liesym
