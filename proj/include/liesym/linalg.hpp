#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Dense exact matrix over Q, row major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const;
  void append_row(const std::vector<Rational>& row);
  RationalMatrix transpose() const;
  bool is_zero() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

  Rational trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Rref {
  RationalMatrix matrix;  // zero rows removed
  std::vector<std::size_t> pivots;
};

Rref rref(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Basis of {v : m v = 0}, returned as the rows of an RREF matrix.
RationalMatrix nullspace(const RationalMatrix& m);

/// Canonical basis (RREF rows) of the row space.
RationalMatrix row_space(const RationalMatrix& m);

/// Solves a x = b; nullopt when inconsistent. Free variables are set to 0.
std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b);

std::vector<Rational> mat_vec(const RationalMatrix& a, const std::vector<Rational>& v);

/// Characteristic polynomial det(lambda I - m) coefficients, highest degree
/// first (leading 1), via Faddeev-LeVerrier.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);

std::string to_string(const RationalMatrix& m);

}  // namespace liesym
