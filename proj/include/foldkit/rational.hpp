#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace foldkit {

using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q". Throws InputError on malformed text or q == 0.
Rational parse_rational(const std::string& text);

/// Dense matrix over the rationals. Row-major, value semantics.
class QMatrix {
public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  Rational trace() const;
  QMatrix transpose() const;

  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Rational& s, const QMatrix& a);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by exact Gaussian elimination.
std::size_t rank(const QMatrix& m);

/// Inverse of a square matrix; throws InputError when singular.
QMatrix inverse(const QMatrix& m);

/// Determinant by exact elimination.
Rational determinant(const QMatrix& m);

/// Basis of the right kernel {x : m x = 0}, one column per basis vector,
/// in reduced form (free variables set to unit vectors).
std::vector<std::vector<Rational>> kernel(const QMatrix& m);

/// Reduced row echelon basis of the column space, returned as columns of a matrix
/// with `m.rows()` rows. Used to track subspaces exactly.
QMatrix column_space(const QMatrix& m);

/// Horizontal concatenation; all blocks must share a row count.
QMatrix hconcat(const std::vector<QMatrix>& blocks, std::size_t rows);

} // namespace foldkit
