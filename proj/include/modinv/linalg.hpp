#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modinv/gf.hpp"

namespace modinv {

/// Dense matrix over a finite field, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  static Matrix identity(FieldPtr field, std::size_t n);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Elem* row(std::size_t r) noexcept { return data_.data() + r * cols_; }
  const Elem* row(std::size_t r) const noexcept { return data_.data() + r * cols_; }
  const std::vector<Elem>& data() const noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;
  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) noexcept { return a.data_ < b.data_; }

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
/// Basis of {v : m v = 0}, one vector per free column, as columns of the result.
Matrix kernel(const Matrix& m);
/// Throws UsageError when singular.
Matrix inverse(const Matrix& m);
Matrix matrix_power(const Matrix& m, std::uint64_t e);

/// Incrementally built row space with rows kept in echelon form. Column 0 is
/// the "largest" coordinate: the pivot of a row is its first nonzero column.
class EchelonSpace {
 public:
  EchelonSpace(FieldPtr field, std::size_t cols);

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Reduces v against the stored rows (in place); returns the pivot of the
  /// remainder, or cols() when it reduced to zero.
  std::size_t reduce(std::vector<Elem>& v) const;
  bool contains(std::vector<Elem> v) const { return reduce(v) == cols_; }
  /// Adds v (after reduction, scaled monic); returns false if dependent.
  bool insert(std::vector<Elem> v);

  /// Fully reduced, monic basis sorted by pivot ascending.
  std::vector<std::vector<Elem>> reduced_basis() const;
  std::vector<std::size_t> pivots() const;

 private:
  FieldPtr field_;
  std::size_t cols_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> pivot_of_;   // per stored row
  std::vector<std::ptrdiff_t> row_at_;  // per column: stored row index or -1
};

/// v -= c * r over the field, restricted to indices [from, size).
void axpy_sub(const Field& k, std::vector<Elem>& v, Elem c, const std::vector<Elem>& r, std::size_t from = 0);
void scale(const Field& k, std::vector<Elem>& v, Elem c);

}  // namespace modinv
