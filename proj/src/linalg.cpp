#include "modinv/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace modinv {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool Matrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw UsageError("matrix product dimension mismatch");
  const Field& k = *a.field_;
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Elem c = a.at(i, l);
      if (c == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b.at(l, j) != 0) out.at(i, j) = k.add(out.at(i, j), k.mul(c, b.at(l, j)));
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix sum dimension mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_->add(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix difference dimension mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_->sub(a.data_[i], b.data_[i]);
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << field_->format(at(r, c));
    os << "]";
  }
  os << "]";
  return os.str();
}

void axpy_sub(const Field& k, std::vector<Elem>& v, Elem c, const std::vector<Elem>& r, std::size_t from) {
  if (c == 0) return;
  const std::size_t n = std::min(v.size(), r.size());
  if (k.has_tables()) {
    const std::size_t q = k.order();
    const Elem* add = k.add_table();
    const Elem* mrow = k.mul_table() + std::size_t{k.neg(c)} * q;
    for (std::size_t i = from; i < n; ++i)
      if (r[i] != 0) v[i] = add[std::size_t{v[i]} * q + mrow[r[i]]];
    return;
  }
  const Elem nc = k.neg(c);
  for (std::size_t i = from; i < n; ++i)
    if (r[i] != 0) v[i] = k.add(v[i], k.mul(nc, r[i]));
}

void scale(const Field& k, std::vector<Elem>& v, Elem c) {
  for (auto& e : v)
    if (e != 0) e = k.mul(e, c);
}

std::vector<std::size_t> rref(Matrix& m) {
  const Field& k = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    const Elem inv = k.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = k.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Elem f = k.neg(m.at(i, c));
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m.at(r, j) != 0) m.at(i, j) = k.add(m.at(i, j), k.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

Matrix kernel(const Matrix& m) {
  Matrix a = m;
  const auto pivots = rref(a);
  const Field& k = *m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix out(m.field(), m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    out.at(free[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) out.at(pivots[r], f) = k.neg(a.at(r, free[f]));
  }
  return out;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw UsageError("matrix is singular");
  Matrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

Matrix matrix_power(const Matrix& m, std::uint64_t e) {
  Matrix result = Matrix::identity(m.field(), m.rows()), base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

// ---------------------------------------------------------------------------

EchelonSpace::EchelonSpace(FieldPtr field, std::size_t cols)
    : field_(std::move(field)), cols_(cols), row_at_(cols, -1) {}

std::size_t EchelonSpace::reduce(std::vector<Elem>& v) const {
  const Field& k = *field_;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] == 0) continue;
    const auto r = row_at_[c];
    if (r < 0) return c;
    axpy_sub(k, v, v[c], rows_[static_cast<std::size_t>(r)], c);
  }
  return cols_;
}

bool EchelonSpace::insert(std::vector<Elem> v) {
  const std::size_t piv = reduce(v);
  if (piv == cols_) return false;
  scale(*field_, v, field_->inv(v[piv]));
  row_at_[piv] = static_cast<std::ptrdiff_t>(rows_.size());
  rows_.push_back(std::move(v));
  pivot_of_.push_back(piv);
  return true;
}

std::vector<std::size_t> EchelonSpace::pivots() const {
  std::vector<std::size_t> out = pivot_of_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Elem>> EchelonSpace::reduced_basis() const {
  const auto piv = pivots();
  std::vector<std::vector<Elem>> out;
  out.reserve(piv.size());
  for (auto p : piv) out.push_back(rows_[static_cast<std::size_t>(row_at_[p])]);
  // back substitution: clear every pivot column from the other rows
  const Field& k = *field_;
  for (std::size_t i = out.size(); i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      const Elem c = out[j][piv[i]];
      if (c != 0) axpy_sub(k, out[j], c, out[i], piv[i]);
    }
  }
  return out;
}

}  // namespace modinv
