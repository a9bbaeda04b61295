#include "cliffcoact/linalg.hpp"

#include <algorithm>

namespace cliffcoact {

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw BadIndexError("matrix shape mismatch in product");
  Matrix out(field_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Scalar& b = other.at(k, j);
        if (!b.is_zero()) out.at(i, j) += a * b;
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw BadIndexError("matrix shape mismatch in sum");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw BadIndexError("matrix shape mismatch in difference");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw BadIndexError("vector length mismatch in apply");
  Vec out(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
    }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Echelon rref(const Matrix& m) {
  Echelon e{m, {}, 0};
  Matrix& a = e.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a.at(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(row, j));
    Scalar inv = a.at(row, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a.at(r, col).is_zero()) continue;
      Scalar f = a.at(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a.at(r, j) -= f * a.at(row, j);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

Scalar det(const Matrix& m) {
  if (m.rows() != m.cols()) throw BadIndexError("determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar d = Scalar::one(m.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Scalar::zero(m.field());
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
      d = -d;
    }
    d *= a.at(col, col);
    Scalar inv = a.at(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      Scalar f = a.at(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
    }
  }
  return d;
}

std::vector<Vec> nullspace(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), Scalar::zero(m.field()));
    v[free] = Scalar::one(m.field());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      v[e.pivot_cols[r]] = -e.reduced.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& rhs) {
  if (rhs.size() != m.rows()) throw BadIndexError("rhs length mismatch in solve");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = rhs[i];
  }
  Echelon e = rref(aug);
  for (std::size_t c : e.pivot_cols)
    if (c == m.cols()) return std::nullopt;  // inconsistent
  Vec x(m.cols(), Scalar::zero(m.field()));
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
    x[e.pivot_cols[r]] = e.reduced.at(r, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw BadIndexError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Scalar::one(m.field());
  }
  Echelon e = rref(aug);
  if (e.rank < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  return inv;
}

void SpanBuilder::reduce(Vec& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = v[pivots_[r]];
    if (c.is_zero()) continue;
    Scalar f = c;  // rows are normalized to pivot 1
    for (std::size_t j = 0; j < dim_; ++j)
      if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
  }
}

bool SpanBuilder::add(Vec v) {
  if (v.size() != dim_) throw BadIndexError("vector length mismatch in span");
  reduce(v);
  std::size_t pivot = 0;
  while (pivot < dim_ && v[pivot].is_zero()) ++pivot;
  if (pivot == dim_) return false;
  Scalar inv = v[pivot].inverse();
  for (auto& x : v) x *= inv;
  // Back-eliminate the new pivot from existing rows to stay reduced.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar f = rows_[r][pivot];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!v[j].is_zero()) rows_[r][j] -= f * v[j];
  }
  // Keep rows ordered by pivot column.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, pivot);
  return true;
}

bool SpanBuilder::contains(Vec v) const {
  if (v.size() != dim_) throw BadIndexError("vector length mismatch in span");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<Vec> SpanBuilder::basis() const { return rows_; }

bool same_span(const SpanBuilder& a, const SpanBuilder& b) {
  if (a.dimension() != b.dimension() || a.ambient_dim() != b.ambient_dim()) return false;
  return a.basis() == b.basis();  // reduced echelon bases are canonical
}

}  // namespace cliffcoact
