#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cliffcoact/scalars.hpp"

namespace cliffcoact {

using Vec = std::vector<Scalar>;

/// Dense matrix of exact field elements, row-major.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        data_(rows * cols, Scalar::zero(field_)) {}

  static Matrix identity(const FieldPtr& field, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Scalar& s) const;
  bool operator==(const Matrix& other) const;
  bool operator!=(const Matrix& other) const { return !(*this == other); }

  Matrix transpose() const;
  Vec apply(const Vec& v) const;  // matrix * column vector
  bool is_zero() const;

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Reduced row echelon form with deterministic pivoting (first nonzero row
/// in column order). Exact; the result is canonical for the row space.
Echelon rref(const Matrix& m);

Scalar det(const Matrix& m);  // throws BadIndexError unless square

/// Canonical nullspace basis: one vector per free column, unit there.
std::vector<Vec> nullspace(const Matrix& m);

/// One solution of m x = rhs with free variables set to zero, if consistent.
std::optional<Vec> solve(const Matrix& m, const Vec& rhs);

std::optional<Matrix> inverse(const Matrix& m);

/// Incrementally maintained reduced echelon span of row vectors.
class SpanBuilder {
 public:
  SpanBuilder(FieldPtr field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  /// Adds v to the span; returns true when the dimension grew.
  bool add(Vec v);
  bool contains(Vec v) const;
  std::size_t dimension() const { return rows_.size(); }
  std::size_t ambient_dim() const { return dim_; }
  /// Rows sorted by pivot column; canonical for the subspace.
  std::vector<Vec> basis() const;

 private:
  void reduce(Vec& v) const;
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Vec> rows_;               // reduced echelon rows
  std::vector<std::size_t> pivots_;     // pivot column of each row
};

bool same_span(const SpanBuilder& a, const SpanBuilder& b);

}  // namespace cliffcoact
