#pragma once

#include <optional>
#include <vector>

#include "ncmf/field.hpp"

namespace ncmf {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix(Field k, std::size_t rows, std::size_t cols)
      : k_(k), rows_(rows), cols_(cols), data_(rows * cols, k.zero()) {}
  Matrix(Field k, std::size_t cols, const std::vector<Vec>& rows);

  const Field& field() const { return k_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Vec row(std::size_t r) const;
  Matrix transposed() const;

 private:
  Field k_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

struct Echelon {
  std::vector<Vec> rows;              // reduced row echelon form, nonzero rows only
  std::vector<std::size_t> pivots;    // pivot column of each row
};

// Reduced row echelon form of the row space. Pivots are monic.
Echelon rref(const Matrix& m);
Echelon rref_rows(const Field& k, std::size_t cols, const std::vector<Vec>& rows);
std::size_t rank(const Matrix& m);

// Canonical (reduced echelon) basis of {v : m v = 0}, vectors of length cols.
std::vector<Vec> right_kernel(const Matrix& m);
// Canonical basis of {v : v m = 0}, vectors of length rows.
std::vector<Vec> left_kernel(const Matrix& m);

// Some v with v m = b, or nullopt.
std::optional<Vec> solve_left(const Matrix& m, const Vec& b);

// Reduces v against an echelon basis (clears its pivot columns).
Vec reduce_against(const Field& k, const Echelon& basis, Vec v);

bool is_zero_vec(const Vec& v);

// Incrementally grown span with a semi-echelon basis.
class SpanBuilder {
 public:
  SpanBuilder(Field k, std::size_t dim) : k_(k), dim_(dim) {}
  // Adds v; returns false if v was already in the span.
  bool add(Vec v);
  bool contains(Vec v) const;
  Vec reduce(Vec v) const;
  std::size_t size() const { return rows_.size(); }

 private:
  Field k_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace ncmf
