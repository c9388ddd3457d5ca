#include "ncmf/linalg.hpp"

#include <cstdint>

#include "ncmf/error.hpp"

namespace ncmf {

namespace {

struct ModOps {
  std::uint32_t p;
  using T = std::uint32_t;
  bool zero(T a) const { return a == 0; }
  T inv(T a) const {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<T>(r);
  }
  void scale(std::vector<T>& row, T c, std::size_t from) const {
    for (std::size_t j = from; j < row.size(); ++j) row[j] = static_cast<T>(std::uint64_t(row[j]) * c % p);
  }
  // row -= c * src
  void axpy(std::vector<T>& row, const std::vector<T>& src, T c, std::size_t from) const {
    std::uint64_t neg = p - c;
    for (std::size_t j = from; j < row.size(); ++j)
      if (src[j]) row[j] = static_cast<T>((row[j] + neg * src[j]) % p);
  }
  T from(const Scalar& s) const { return s.residue_value(); }
  Scalar to(T a) const { return Scalar::residue(a); }
};

struct RatOps {
  using T = mpq_class;
  bool zero(const T& a) const { return sgn(a) == 0; }
  T inv(const T& a) const { return 1 / a; }
  void scale(std::vector<T>& row, const T& c, std::size_t from) const {
    for (std::size_t j = from; j < row.size(); ++j)
      if (sgn(row[j])) row[j] *= c;
  }
  void axpy(std::vector<T>& row, const std::vector<T>& src, const T& c, std::size_t from) const {
    for (std::size_t j = from; j < row.size(); ++j)
      if (sgn(src[j])) row[j] -= c * src[j];
  }
  T from(const Scalar& s) const { return s.as_rational(); }
  Scalar to(const T& a) const { return Scalar::rational(a); }
};

template <class Ops>
std::vector<std::size_t> eliminate(std::vector<std::vector<typename Ops::T>>& rows, std::size_t cols,
                                   const Ops& ops) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && ops.zero(rows[sel][c])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    ops.scale(rows[r], ops.inv(rows[r][c]), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || ops.zero(rows[i][c])) continue;
      auto f = rows[i][c];
      ops.axpy(rows[i], rows[r], f, c);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

template <class Ops>
Echelon rref_impl(const Ops& ops, std::size_t cols, const std::vector<Vec>& in) {
  std::vector<std::vector<typename Ops::T>> rows;
  rows.reserve(in.size());
  for (const auto& v : in) {
    std::vector<typename Ops::T> row(cols);
    bool nz = false;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = ops.from(v[j]);
      if (!ops.zero(row[j])) nz = true;
    }
    if (nz) rows.push_back(std::move(row));
  }
  Echelon e;
  e.pivots = eliminate(rows, cols, ops);
  for (auto& row : rows) {
    Vec out(cols);
    for (std::size_t j = 0; j < cols; ++j) out[j] = ops.to(row[j]);
    e.rows.push_back(std::move(out));
  }
  return e;
}

}  // namespace

Matrix::Matrix(Field k, std::size_t cols, const std::vector<Vec>& rows)
    : k_(k), rows_(rows.size()), cols_(cols), data_() {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
}

Matrix Matrix::transposed() const {
  Matrix t(k_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Echelon rref_rows(const Field& k, std::size_t cols, const std::vector<Vec>& rows) {
  if (k.is_prime()) return rref_impl(ModOps{k.characteristic()}, cols, rows);
  return rref_impl(RatOps{}, cols, rows);
}

Echelon rref(const Matrix& m) {
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rref_rows(m.field(), m.cols(), rows);
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> right_kernel(const Matrix& m) {
  const Field& k = m.field();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), k.zero());
    v[f] = k.one();
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = k.neg(e.rows[i][f]);
    basis.push_back(std::move(v));
  }
  return rref_rows(k, m.cols(), basis).rows;
}

std::vector<Vec> left_kernel(const Matrix& m) { return right_kernel(m.transposed()); }

std::optional<Vec> solve_left(const Matrix& m, const Vec& b) {
  const Field& k = m.field();
  if (b.size() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "solve_left: length mismatch");
  // Columns of [m^T | b]: one row per column of m.
  std::vector<Vec> rows;
  rows.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Vec r(m.rows() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) r[i] = m.at(i, j);
    r[m.rows()] = b[j];
    rows.push_back(std::move(r));
  }
  Echelon e = rref_rows(k, m.rows() + 1, rows);
  Vec v(m.rows(), k.zero());
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == m.rows()) return std::nullopt;
    v[e.pivots[i]] = e.rows[i][m.rows()];
  }
  return v;
}

Vec reduce_against(const Field& k, const Echelon& basis, Vec v) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    const Scalar c = v[basis.pivots[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!basis.rows[i][j].is_zero()) v[j] = k.sub(v[j], k.mul(c, basis.rows[i][j]));
  }
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

}  // namespace ncmf

namespace ncmf {

Vec SpanBuilder::reduce(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v[pivots_[i]];
    if (c.is_zero()) continue;
    const Vec& r = rows_[i];
    for (std::size_t j = 0; j < dim_; ++j)
      if (!r[j].is_zero()) v[j] = k_.sub(v[j], k_.mul(c, r[j]));
  }
  return v;
}

bool SpanBuilder::contains(Vec v) const { return is_zero_vec(reduce(std::move(v))); }

bool SpanBuilder::add(Vec v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  Scalar inv = k_.inv(v[p]);
  for (auto& s : v)
    if (!s.is_zero()) s = k_.mul(s, inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

}  // namespace ncmf
