#pragma once

#include <string>
#include <vector>

#include "ncmf/autos.hpp"
#include "ncmf/gbasis.hpp"
#include "ncmf/linalg.hpp"

namespace ncmf {

// F = (+)_i A(-a_i), listed by generator degrees a_i.
class FreeModule {
 public:
  FreeModule() = default;
  FreeModule(AlgebraPtr alg, std::vector<int> degrees) : alg_(std::move(alg)), degrees_(std::move(degrees)) {}

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t rank() const { return degrees_.size(); }
  int degree(std::size_t i) const { return degrees_[i]; }
  FreeModule shifted(int d) const;
  FreeModule over(AlgebraPtr other) const { return FreeModule(std::move(other), degrees_); }
  FreeModule direct_sum(const FreeModule& o) const;

  friend bool operator==(const FreeModule& a, const FreeModule& b) {
    return a.alg_ == b.alg_ && a.degrees_ == b.degrees_;
  }

 private:
  AlgebraPtr alg_;
  std::vector<int> degrees_;
};

// Homogeneous element of a free module: one entry per generator.
using ModElem = std::vector<NcPoly>;

// Map F -> G as a rank F x rank G matrix; e_i maps to sum_j entry(i,j) e_j, so
// evaluation is a row vector times the matrix.
class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(FreeModule source, FreeModule target, std::vector<NcPoly> entries);

  static GradedMatrix zero(FreeModule source, FreeModule target);
  static GradedMatrix identity(const FreeModule& m);
  static GradedMatrix from_rows(FreeModule source, FreeModule target, const std::vector<ModElem>& rows);

  const FreeModule& source() const { return src_; }
  const FreeModule& target() const { return tgt_; }
  const AlgebraPtr& algebra() const { return src_.algebra(); }
  std::size_t rows() const { return src_.rank(); }
  std::size_t cols() const { return tgt_.rank(); }
  const NcPoly& at(std::size_t i, std::size_t j) const { return entries_[i * tgt_.rank() + j]; }
  ModElem row(std::size_t i) const;

  bool is_zero() const;
  bool has_scalar_entry() const;
  GradedMatrix negated() const;
  GradedMatrix scaled(const Scalar& c) const;
  // Reinterprets the entries over another algebra on the same generators.
  GradedMatrix over(const AlgebraPtr& other) const;
  // Applies e entrywise and shifts both degree lists by shift.
  GradedMatrix map_entries(const GradedEndo& e, int shift) const;
  GradedMatrix with_modules(FreeModule source, FreeModule target) const;
  // Reorders source generators (rows) and target generators (columns).
  GradedMatrix permuted(const std::vector<std::size_t>& row_order, const std::vector<std::size_t>& col_order) const;

  std::string to_string() const;

  friend bool operator==(const GradedMatrix& a, const GradedMatrix& b);

 private:
  FreeModule src_, tgt_;
  std::vector<NcPoly> entries_;
};

// Module presented as coker(relations: R -> G).
struct ModulePresentation {
  GradedMatrix relations;

  const AlgebraPtr& algebra() const { return relations.algebra(); }
  const FreeModule& generators() const { return relations.target(); }
};

GradedMatrix compose(const GradedMatrix& first, const GradedMatrix& second);
GradedMatrix add(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix subtract(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix block_diagonal(const GradedMatrix& a, const GradedMatrix& b);
// [[a, b], [c, d]] with a: S1->T1, b: S1->T2, c: S2->T1, d: S2->T2.
GradedMatrix block_matrix(const GradedMatrix& a, const GradedMatrix& b, const GradedMatrix& c,
                          const GradedMatrix& d);

// m^tw: entries through sigma^{-1}, all degrees raised by d.
GradedMatrix twist_map(const GradedMatrix& m, const GradedEndo& sigma, int d);
// m^{tw^k} for any integer k.
GradedMatrix twist_power(const GradedMatrix& m, const GradedEndo& sigma, int d, int k);
// Left multiplication by f as a map G^tw -> G.
GradedMatrix lambda_f(const FreeModule& g, const NcPoly& f, int d);

// Degree-t slice of a free module: coordinates ordered by generator, then by
// the normal-word basis of A_{t - a_i}.
struct SliceLayout {
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;
};
SliceLayout slice_layout(const FreeModule& m, int t);
Vec slice_coordinates(const FreeModule& m, int t, const ModElem& v);
ModElem from_slice(const FreeModule& m, int t, const Vec& c);
// Degree-t slice of the map as a dense matrix (rows: source slice basis).
Matrix slice_matrix(const GradedMatrix& m, int t);
ModElem apply_row(const ModElem& v, const GradedMatrix& m);
ModElem left_multiply(const NcPoly& a, const ModElem& v, const QuotientAlgebra& alg);
int element_degree(const FreeModule& m, const ModElem& v);

// Minimal generators of ker m in internal degrees <= t_max, as the rows of a
// map K -> source. New generators in degree t are the reduced echelon basis of
// the slice kernel modulo the span of lower-degree syzygy multiples.
GradedMatrix kernel_degreewise(const GradedMatrix& m, int t_max);
bool is_injective_up_to(const GradedMatrix& m, int t_max);

// Degree-t part of the submodule of target(m) generated by the rows of m.
Echelon row_span_slice(const GradedMatrix& m, int t);
// Whether the rows of a and b generate the same submodule, checked degreewise.
bool same_row_span(const GradedMatrix& a, const GradedMatrix& b, int t_max);

// Subset of the given homogeneous elements minimally generating their span,
// visited by degree then original order; returns kept indices.
std::vector<std::size_t> minimal_generating_subset(const FreeModule& m, const std::vector<ModElem>& elems);

}  // namespace ncmf
