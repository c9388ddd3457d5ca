#include "ncmf/gradedmod.hpp"

#include <algorithm>
#include <numeric>

#include "ncmf/error.hpp"

namespace ncmf {

namespace {

void check_compatible(const FreeModule& a, const FreeModule& b, const char* what) {
  if (a.algebra() != b.algebra() || a.degrees() != b.degrees())
    throw Error(ErrorKind::ShapeMismatch, what);
}

std::string degrees_str(const std::vector<int>& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "}";
}

}  // namespace

FreeModule FreeModule::shifted(int d) const {
  std::vector<int> out = degrees_;
  for (auto& x : out) x += d;
  return FreeModule(alg_, std::move(out));
}

FreeModule FreeModule::direct_sum(const FreeModule& o) const {
  if (alg_ != o.alg_) throw Error(ErrorKind::ContextMismatch, "direct sum over different algebras");
  std::vector<int> out = degrees_;
  out.insert(out.end(), o.degrees_.begin(), o.degrees_.end());
  return FreeModule(alg_, std::move(out));
}

GradedMatrix::GradedMatrix(FreeModule source, FreeModule target, std::vector<NcPoly> entries)
    : src_(std::move(source)), tgt_(std::move(target)) {
  if (!src_.algebra() || src_.algebra() != tgt_.algebra())
    throw Error(ErrorKind::ContextMismatch, "source and target over different algebras");
  if (entries.size() != src_.rank() * tgt_.rank())
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(src_.rank()) + "x" +
                                              std::to_string(tgt_.rank()) + " entries");
  const QuotientAlgebra& a = *src_.algebra();
  entries_.reserve(entries.size());
  for (std::size_t i = 0; i < src_.rank(); ++i)
    for (std::size_t j = 0; j < tgt_.rank(); ++j) {
      NcPoly e = a.normal_form(entries[i * tgt_.rank() + j]);
      int want = src_.degree(i) - tgt_.degree(j);
      if (!e.is_zero() && e.homogeneous_degree() != want)
        throw Error(ErrorKind::InhomogeneousEntry, "entry (" + std::to_string(i + 1) + "," +
                                                       std::to_string(j + 1) + ") = " + e.to_string() +
                                                       " should have degree " + std::to_string(want));
      entries_.push_back(std::move(e));
    }
}

GradedMatrix GradedMatrix::zero(FreeModule source, FreeModule target) {
  std::vector<NcPoly> e(source.rank() * target.rank(), NcPoly(source.algebra()->ring()));
  return GradedMatrix(std::move(source), std::move(target), std::move(e));
}

GradedMatrix GradedMatrix::identity(const FreeModule& m) {
  const RingPtr& r = m.algebra()->ring();
  std::vector<NcPoly> e(m.rank() * m.rank(), NcPoly(r));
  for (std::size_t i = 0; i < m.rank(); ++i) e[i * m.rank() + i] = NcPoly::from_int(r, 1);
  return GradedMatrix(m, m, std::move(e));
}

GradedMatrix GradedMatrix::from_rows(FreeModule source, FreeModule target, const std::vector<ModElem>& rows) {
  std::vector<NcPoly> e;
  for (const auto& r : rows) {
    if (r.size() != target.rank()) throw Error(ErrorKind::ShapeMismatch, "row length differs from target rank");
    e.insert(e.end(), r.begin(), r.end());
  }
  return GradedMatrix(std::move(source), std::move(target), std::move(e));
}

ModElem GradedMatrix::row(std::size_t i) const {
  return ModElem(entries_.begin() + static_cast<long>(i * cols()),
                 entries_.begin() + static_cast<long>((i + 1) * cols()));
}

bool GradedMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const NcPoly& p) { return p.is_zero(); });
}

bool GradedMatrix::has_scalar_entry() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const NcPoly& p) { return !p.is_zero() && p.max_degree() == 0; });
}

GradedMatrix GradedMatrix::negated() const {
  std::vector<NcPoly> e;
  for (const auto& p : entries_) e.push_back(-p);
  return GradedMatrix(src_, tgt_, std::move(e));
}

GradedMatrix GradedMatrix::scaled(const Scalar& c) const {
  std::vector<NcPoly> e;
  for (const auto& p : entries_) e.push_back(p.scaled(c));
  return GradedMatrix(src_, tgt_, std::move(e));
}

GradedMatrix GradedMatrix::over(const AlgebraPtr& other) const {
  check_same_ring(algebra()->ring(), other->ring());
  std::vector<NcPoly> e;
  for (const auto& p : entries_) e.push_back(NcPoly::from_terms(other->ring(), p.terms()));
  return GradedMatrix(src_.over(other), tgt_.over(other), std::move(e));
}

GradedMatrix GradedMatrix::map_entries(const GradedEndo& e, int shift) const {
  std::vector<NcPoly> out;
  for (const auto& p : entries_) out.push_back(e.apply(p));
  return GradedMatrix(src_.shifted(shift), tgt_.shifted(shift), std::move(out));
}

GradedMatrix GradedMatrix::with_modules(FreeModule source, FreeModule target) const {
  return GradedMatrix(std::move(source), std::move(target), entries_);
}

GradedMatrix GradedMatrix::permuted(const std::vector<std::size_t>& row_order,
                                    const std::vector<std::size_t>& col_order) const {
  std::vector<int> sd, td;
  for (auto i : row_order) sd.push_back(src_.degree(i));
  for (auto j : col_order) td.push_back(tgt_.degree(j));
  std::vector<NcPoly> e;
  for (auto i : row_order)
    for (auto j : col_order) e.push_back(at(i, j));
  return GradedMatrix(FreeModule(algebra(), sd), FreeModule(algebra(), td), std::move(e));
}

std::string GradedMatrix::to_string() const {
  std::string s = degrees_str(src_.degrees()) + " -> " + degrees_str(tgt_.degrees()) + " [";
  for (std::size_t i = 0; i < rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < cols(); ++j) s += (j ? ", " : "") + at(i, j).to_string();
  }
  return s + "]";
}

bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
  return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.entries_ == b.entries_;
}

GradedMatrix compose(const GradedMatrix& first, const GradedMatrix& second) {
  check_compatible(first.target(), second.source(), "compose: target of first differs from source of second");
  const QuotientAlgebra& a = *first.algebra();
  std::vector<NcPoly> e;
  for (std::size_t i = 0; i < first.rows(); ++i)
    for (std::size_t k = 0; k < second.cols(); ++k) {
      NcPoly acc(a.ring());
      for (std::size_t j = 0; j < first.cols(); ++j)
        if (!first.at(i, j).is_zero() && !second.at(j, k).is_zero()) acc += first.at(i, j) * second.at(j, k);
      e.push_back(a.normal_form(acc));
    }
  return GradedMatrix(first.source(), second.target(), std::move(e));
}

GradedMatrix add(const GradedMatrix& a, const GradedMatrix& b) {
  check_compatible(a.source(), b.source(), "add: sources differ");
  check_compatible(a.target(), b.target(), "add: targets differ");
  std::vector<NcPoly> e;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e.push_back(a.at(i, j) + b.at(i, j));
  return GradedMatrix(a.source(), a.target(), std::move(e));
}

GradedMatrix subtract(const GradedMatrix& a, const GradedMatrix& b) { return add(a, b.negated()); }

GradedMatrix block_matrix(const GradedMatrix& a, const GradedMatrix& b, const GradedMatrix& c,
                          const GradedMatrix& d) {
  check_compatible(a.source(), b.source(), "block: top row sources differ");
  check_compatible(c.source(), d.source(), "block: bottom row sources differ");
  check_compatible(a.target(), c.target(), "block: left column targets differ");
  check_compatible(b.target(), d.target(), "block: right column targets differ");
  FreeModule src = a.source().direct_sum(c.source()), tgt = a.target().direct_sum(b.target());
  std::vector<NcPoly> e;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) e.push_back(a.at(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) e.push_back(b.at(i, j));
  }
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) e.push_back(c.at(i, j));
    for (std::size_t j = 0; j < d.cols(); ++j) e.push_back(d.at(i, j));
  }
  return GradedMatrix(src, tgt, std::move(e));
}

GradedMatrix block_diagonal(const GradedMatrix& a, const GradedMatrix& b) {
  return block_matrix(a, GradedMatrix::zero(a.source(), b.target()), GradedMatrix::zero(b.source(), a.target()), b);
}

GradedMatrix twist_map(const GradedMatrix& m, const GradedEndo& sigma, int d) {
  return m.map_entries(sigma.inverse(), d);
}

GradedMatrix twist_power(const GradedMatrix& m, const GradedEndo& sigma, int d, int k) {
  if (k == 0) return m;
  return m.map_entries(endo_power(sigma, -k), k * d);
}

GradedMatrix lambda_f(const FreeModule& g, const NcPoly& f, int d) {
  const RingPtr& r = g.algebra()->ring();
  std::vector<NcPoly> e(g.rank() * g.rank(), NcPoly(r));
  for (std::size_t i = 0; i < g.rank(); ++i) e[i * g.rank() + i] = f;
  return GradedMatrix(g.shifted(d), g, std::move(e));
}

SliceLayout slice_layout(const FreeModule& m, int t) {
  SliceLayout l;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    l.offsets.push_back(l.dim);
    l.dim += m.algebra()->dim(t - m.degree(i));
  }
  return l;
}

Vec slice_coordinates(const FreeModule& m, int t, const ModElem& v) {
  const QuotientAlgebra& a = *m.algebra();
  SliceLayout l = slice_layout(m, t);
  Vec out(l.dim, a.field().zero());
  for (std::size_t i = 0; i < m.rank(); ++i) {
    if (v[i].is_zero()) continue;
    Vec c = a.coordinates(v[i], t - m.degree(i));
    std::copy(c.begin(), c.end(), out.begin() + static_cast<long>(l.offsets[i]));
  }
  return out;
}

ModElem from_slice(const FreeModule& m, int t, const Vec& c) {
  const QuotientAlgebra& a = *m.algebra();
  SliceLayout l = slice_layout(m, t);
  ModElem out;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    int deg = t - m.degree(i);
    std::size_t n = a.dim(deg);
    if (n == 0) {
      out.emplace_back(a.ring());
      continue;
    }
    Vec part(c.begin() + static_cast<long>(l.offsets[i]), c.begin() + static_cast<long>(l.offsets[i] + n));
    out.push_back(a.from_coordinates(deg, part));
  }
  return out;
}

ModElem apply_row(const ModElem& v, const GradedMatrix& m) {
  const QuotientAlgebra& a = *m.algebra();
  ModElem out;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    NcPoly acc(a.ring());
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!v[i].is_zero() && !m.at(i, j).is_zero()) acc += v[i] * m.at(i, j);
    out.push_back(a.normal_form(acc));
  }
  return out;
}

ModElem left_multiply(const NcPoly& a, const ModElem& v, const QuotientAlgebra& alg) {
  ModElem out;
  for (const auto& x : v) out.push_back(x.is_zero() ? x : alg.multiply(a, x));
  return out;
}

int element_degree(const FreeModule& m, const ModElem& v) {
  for (std::size_t i = 0; i < m.rank(); ++i)
    if (!v[i].is_zero()) return m.degree(i) + *v[i].homogeneous_degree();
  throw Error(ErrorKind::InvalidArgument, "zero element has no degree");
}

Matrix slice_matrix(const GradedMatrix& m, int t) {
  const QuotientAlgebra& a = *m.algebra();
  SliceLayout src = slice_layout(m.source(), t), tgt = slice_layout(m.target(), t);
  Matrix out(a.field(), src.dim, tgt.dim);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int deg = t - m.source().degree(i);
    if (deg < 0) continue;
    const auto& words = a.basis_of_degree(deg);
    for (std::size_t w = 0; w < words.size(); ++w) {
      NcPoly u = NcPoly::monomial(a.ring(), words[w], a.field().one());
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.at(i, j).is_zero()) continue;
        NcPoly prod = a.multiply(u, m.at(i, j));
        if (prod.is_zero()) continue;
        Vec c = a.coordinates(prod, t - m.target().degree(j));
        for (std::size_t k = 0; k < c.size(); ++k)
          if (!c[k].is_zero()) out.at(src.offsets[i] + w, tgt.offsets[j] + k) = c[k];
      }
    }
  }
  return out;
}

namespace {

void check_slice_bounds(const GradedMatrix& m, int t_max) {
  const QuotientAlgebra& a = *m.algebra();
  for (int d : m.source().degrees()) a.check_degree(t_max - d);
  for (int d : m.target().degrees()) a.check_degree(t_max - d);
}

}  // namespace

GradedMatrix kernel_degreewise(const GradedMatrix& m, int t_max) {
  const QuotientAlgebra& a = *m.algebra();
  const FreeModule& src = m.source();
  std::vector<int> gen_degrees;
  std::vector<ModElem> gens;
  if (src.rank() > 0) {
    check_slice_bounds(m, t_max);
    int t0 = *std::min_element(src.degrees().begin(), src.degrees().end());
    for (int t = t0; t <= t_max; ++t) {
      std::vector<Vec> kernel = left_kernel(slice_matrix(m, t));
      if (kernel.empty()) continue;
      SliceLayout l = slice_layout(src, t);
      std::vector<Vec> multiples;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        int s = gen_degrees[g];
        for (const auto& w : a.basis_of_degree(t - s)) {
          NcPoly u = NcPoly::monomial(a.ring(), w, a.field().one());
          multiples.push_back(slice_coordinates(src, t, left_multiply(u, gens[g], a)));
        }
      }
      Echelon span = rref_rows(a.field(), l.dim, multiples);
      if (span.rows.size() == kernel.size()) continue;
      std::vector<Vec> fresh;
      for (auto& k : kernel) {
        Vec r = reduce_against(a.field(), span, k);
        if (!is_zero_vec(r)) fresh.push_back(std::move(r));
      }
      for (const auto& row : rref_rows(a.field(), l.dim, fresh).rows) {
        gens.push_back(from_slice(src, t, row));
        gen_degrees.push_back(t);
      }
    }
  }
  return GradedMatrix::from_rows(FreeModule(m.algebra(), gen_degrees), src, gens);
}

bool is_injective_up_to(const GradedMatrix& m, int t_max) {
  if (m.rows() == 0) return true;
  check_slice_bounds(m, t_max);
  int t0 = *std::min_element(m.source().degrees().begin(), m.source().degrees().end());
  for (int t = t0; t <= t_max; ++t)
    if (!left_kernel(slice_matrix(m, t)).empty()) return false;
  return true;
}

std::vector<std::size_t> minimal_generating_subset(const FreeModule& m, const std::vector<ModElem>& elems) {
  const QuotientAlgebra& a = *m.algebra();
  std::vector<std::size_t> order;
  std::vector<int> deg(elems.size(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    bool zero = std::all_of(elems[i].begin(), elems[i].end(), [](const NcPoly& p) { return p.is_zero(); });
    if (zero) continue;
    deg[i] = element_degree(m, elems[i]);
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return deg[x] < deg[y]; });
  std::vector<std::size_t> kept;
  std::size_t pos = 0;
  while (pos < order.size()) {
    int t = deg[order[pos]];
    SliceLayout l = slice_layout(m, t);
    SpanBuilder span(a.field(), l.dim);
    for (auto g : kept) {
      for (const auto& w : a.basis_of_degree(t - deg[g])) {
        NcPoly u = NcPoly::monomial(a.ring(), w, a.field().one());
        span.add(slice_coordinates(m, t, left_multiply(u, elems[g], a)));
      }
    }
    for (; pos < order.size() && deg[order[pos]] == t; ++pos)
      if (span.add(slice_coordinates(m, t, elems[order[pos]]))) kept.push_back(order[pos]);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace ncmf

namespace ncmf {

Echelon row_span_slice(const GradedMatrix& m, int t) {
  const QuotientAlgebra& a = *m.algebra();
  const FreeModule& tgt = m.target();
  SliceLayout l = slice_layout(tgt, t);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int s = m.source().degree(i);
    if (s > t) continue;
    ModElem r = m.row(i);
    for (const auto& w : a.basis_of_degree(t - s)) {
      NcPoly u = NcPoly::monomial(a.ring(), w, a.field().one());
      rows.push_back(slice_coordinates(tgt, t, left_multiply(u, r, a)));
    }
  }
  return rref_rows(a.field(), l.dim, rows);
}

bool same_row_span(const GradedMatrix& a, const GradedMatrix& b, int t_max) {
  if (!(a.target() == b.target())) return false;
  int lo = 0;
  if (a.target().rank() > 0) lo = *std::min_element(a.target().degrees().begin(), a.target().degrees().end());
  for (int t = lo; t <= t_max; ++t) {
    Echelon x = row_span_slice(a, t), y = row_span_slice(b, t);
    if (x.rows != y.rows) return false;
  }
  return true;
}

}  // namespace ncmf
