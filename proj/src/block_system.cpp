#include "block_system.hpp"

#include "ncmf/error.hpp"

namespace ncmf::detail {

BlockSystem::Block BlockSystem::make_block(FreeModule src, FreeModule tgt) const {
  Block b{std::move(src), std::move(tgt), {}, 0};
  for (std::size_t i = 0; i < b.src.rank(); ++i)
    for (std::size_t j = 0; j < b.tgt.rank(); ++j) {
      b.offsets.push_back(b.size);
      b.size += alg_->dim(b.src.degree(i) - b.tgt.degree(j));
    }
  return b;
}

std::size_t BlockSystem::unknown(FreeModule src, FreeModule tgt) {
  unknowns_.push_back(make_block(std::move(src), std::move(tgt)));
  var_base_.push_back(num_vars_);
  num_vars_ += unknowns_.back().size;
  return unknowns_.size() - 1;
}

std::size_t BlockSystem::equation(FreeModule src, FreeModule tgt) {
  equations_.push_back(make_block(std::move(src), std::move(tgt)));
  coord_base_.push_back(num_coords_);
  num_coords_ += equations_.back().size;
  return equations_.size() - 1;
}

void BlockSystem::term(std::size_t eq, const GradedMatrix* left, std::size_t x, const GradedMatrix* right,
                       const Scalar& coeff, const GradedEndo* endo) {
  const Block& e = equations_.at(eq);
  const Block& u = unknowns_.at(x);
  if (left ? (left->rows() != e.src.rank() || left->cols() != u.src.rank()) : e.src.rank() != u.src.rank())
    throw Error(ErrorKind::ShapeMismatch, "block system: left factor shape");
  if (right ? (right->rows() != u.tgt.rank() || right->cols() != e.tgt.rank()) : e.tgt.rank() != u.tgt.rank())
    throw Error(ErrorKind::ShapeMismatch, "block system: right factor shape");
  terms_.push_back({eq, x, left, right, coeff, endo});
}

void BlockSystem::rhs(std::size_t eq, const GradedMatrix& m) { rhs_.emplace_back(eq, m); }

Matrix BlockSystem::build() const {
  const QuotientAlgebra& a = *alg_;
  const RingPtr& ring = a.ring();
  Matrix m(a.field(), num_vars_, num_coords_);
  for (const auto& t : terms_) {
    const Block& e = equations_[t.eq];
    const Block& u = unknowns_[t.x];
    for (std::size_t j = 0; j < u.src.rank(); ++j)
      for (std::size_t k = 0; k < u.tgt.rank(); ++k) {
        int deg = u.src.degree(j) - u.tgt.degree(k);
        if (deg < 0) continue;
        const auto& words = a.basis_of_degree(deg);
        std::vector<std::pair<std::size_t, NcPoly>> lefts, rights;
        if (t.left) {
          for (std::size_t i = 0; i < e.src.rank(); ++i)
            if (!t.left->at(i, j).is_zero()) lefts.emplace_back(i, t.left->at(i, j));
        } else {
          lefts.emplace_back(j, NcPoly::from_int(ring, 1));
        }
        if (t.right) {
          for (std::size_t l = 0; l < e.tgt.rank(); ++l)
            if (!t.right->at(k, l).is_zero()) rights.emplace_back(l, t.right->at(k, l));
        } else {
          rights.emplace_back(k, NcPoly::from_int(ring, 1));
        }
        for (std::size_t w = 0; w < words.size(); ++w) {
          std::size_t var = var_base_[t.x] + u.offsets[j * u.tgt.rank() + k] + w;
          NcPoly mono = NcPoly::monomial(ring, words[w], t.coeff);
          for (const auto& [i, lp] : lefts)
            for (const auto& [l, rp] : rights) {
              NcPoly val = a.normal_form(lp * mono * rp);
              if (t.endo) val = t.endo->apply(val);
              if (val.is_zero()) continue;
              int edeg = e.src.degree(i) - e.tgt.degree(l);
              Vec c = a.coordinates(val, edeg);
              std::size_t base = coord_base_[t.eq] + e.offsets[i * e.tgt.rank() + l];
              for (std::size_t q = 0; q < c.size(); ++q)
                if (!c[q].is_zero()) m.at(var, base + q) = a.field().add(m.at(var, base + q), c[q]);
            }
        }
      }
  }
  return m;
}

std::vector<GradedMatrix> BlockSystem::unpack(const Vec& v) const {
  const QuotientAlgebra& a = *alg_;
  std::vector<GradedMatrix> out;
  for (std::size_t x = 0; x < unknowns_.size(); ++x) {
    const Block& u = unknowns_[x];
    std::vector<NcPoly> entries;
    for (std::size_t j = 0; j < u.src.rank(); ++j)
      for (std::size_t k = 0; k < u.tgt.rank(); ++k) {
        int deg = u.src.degree(j) - u.tgt.degree(k);
        if (deg < 0) {
          entries.emplace_back(a.ring());
          continue;
        }
        std::size_t base = var_base_[x] + u.offsets[j * u.tgt.rank() + k];
        Vec part(v.begin() + static_cast<long>(base), v.begin() + static_cast<long>(base + a.dim(deg)));
        entries.push_back(a.from_coordinates(deg, part));
      }
    out.emplace_back(u.src, u.tgt, std::move(entries));
  }
  return out;
}

std::vector<std::vector<GradedMatrix>> BlockSystem::kernel_basis() const {
  std::vector<std::vector<GradedMatrix>> out;
  if (num_vars_ == 0) return out;
  for (const auto& v : left_kernel(build())) out.push_back(unpack(v));
  return out;
}

std::optional<std::vector<GradedMatrix>> BlockSystem::solve() const {
  const QuotientAlgebra& a = *alg_;
  Vec b(num_coords_, a.field().zero());
  for (const auto& [eq, m] : rhs_) {
    const Block& e = equations_[eq];
    for (std::size_t i = 0; i < e.src.rank(); ++i)
      for (std::size_t l = 0; l < e.tgt.rank(); ++l) {
        const NcPoly& p = m.at(i, l);
        if (p.is_zero()) continue;
        Vec c = a.coordinates(p, e.src.degree(i) - e.tgt.degree(l));
        std::size_t base = coord_base_[eq] + e.offsets[i * e.tgt.rank() + l];
        for (std::size_t q = 0; q < c.size(); ++q) b[base + q] = a.field().add(b[base + q], c[q]);
      }
  }
  if (num_vars_ == 0) {
    if (!is_zero_vec(b)) return std::nullopt;
    return unpack(Vec());
  }
  auto v = solve_left(build(), b);
  if (!v) return std::nullopt;
  return unpack(*v);
}

}  // namespace ncmf::detail
