#include "ncmf/resolve.hpp"

#include <algorithm>

#include "block_system.hpp"
#include "ncmf/error.hpp"

namespace ncmf {

std::vector<int> BettiTable::ranks() const {
  std::vector<int> out;
  for (const auto& s : steps) out.push_back(static_cast<int>(s.size()));
  return out;
}

std::string BettiTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out += "step " + std::to_string(i) + ":";
    if (steps[i].empty()) out += " -";
    for (int d : steps[i]) out += " " + std::to_string(d);
    out += "\n";
  }
  return out;
}

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ModElem> rows_of(const GradedMatrix& m) {
  std::vector<ModElem> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

}  // namespace

ModulePresentation minimize(const ModulePresentation& m) {
  const AlgebraPtr& alg = m.algebra();
  const QuotientAlgebra& a = *alg;
  const Field& k = a.field();
  std::vector<ModElem> rows = rows_of(m.relations);
  std::vector<int> row_deg = m.relations.source().degrees();
  std::vector<int> gens = m.generators().degrees();
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (std::size_t r = 0; r < rows.size() && !unit; ++r)
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (!rows[r][j].is_zero() && rows[r][j].max_degree() == 0) {
          unit = std::make_pair(r, j);
          break;
        }
    if (!unit) break;
    auto [r, j] = *unit;
    ModElem pivot = rows[r];
    Scalar inv = k.inv(pivot[j].constant_term());
    std::vector<ModElem> next;
    std::vector<int> next_deg;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      ModElem row = rows[i];
      if (!row[j].is_zero()) {
        NcPoly c = row[j].scaled(inv);
        for (std::size_t l = 0; l < gens.size(); ++l)
          if (!pivot[l].is_zero()) row[l] = a.normal_form(row[l] - c * pivot[l]);
      }
      row.erase(row.begin() + static_cast<long>(j));
      next.push_back(std::move(row));
      next_deg.push_back(row_deg[i]);
    }
    gens.erase(gens.begin() + static_cast<long>(j));
    rows = std::move(next);
    row_deg = std::move(next_deg);
  }
  FreeModule g(alg, gens);
  std::vector<std::size_t> keep = minimal_generating_subset(g, rows);
  std::vector<ModElem> kept;
  std::vector<int> kept_deg;
  for (auto i : keep) {
    kept.push_back(rows[i]);
    kept_deg.push_back(row_deg[i]);
  }
  return ModulePresentation{GradedMatrix::from_rows(FreeModule(alg, kept_deg), g, kept)};
}

MinimalResolution minimal_resolution(const ModulePresentation& m, int h_max, int t_max) {
  ModulePresentation pres = minimize(m);
  MinimalResolution res;
  res.certified_degree = t_max;
  res.segment.modules.push_back(pres.generators());
  if (h_max >= 1 && pres.generators().rank() > 0) {
    res.segment.modules.push_back(pres.relations.source());
    res.segment.differentials.push_back(pres.relations);
    for (int i = 2; i <= h_max; ++i) {
      const GradedMatrix& prev = res.segment.differentials.back();
      if (prev.rows() == 0) break;
      GradedMatrix k = kernel_degreewise(prev, t_max);
      res.segment.modules.push_back(k.source());
      res.segment.differentials.push_back(std::move(k));
    }
  }
  for (const auto& mod : res.segment.modules) {
    res.betti.steps.push_back(sorted(mod.degrees()));
    if (mod.rank() == 0) res.terminated = true;
  }
  while (static_cast<int>(res.betti.steps.size()) <= h_max) {
    res.betti.steps.emplace_back();
    res.terminated = true;
  }
  return res;
}

PdReport pd_at_most_one(const ModulePresentation& m, int t_max) {
  PdReport rep;
  rep.minimal = minimize(m);
  rep.bound = t_max;
  rep.second_syzygies = kernel_degreewise(rep.minimal.relations, t_max);
  rep.at_most_one = rep.second_syzygies.rows() == 0;
  return rep;
}

ModulePresentation lift_to_ambient(const ModulePresentation& m, const NormalElement& elem) {
  const AlgebraPtr& a = elem.ambient();
  GradedMatrix lifted = m.relations.over(a);
  std::vector<ModElem> rows = rows_of(lifted);
  std::vector<int> deg = lifted.source().degrees();
  const FreeModule& g = lifted.target();
  for (std::size_t j = 0; j < g.rank(); ++j) {
    ModElem r(g.rank(), NcPoly(a->ring()));
    r[j] = elem.f();
    rows.push_back(std::move(r));
    deg.push_back(g.degree(j) + elem.degree());
  }
  return ModulePresentation{GradedMatrix::from_rows(FreeModule(a, deg), g, rows)};
}

StripResult strip_free_summands(const ModulePresentation& m) {
  ModulePresentation pres = minimize(m);
  const GradedMatrix& r = pres.relations;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < r.cols(); ++j) {
    bool used = false;
    for (std::size_t i = 0; i < r.rows() && !used; ++i) used = !r.at(i, j).is_zero();
    if (used) keep.push_back(j);
  }
  std::vector<std::size_t> all_rows(r.rows());
  for (std::size_t i = 0; i < r.rows(); ++i) all_rows[i] = i;
  return StripResult{ModulePresentation{r.permuted(all_rows, keep)}, r.cols() - keep.size()};
}

Factorization extract_tmf(const ModulePresentation& m, const ElementPtr& elem, int t_max) {
  ModulePresentation over_b = minimize(m);
  for (std::size_t j = 0; j < over_b.relations.cols(); ++j) {
    bool used = false;
    for (std::size_t i = 0; i < over_b.relations.rows() && !used; ++i) used = !over_b.relations.at(i, j).is_zero();
    if (!used)
      throw Error(ErrorKind::FreeSummandPresent,
                  "generator " + std::to_string(j + 1) + " occurs in no relation of the minimal presentation");
  }
  PdReport pd = pd_at_most_one(lift_to_ambient(over_b, *elem), t_max);
  if (!pd.at_most_one)
    throw Error(ErrorKind::PdTooLarge, "presentation over the ambient algebra has syzygies in degree " +
                                           std::to_string(pd.second_syzygies.source().degree(0)));
  const GradedMatrix& phi = pd.minimal.relations;
  if (phi.rows() != phi.cols())
    throw Error(ErrorKind::RankMismatch, "minimal ambient presentation is not square (" +
                                             std::to_string(phi.rows()) + " relations, " +
                                             std::to_string(phi.cols()) + " generators)");
  int d = elem->degree();
  FreeModule g_tw = phi.target().shifted(d);
  detail::BlockSystem sys(elem->ambient());
  std::size_t x = sys.unknown(g_tw, phi.source());
  std::size_t eq = sys.equation(g_tw, phi.target());
  sys.term(eq, nullptr, x, &phi, elem->ambient()->field().one());
  sys.rhs(eq, lambda_f(phi.target(), elem->f(), d));
  auto sol = sys.solve();
  if (!sol) throw Error(ErrorKind::VerificationFailed, "f G is not contained in the image of phi");
  return verify_tmf(elem, phi, (*sol)[0]);
}

ModulePresentation syzygy_presentation(const MinimalResolution& r, int i) {
  const auto& diffs = r.segment.differentials;
  if (i < 0 || static_cast<std::size_t>(i) >= diffs.size())
    throw Error(ErrorKind::TruncationExceeded, "resolution too short for syzygy " + std::to_string(i));
  return ModulePresentation{diffs[static_cast<std::size_t>(i)]};
}

PipelineResult factorization_pipeline(const ModulePresentation& m, const ElementPtr& elem, int dim, int t_max) {
  MinimalResolution res = minimal_resolution(m, dim + 2, t_max);
  for (int i = 0; i <= dim + 1; ++i) {
    ModulePresentation syz;
    if (static_cast<std::size_t>(i) < res.segment.differentials.size()) {
      syz = syzygy_presentation(res, i);
    } else {
      // Past the end of a finite resolution: the syzygy is zero.
      FreeModule z(m.algebra(), {});
      syz = ModulePresentation{GradedMatrix::zero(z, z)};
    }
    StripResult stripped = strip_free_summands(syz);
    PdReport pd = pd_at_most_one(lift_to_ambient(stripped.module, *elem), t_max);
    if (!pd.at_most_one) continue;
    PipelineResult out;
    out.syzygy_index = i;
    out.stripped_rank = stripped.stripped;
    if (stripped.module.generators().rank() == 0) {
      out.factorization = irrelevant(elem);
      out.finite_resolution = true;
    } else {
      out.factorization = extract_tmf(stripped.module, elem, t_max);
    }
    out.prefix = res;
    out.splice_verified = true;
    if (!out.finite_resolution && stripped.stripped == 0) {
      // The unrolled factorization must continue the computed resolution.
      int steps = static_cast<int>(res.segment.differentials.size()) - i;
      ResolutionSegment tail = unroll(out.factorization, steps);
      for (int s = 0; s <= steps && out.splice_verified; ++s) {
        std::size_t idx = static_cast<std::size_t>(i + s);
        if (sorted(tail.modules[static_cast<std::size_t>(s)].degrees()) != res.betti.steps[idx])
          out.splice_verified = false;
      }
      if (out.splice_verified && steps >= 1)
        out.splice_verified = same_row_span(tail.differentials[0], res.segment.differentials[static_cast<std::size_t>(i)], t_max);
      ResolutionSegment spliced;
      for (int s = 0; s <= i; ++s) spliced.modules.push_back(res.segment.modules[static_cast<std::size_t>(s)]);
      for (int s = 0; s < i; ++s) spliced.differentials.push_back(res.segment.differentials[static_cast<std::size_t>(s)]);
      for (int s = 1; s <= steps; ++s) {
        spliced.modules.push_back(tail.modules[static_cast<std::size_t>(s)]);
        spliced.differentials.push_back(tail.differentials[static_cast<std::size_t>(s - 1)]);
      }
      if (out.splice_verified) {
        for (const auto& dm : spliced.differentials)
          if (dm.has_scalar_entry()) out.splice_verified = false;
      }
      if (out.splice_verified) out.splice_verified = certify_exactness(spliced, t_max);
    }
    return out;
  }
  throw Error(ErrorKind::NoEligibleSyzygy, "no syzygy up to index " + std::to_string(dim + 1) +
                                               " has projective dimension <= 1 over the ambient algebra");
}

}  // namespace ncmf
