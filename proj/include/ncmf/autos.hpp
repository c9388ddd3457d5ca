#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncmf/gbasis.hpp"

namespace ncmf {

// A degree-0 endomorphism of A given by generator images (normal forms).
class GradedEndo {
 public:
  GradedEndo() = default;
  GradedEndo(AlgebraPtr alg, std::vector<NcPoly> images);
  static GradedEndo identity(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<NcPoly>& images() const { return images_; }
  const NcPoly& image(std::size_t gen) const { return images_[gen]; }

  NcPoly apply(const NcPoly& p) const;
  bool is_identity() const;
  // Inverse, computed once and shared between copies. Throws NotInvertible.
  const GradedEndo& inverse() const;

  friend bool operator==(const GradedEndo& a, const GradedEndo& b) { return a.images_ == b.images_; }

 private:
  struct Cache;
  AlgebraPtr alg_;
  std::vector<NcPoly> images_;
  std::shared_ptr<Cache> cache_;
};

NcPoly apply_endo(const GradedEndo& e, const NcPoly& p);
// Validates relation preservation and bijectivity.
GradedEndo check_endo(const AlgebraPtr& alg, std::vector<NcPoly> images);
// (e1 o e2)(a) = e1(e2(a)).
GradedEndo compose_endo(const GradedEndo& e1, const GradedEndo& e2);
GradedEndo invert_endo(const GradedEndo& e);
GradedEndo endo_power(const GradedEndo& e, long long n);
std::optional<int> endo_order(const GradedEndo& e, int limit);

struct RegularityReport {
  bool regular = true;
  int bound = 0;                       // certified for A_m, m <= bound
  std::optional<int> failing_degree;
  std::string failing_side;
};

RegularityReport is_regular(const QuotientAlgebra& a, const NcPoly& f, int m_max);

struct NormalityCertificate {
  NcPoly f;
  GradedEndo sigma;
  int degree_bound = 0;
  int regularity_bound = 0;
};

// Solves x f = f sigma(x) for each generator x and validates sigma.
NormalityCertificate normalizing_automorphism(const AlgebraPtr& alg, const NcPoly& f);

}  // namespace ncmf
