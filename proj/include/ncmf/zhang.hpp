#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "ncmf/factorization.hpp"

namespace ncmf {

// The algebraic twisting system zeta_n = zeta^n for a normal element f with
// zeta(f) = c f and zeta sigma = sigma zeta.
class TwistingSystem {
 public:
  const ElementPtr& element() const { return elem_; }
  const AlgebraPtr& base() const { return elem_->ambient(); }
  const GradedEndo& zeta() const { return zeta_; }
  const Scalar& c() const { return c_; }
  int degree() const { return elem_->degree(); }
  GradedEndo zeta_power(long long n) const;

 private:
  friend std::shared_ptr<const TwistingSystem> make_twist_system(const ElementPtr&, const GradedEndo&);
  ElementPtr elem_;
  GradedEndo zeta_;
  Scalar c_;
  mutable std::mutex mu_;
  mutable std::map<long long, GradedEndo> powers_;
};

using TwistPtr = std::shared_ptr<const TwistingSystem>;

TwistPtr make_twist_system(const ElementPtr& elem, const GradedEndo& zeta);

// x * y = zeta^m(x) y for y of degree m, extended over homogeneous components.
NcPoly zhang_mul(const TwistingSystem& z, const NcPoly& x, const NcPoly& y);
// The vector-space map c^{-deg a} sigma zeta^d on generators, as elements of A.
std::vector<NcPoly> sigma_hat_images(const TwistingSystem& z);
bool is_central_in_twist(const TwistingSystem& z);
// Minimal homogeneous relations of A^zeta up to degree D, via *-evaluation of free words.
AlgebraPresentation zhang_relations(const TwistingSystem& z, int degree);

// A^zeta as a presented algebra, with coordinate conversion to and from A.
class ZhangAlgebra {
 public:
  // relation_degree < 0 uses the base presentation's largest relation degree.
  static std::shared_ptr<const ZhangAlgebra> materialize(TwistPtr z, int degree_bound, int relation_degree = -1);

  const TwistPtr& system() const { return sys_; }
  const AlgebraPtr& base() const { return sys_->base(); }
  const AlgebraPtr& twisted() const { return twisted_; }
  // c^d f in A^zeta, certified there.
  const ElementPtr& twisted_element() const { return elem_; }

  // Products of generators evaluated with *, as an element of A.
  NcPoly star_eval(const Word& w) const;
  NcPoly to_twisted(const NcPoly& a) const;
  NcPoly from_twisted(const NcPoly& p) const;

 private:
  ZhangAlgebra() = default;
  const Matrix& evaluation_matrix(int n) const;

  TwistPtr sys_;
  AlgebraPtr twisted_;
  ElementPtr elem_;
  mutable std::mutex memo_mu_, mat_mu_;
  mutable std::unordered_map<std::string, NcPoly> eval_memo_;
  mutable std::map<int, Matrix> eval_;
};

using ZhangPtr = std::shared_ptr<const ZhangAlgebra>;

// sigma-hat as an automorphism of A^zeta; checked against a * f = f * sigma-hat(a).
GradedEndo sigma_hat(const ZhangAlgebra& z);
// Entry (i, j) becomes zeta^{-b_j} of it, in A^zeta coordinates.
GradedMatrix twist_module_matrix(const ZhangAlgebra& z, const GradedMatrix& m);
Factorization transport_tmf(const ZhangAlgebra& z, const Factorization& t);
// The inverse equivalence, back to a factorization of f over A.
Factorization untransport_tmf(const ZhangAlgebra& z, const Factorization& t);

}  // namespace ncmf
