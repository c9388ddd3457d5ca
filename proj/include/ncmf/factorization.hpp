#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ncmf/autos.hpp"
#include "ncmf/gradedmod.hpp"

namespace ncmf {

// A normal regular element f of A with its normalizing automorphism sigma
// (a f = f sigma(a)) and the hypersurface B = A/(f), built on first use.
class NormalElement {
 public:
  static std::shared_ptr<const NormalElement> certify(AlgebraPtr ambient, const NcPoly& f);
  static std::shared_ptr<const NormalElement> from_certificate(AlgebraPtr ambient, NormalityCertificate cert);

  const AlgebraPtr& ambient() const { return ambient_; }
  const NcPoly& f() const { return cert_.f; }
  int degree() const { return degree_; }
  const GradedEndo& sigma() const { return cert_.sigma; }
  const GradedEndo& sigma_inverse() const { return cert_.sigma.inverse(); }
  // sigma^k, cached.
  GradedEndo sigma_power(int k) const;
  const NormalityCertificate& certificate() const { return cert_; }
  const AlgebraPtr& quotient() const;
  // The same automorphism for nu f.
  std::shared_ptr<const NormalElement> rescaled(const Scalar& nu) const;

 private:
  AlgebraPtr ambient_;
  NormalityCertificate cert_;
  int degree_ = 0;
  mutable std::once_flag quotient_once_;
  mutable AlgebraPtr quotient_;
  mutable std::mutex mu_;
  mutable std::map<int, GradedEndo> powers_;
};

using ElementPtr = std::shared_ptr<const NormalElement>;

// A verified pair phi: F -> G, tau: G^tw -> F over A with
// [tau][phi] = f I and sigma^{-1}[phi] [tau] = f I.
class Factorization {
 public:
  const ElementPtr& element() const { return elem_; }
  const GradedMatrix& phi() const { return phi_; }
  const GradedMatrix& tau() const { return tau_; }
  const FreeModule& F() const { return phi_.source(); }
  const FreeModule& G() const { return phi_.target(); }
  std::size_t rank() const { return phi_.rows(); }

 private:
  friend Factorization verify_tmf(const ElementPtr&, const GradedMatrix&, const GradedMatrix&);
  ElementPtr elem_;
  GradedMatrix phi_, tau_;
};

Factorization verify_tmf(const ElementPtr& elem, const GradedMatrix& phi, const GradedMatrix& tau);

// ((phi^tw, tau^tw), (tau, phi^tw))
std::pair<Factorization, Factorization> shifted_variants(const Factorization& t);
// (-tau^{tw^-1}, -phi)
Factorization translate(const Factorization& t);
Factorization direct_sum(const Factorization& a, const Factorization& b);
// Factorization of nu f given by (phi, nu tau).
Factorization rescale(const Factorization& t, const Scalar& nu);
// The same matrices with every module degree raised by s.
Factorization degree_shift(const Factorization& t, int s);
Factorization irrelevant(const ElementPtr& elem);
// (1, f) on A(-s) and (f, 1) on A(-s-d) -> A(-s).
Factorization trivial_identity(const ElementPtr& elem, int s = 0);
Factorization trivial_lambda(const ElementPtr& elem, int s = 0);
bool is_reduced(const Factorization& t);

// P_k -> ... -> P_0 over B; differentials[k-1] is d_k: P_k -> P_{k-1}.
struct ResolutionSegment {
  std::vector<FreeModule> modules;
  std::vector<GradedMatrix> differentials;
  std::optional<int> period;
  int shift = 0;
  int certified_degree = 0;
};

ResolutionSegment unroll(const Factorization& t, int steps);
// Checks consecutive composites vanish and slice exactness at every interior
// module for internal degrees <= t_max.
bool certify_exactness(const ResolutionSegment& seg, int t_max);

struct Period {
  int steps = 0;
  int shift = 0;
};

// Smallest p <= p_max whose p-step pair, shifted back by p*d/2, is isomorphic
// to t as a factorization.
std::optional<Period> detect_period(const Factorization& t, int p_max);

ModulePresentation coker_presentation(const Factorization& t);

struct FactorizationMorphism {
  Factorization source, target;
  GradedMatrix psi_g, psi_f;  // G -> G', F -> F'
};

FactorizationMorphism verify_morphism(const Factorization& source, const Factorization& target,
                                      const GradedMatrix& psi_g, const GradedMatrix& psi_f);
FactorizationMorphism identity_morphism(const Factorization& t);
// Basis of the degree-0 morphisms source -> target.
std::vector<FactorizationMorphism> morphism_space(const Factorization& source, const Factorization& target);
std::optional<FactorizationMorphism> find_isomorphism(const Factorization& source, const Factorization& target,
                                                      int attempts = 32);
bool is_invertible(const FactorizationMorphism& m);

struct Homotopy {
  GradedMatrix s;  // G -> F'
  GradedMatrix t;  // F -> G'^tw
};

std::optional<Homotopy> is_null_homotopic(const FactorizationMorphism& m);

struct Cone {
  Factorization cone;
  FactorizationMorphism inclusion;   // target -> cone
  FactorizationMorphism projection;  // cone -> source[1]
};

Cone mapping_cone(const FactorizationMorphism& m);

}  // namespace ncmf
