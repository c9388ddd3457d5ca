#include "ncmf/factorization.hpp"

#include <algorithm>
#include <random>

#include "block_system.hpp"
#include "ncmf/error.hpp"

namespace ncmf {

ElementPtr NormalElement::certify(AlgebraPtr ambient, const NcPoly& f) {
  NormalityCertificate cert = normalizing_automorphism(ambient, f);
  return from_certificate(std::move(ambient), std::move(cert));
}

ElementPtr NormalElement::from_certificate(AlgebraPtr ambient, NormalityCertificate cert) {
  auto e = std::make_shared<NormalElement>();
  e->ambient_ = std::move(ambient);
  e->cert_ = std::move(cert);
  e->cert_.f = e->ambient_->normal_form(e->cert_.f);
  auto d = e->cert_.f.homogeneous_degree();
  if (!d || *d < 1) throw Error(ErrorKind::InvalidArgument, "f must be homogeneous of positive degree");
  e->degree_ = *d;
  return e;
}

GradedEndo NormalElement::sigma_power(int k) const {
  {
    std::lock_guard lock(mu_);
    auto it = powers_.find(k);
    if (it != powers_.end()) return it->second;
  }
  GradedEndo p = endo_power(sigma(), k);
  std::lock_guard lock(mu_);
  return powers_.try_emplace(k, p).first->second;
}

const AlgebraPtr& NormalElement::quotient() const {
  std::call_once(quotient_once_, [this] { quotient_ = quotient_by_element(*ambient_, cert_.f); });
  return quotient_;
}

ElementPtr NormalElement::rescaled(const Scalar& nu) const {
  if (nu.is_zero()) throw Error(ErrorKind::InvalidArgument, "rescale by zero");
  NormalityCertificate c = cert_;
  c.f = cert_.f.scaled(nu);
  return from_certificate(ambient_, std::move(c));
}

namespace {

std::string pos(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_scalar_identity(const GradedMatrix& prod, const NcPoly& f, const char* axiom) {
  for (std::size_t i = 0; i < prod.rows(); ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j) {
      const NcPoly& want = i == j ? f : NcPoly(f.ring());
      if (!(prod.at(i, j) == want))
        throw Error(ErrorKind::ProductMismatch, std::string(axiom) + " fails at entry " + pos(i, j) + ": got " +
                                                    prod.at(i, j).to_string() + ", expected " + want.to_string());
    }
}

GradedMatrix twist_k(const Factorization& t, const GradedMatrix& m, int k) {
  if (k == 0) return m;
  return m.map_entries(t.element()->sigma_power(-k), k * t.element()->degree());
}

}  // namespace

Factorization verify_tmf(const ElementPtr& elem, const GradedMatrix& phi, const GradedMatrix& tau) {
  const AlgebraPtr& a = elem->ambient();
  if (phi.algebra() != a || tau.algebra() != a)
    throw Error(ErrorKind::ContextMismatch, "matrices must live over the ambient algebra of f");
  if (phi.rows() != phi.cols())
    throw Error(ErrorKind::RankMismatch, "rank F = " + std::to_string(phi.rows()) + " but rank G = " +
                                             std::to_string(phi.cols()));
  int d = elem->degree();
  if (!(tau.source() == phi.target().shifted(d)) || !(tau.target() == phi.source()))
    throw Error(ErrorKind::ShapeMismatch, "tau must map G^tw -> F");
  require_scalar_identity(compose(tau, phi), elem->f(), "[tau][phi] = f I");
  require_scalar_identity(compose(twist_map(phi, elem->sigma(), d), tau), elem->f(),
                          "sigma^-1[phi] [tau] = f I");
  Factorization t;
  t.elem_ = elem;
  t.phi_ = phi;
  t.tau_ = tau;
  return t;
}

std::pair<Factorization, Factorization> shifted_variants(const Factorization& t) {
  const ElementPtr& e = t.element();
  GradedMatrix phi_tw = twist_k(t, t.phi(), 1);
  return {verify_tmf(e, phi_tw, twist_k(t, t.tau(), 1)), verify_tmf(e, t.tau(), phi_tw)};
}

Factorization translate(const Factorization& t) {
  return verify_tmf(t.element(), twist_k(t, t.tau(), -1).negated(), t.phi().negated());
}

Factorization direct_sum(const Factorization& a, const Factorization& b) {
  if (a.element() != b.element()) {
    if (a.element()->ambient() != b.element()->ambient() || !(a.element()->f() == b.element()->f()))
      throw Error(ErrorKind::ContextMismatch, "direct sum of factorizations of different elements");
  }
  return verify_tmf(a.element(), block_diagonal(a.phi(), b.phi()), block_diagonal(a.tau(), b.tau()));
}

Factorization rescale(const Factorization& t, const Scalar& nu) {
  ElementPtr e = t.element()->rescaled(nu);
  return verify_tmf(e, t.phi(), t.tau().scaled(nu));
}

Factorization degree_shift(const Factorization& t, int s) {
  const GradedMatrix& p = t.phi();
  const GradedMatrix& q = t.tau();
  return verify_tmf(t.element(), p.with_modules(p.source().shifted(s), p.target().shifted(s)),
                    q.with_modules(q.source().shifted(s), q.target().shifted(s)));
}

Factorization irrelevant(const ElementPtr& elem) {
  FreeModule z(elem->ambient(), {});
  return verify_tmf(elem, GradedMatrix::zero(z, z), GradedMatrix::zero(z, z));
}

Factorization trivial_identity(const ElementPtr& elem, int s) {
  FreeModule g(elem->ambient(), {s});
  return verify_tmf(elem, GradedMatrix::identity(g), lambda_f(g, elem->f(), elem->degree()));
}

Factorization trivial_lambda(const ElementPtr& elem, int s) {
  FreeModule g(elem->ambient(), {s});
  GradedMatrix phi = lambda_f(g, elem->f(), elem->degree());
  return verify_tmf(elem, phi, GradedMatrix::identity(phi.source()));
}

bool is_reduced(const Factorization& t) { return !t.phi().has_scalar_entry() && !t.tau().has_scalar_entry(); }

ResolutionSegment unroll(const Factorization& t, int steps) {
  const AlgebraPtr& b = t.element()->quotient();
  ResolutionSegment seg;
  seg.modules.push_back(t.G().over(b));
  for (int k = 1; k <= steps; ++k) {
    int twists = (k - 1) / 2;
    const GradedMatrix& base = (k % 2 == 1) ? t.phi() : t.tau();
    GradedMatrix dk = twist_k(t, base, twists).over(b);
    seg.modules.push_back(dk.source());
    seg.differentials.push_back(std::move(dk));
  }
  for (std::size_t k = 1; k < seg.differentials.size(); ++k)
    if (!compose(seg.differentials[k], seg.differentials[k - 1]).is_zero())
      throw Error(ErrorKind::VerificationFailed, "unrolled differentials do not compose to zero");
  seg.certified_degree = b->degree_bound();
  return seg;
}

bool certify_exactness(const ResolutionSegment& seg, int t_max) {
  for (std::size_t k = 1; k < seg.differentials.size(); ++k)
    if (!compose(seg.differentials[k], seg.differentials[k - 1]).is_zero()) return false;
  for (std::size_t k = 0; k + 1 < seg.differentials.size(); ++k) {
    const GradedMatrix& dk = seg.differentials[k];       // P_{k+1} -> P_k
    const GradedMatrix& next = seg.differentials[k + 1];  // P_{k+2} -> P_{k+1}
    if (dk.rows() == 0) continue;
    int lo = *std::min_element(dk.source().degrees().begin(), dk.source().degrees().end());
    for (int t = lo; t <= t_max; ++t) {
      std::size_t ker = left_kernel(slice_matrix(dk, t)).size();
      std::size_t img = next.rows() == 0 ? 0 : rank(slice_matrix(next, t));
      if (ker != img) return false;
    }
  }
  return true;
}

std::optional<Period> detect_period(const Factorization& t, int p_max) {
  int d = t.element()->degree();
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (int p = 1; p <= p_max; ++p) {
    if ((p * d) % 2 != 0) continue;
    int shift = p * d / 2;
    int k = p / 2;
    GradedMatrix phi, tau;
    if (p % 2 == 0) {
      phi = twist_k(t, t.phi(), k);
      tau = twist_k(t, t.tau(), k);
    } else {
      phi = twist_k(t, t.tau(), k);
      tau = twist_k(t, t.phi(), k + 1);
    }
    phi = phi.with_modules(phi.source().shifted(-shift), phi.target().shifted(-shift));
    tau = tau.with_modules(tau.source().shifted(-shift), tau.target().shifted(-shift));
    if (sorted(phi.source().degrees()) != sorted(t.F().degrees()) ||
        sorted(phi.target().degrees()) != sorted(t.G().degrees()))
      continue;
    Factorization cand = verify_tmf(t.element(), phi, tau);
    if (find_isomorphism(cand, t)) return Period{p, shift};
  }
  return std::nullopt;
}

ModulePresentation coker_presentation(const Factorization& t) {
  return ModulePresentation{t.phi().over(t.element()->quotient())};
}

FactorizationMorphism verify_morphism(const Factorization& source, const Factorization& target,
                                      const GradedMatrix& psi_g, const GradedMatrix& psi_f) {
  if (!(psi_f.source() == source.F()) || !(psi_f.target() == target.F()) || !(psi_g.source() == source.G()) ||
      !(psi_g.target() == target.G()))
    throw Error(ErrorKind::ShapeMismatch, "morphism components have the wrong modules");
  GradedMatrix diff = subtract(compose(psi_f, target.phi()), compose(source.phi(), psi_g));
  for (std::size_t i = 0; i < diff.rows(); ++i)
    for (std::size_t j = 0; j < diff.cols(); ++j)
      if (!diff.at(i, j).is_zero())
        throw Error(ErrorKind::SquareMismatch, "phi square fails at entry " + pos(i, j));
  int d = source.element()->degree();
  GradedMatrix tau_sq =
      subtract(compose(twist_map(psi_g, source.element()->sigma(), d), target.tau()), compose(source.tau(), psi_f));
  if (!tau_sq.is_zero()) throw Error(ErrorKind::SquareMismatch, "tau square fails although the phi square holds");
  return FactorizationMorphism{source, target, psi_g, psi_f};
}

FactorizationMorphism identity_morphism(const Factorization& t) {
  return verify_morphism(t, t, GradedMatrix::identity(t.G()), GradedMatrix::identity(t.F()));
}

std::vector<FactorizationMorphism> morphism_space(const Factorization& source, const Factorization& target) {
  detail::BlockSystem sys(source.element()->ambient());
  std::size_t xf = sys.unknown(source.F(), target.F());
  std::size_t xg = sys.unknown(source.G(), target.G());
  std::size_t eq = sys.equation(source.F(), target.G());
  const Field& k = source.element()->ambient()->field();
  sys.term(eq, nullptr, xf, &target.phi(), k.one());
  sys.term(eq, &source.phi(), xg, nullptr, k.neg(k.one()));
  std::vector<FactorizationMorphism> out;
  for (const auto& sol : sys.kernel_basis()) out.push_back(verify_morphism(source, target, sol[1], sol[0]));
  return out;
}

namespace {

bool scalar_block_invertible(const GradedMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const Field& k = m.algebra()->field();
  Matrix s(k, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s.at(i, j) = m.at(i, j).constant_term();
  return rank(s) == m.rows();
}

}  // namespace

bool is_invertible(const FactorizationMorphism& m) {
  return scalar_block_invertible(m.psi_f) && scalar_block_invertible(m.psi_g);
}

std::optional<FactorizationMorphism> find_isomorphism(const Factorization& source, const Factorization& target,
                                                      int attempts) {
  if (source.rank() != target.rank()) return std::nullopt;
  auto basis = morphism_space(source, target);
  if (source.rank() == 0) return identity_morphism(source);
  if (basis.empty()) return std::nullopt;
  for (const auto& m : basis)
    if (is_invertible(m)) return m;
  const Field& k = source.element()->ambient()->field();
  std::mt19937_64 rng(0x5eed);
  for (int a = 0; a < attempts; ++a) {
    GradedMatrix g = GradedMatrix::zero(source.G(), target.G());
    GradedMatrix f = GradedMatrix::zero(source.F(), target.F());
    for (const auto& m : basis) {
      Scalar c = k.from_int(static_cast<long long>(rng() % 2000) - 1000);
      g = add(g, m.psi_g.scaled(c));
      f = add(f, m.psi_f.scaled(c));
    }
    FactorizationMorphism m{source, target, g, f};
    if (is_invertible(m)) return verify_morphism(source, target, g, f);
  }
  return std::nullopt;
}

std::optional<Homotopy> is_null_homotopic(const FactorizationMorphism& m) {
  const Factorization& s = m.source;
  const Factorization& t = m.target;
  const ElementPtr& e = s.element();
  int d = e->degree();
  detail::BlockSystem sys(e->ambient());
  std::size_t xs = sys.unknown(s.G(), t.F());
  std::size_t xt = sys.unknown(s.F(), t.G().shifted(d));
  std::size_t e1 = sys.equation(s.F(), t.F());
  std::size_t e2 = sys.equation(s.G().shifted(d), t.G().shifted(d));
  const Field& k = e->ambient()->field();
  const GradedEndo& sinv = e->sigma_inverse();
  sys.term(e1, nullptr, xt, &t.tau(), k.one());
  sys.term(e1, &s.phi(), xs, nullptr, k.one());
  sys.rhs(e1, m.psi_f);
  sys.term(e2, nullptr, xs, &t.phi(), k.one(), &sinv);
  sys.term(e2, &s.tau(), xt, nullptr, k.one());
  sys.rhs(e2, twist_map(m.psi_g, e->sigma(), d));
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return Homotopy{(*sol)[0], (*sol)[1]};
}

Cone mapping_cone(const FactorizationMorphism& m) {
  const Factorization& s = m.source;
  const Factorization& t = m.target;
  const ElementPtr& e = s.element();
  GradedMatrix tau_inv_tw = twist_k(s, s.tau(), -1);  // G -> F^{tw^-1}
  GradedMatrix gamma = block_matrix(t.phi(), GradedMatrix::zero(t.F(), tau_inv_tw.target()), m.psi_g,
                                    tau_inv_tw.negated());
  GradedMatrix delta = block_matrix(t.tau(), GradedMatrix::zero(t.tau().source(), s.G()), m.psi_f,
                                    s.phi().negated());
  Factorization cone = verify_tmf(e, gamma, delta);
  auto inject = [](const FreeModule& part, const FreeModule& rest) {
    FreeModule sum = part.direct_sum(rest);
    std::vector<NcPoly> entries(part.rank() * sum.rank(), NcPoly(part.algebra()->ring()));
    for (std::size_t i = 0; i < part.rank(); ++i) entries[i * sum.rank() + i] = NcPoly::from_int(part.algebra()->ring(), 1);
    return GradedMatrix(part, sum, std::move(entries));
  };
  auto project = [](const FreeModule& rest, const FreeModule& part) {
    FreeModule sum = rest.direct_sum(part);
    std::vector<NcPoly> entries(sum.rank() * part.rank(), NcPoly(part.algebra()->ring()));
    for (std::size_t i = 0; i < part.rank(); ++i)
      entries[(rest.rank() + i) * part.rank() + i] = NcPoly::from_int(part.algebra()->ring(), 1);
    return GradedMatrix(sum, part, std::move(entries));
  };
  Factorization shifted = translate(s);
  FactorizationMorphism inc =
      verify_morphism(t, cone, inject(t.G(), tau_inv_tw.target()), inject(t.F(), s.G()));
  FactorizationMorphism proj =
      verify_morphism(cone, shifted, project(t.G(), tau_inv_tw.target()), project(t.F(), s.G()));
  return Cone{cone, inc, proj};
}

}  // namespace ncmf
