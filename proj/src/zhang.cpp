#include "ncmf/zhang.hpp"

#include "ncmf/error.hpp"

namespace ncmf {

GradedEndo TwistingSystem::zeta_power(long long n) const {
  std::lock_guard lock(mu_);
  auto it = powers_.find(n);
  if (it == powers_.end()) it = powers_.emplace(n, endo_power(zeta_, n)).first;
  return it->second;
}

TwistPtr make_twist_system(const ElementPtr& elem, const GradedEndo& zeta) {
  const AlgebraPtr& a = elem->ambient();
  if (zeta.algebra() != a) throw Error(ErrorKind::ContextMismatch, "zeta is defined on a different algebra");
  GradedEndo z = check_endo(a, zeta.images());
  const Field& k = a->field();
  NcPoly zf = z.apply(elem->f());
  if (zf.is_zero() || zf.leading_word() != elem->f().leading_word())
    throw Error(ErrorKind::NotEigenvector, "zeta(f) = " + zf.to_string() + " is not a multiple of f");
  Scalar c = k.div(zf.leading_coeff(), elem->f().leading_coeff());
  if (!(zf == elem->f().scaled(c)))
    throw Error(ErrorKind::NotEigenvector, "zeta(f) = " + zf.to_string() + " is not a multiple of f");
  const auto& gens = a->ring()->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    NcPoly x = NcPoly::generator(a->ring(), i);
    if (!(elem->sigma().apply(z.apply(x)) == z.apply(elem->sigma().apply(x))))
      throw Error(ErrorKind::DoesNotCommuteWithSigma, "sigma zeta and zeta sigma differ on " + gens[i].name);
  }
  auto out = std::make_shared<TwistingSystem>();
  out->elem_ = elem;
  out->zeta_ = std::move(z);
  out->c_ = c;
  return out;
}

NcPoly zhang_mul(const TwistingSystem& z, const NcPoly& x, const NcPoly& y) {
  const AlgebraPtr& a = z.base();
  TermAccumulator acc(a->ring());
  if (x.is_zero() || y.is_zero()) return NcPoly(a->ring());
  for (int m = 0; m <= y.max_degree(); ++m) {
    NcPoly ym = y.component(m);
    if (ym.is_zero()) continue;
    acc.add(a->multiply(z.zeta_power(m).apply(x), ym));
  }
  return acc.finish();
}

std::vector<NcPoly> sigma_hat_images(const TwistingSystem& z) {
  const AlgebraPtr& a = z.base();
  const Field& k = a->field();
  GradedEndo zd = z.zeta_power(z.degree());
  std::vector<NcPoly> out;
  const auto& gens = a->ring()->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    NcPoly x = NcPoly::generator(a->ring(), i);
    Scalar s = k.inv(k.pow(z.c(), gens[i].degree));
    out.push_back(z.element()->sigma().apply(zd.apply(x)).scaled(s));
  }
  return out;
}

bool is_central_in_twist(const TwistingSystem& z) {
  std::vector<NcPoly> img = sigma_hat_images(z);
  for (std::size_t i = 0; i < img.size(); ++i)
    if (!(img[i] == NcPoly::generator(z.base()->ring(), i))) return false;
  return true;
}

namespace {

// x_1 * (x_2 * (... * x_n)) evaluated in A.
NcPoly star_eval_letters(const TwistingSystem& z, const std::string& letters,
                         std::unordered_map<std::string, NcPoly>& memo) {
  const AlgebraPtr& a = z.base();
  if (letters.empty()) return NcPoly::from_int(a->ring(), 1);
  if (auto it = memo.find(letters); it != memo.end()) return it->second;
  std::string rest = letters.substr(1);
  NcPoly tail = star_eval_letters(z, rest, memo);
  NcPoly head = NcPoly::generator(a->ring(), static_cast<unsigned char>(letters[0]));
  NcPoly v = a->multiply(z.zeta_power(a->ring()->degree_of(rest)).apply(head), tail);
  memo.emplace(letters, v);
  return v;
}

}  // namespace

AlgebraPresentation zhang_relations(const TwistingSystem& z, int degree) {
  const AlgebraPtr& a = z.base();
  a->check_degree(degree);
  const Field& k = a->field();
  AlgebraPtr free = make_algebra(AlgebraPresentation{a->ring(), {}}, degree);
  std::unordered_map<std::string, NcPoly> memo;
  std::vector<NcPoly> rels;
  for (int t = 1; t <= degree; ++t) {
    const auto& words = free->basis_of_degree(t);
    std::vector<Vec> rows;
    for (const auto& w : words) rows.push_back(a->coordinates(star_eval_letters(z, w.letters(), memo), t));
    std::vector<Vec> kernel = left_kernel(Matrix(k, a->dim(t), rows));
    if (kernel.empty()) continue;
    SpanBuilder span(k, words.size());
    auto to_vec = [&](const NcPoly& p) {
      Vec v(words.size(), k.zero());
      for (const auto& term : p.terms()) v[free->index_of(term.word)] = term.coeff;
      return v;
    };
    for (const auto& r : rels) {
      int s = *r.homogeneous_degree();
      for (int du = 0; du <= t - s; ++du)
        for (const auto& u : free->basis_of_degree(du))
          for (const auto& v : free->basis_of_degree(t - s - du)) {
            NcPoly prod = NcPoly::monomial(a->ring(), u, k.one()) * r * NcPoly::monomial(a->ring(), v, k.one());
            span.add(to_vec(prod));
          }
    }
    for (const auto& kv : kernel) {
      if (!span.add(kv)) continue;
      std::vector<Term> terms;
      for (std::size_t i = 0; i < kv.size(); ++i)
        if (!kv[i].is_zero()) terms.push_back({words[i], kv[i]});
      NcPoly rel = NcPoly::from_terms(a->ring(), std::move(terms));
      rels.push_back(rel.scaled(k.inv(rel.leading_coeff())));
    }
  }
  return AlgebraPresentation{a->ring(), std::move(rels)};
}

std::shared_ptr<const ZhangAlgebra> ZhangAlgebra::materialize(TwistPtr z, int degree_bound, int relation_degree) {
  const AlgebraPtr& a = z->base();
  a->check_degree(degree_bound);
  if (relation_degree < 0) relation_degree = a->presentation().max_relation_degree();
  std::shared_ptr<ZhangAlgebra> out(new ZhangAlgebra());
  out->sys_ = z;
  out->twisted_ = make_algebra(zhang_relations(*z, std::min(relation_degree, degree_bound)), degree_bound);
  if (hilbert_function(*out->twisted_, degree_bound) != hilbert_function(*a, degree_bound))
    throw Error(ErrorKind::VerificationFailed,
                "twisted presentation has the wrong Hilbert function; relations beyond degree " +
                    std::to_string(relation_degree) + " are needed");
  const Field& k = a->field();
  NcPoly g = out->to_twisted(z->element()->f().scaled(k.pow(z->c(), z->degree())));
  out->elem_ = NormalElement::certify(out->twisted_, g);
  GradedEndo expected = sigma_hat(*out);
  if (!(expected == out->elem_->sigma()))
    throw Error(ErrorKind::VerificationFailed, "normalizing automorphism of c^d f in the twist differs from sigma-hat");
  return out;
}

NcPoly ZhangAlgebra::star_eval(const Word& w) const {
  std::lock_guard lock(memo_mu_);
  return star_eval_letters(*sys_, w.letters(), eval_memo_);
}

const Matrix& ZhangAlgebra::evaluation_matrix(int n) const {
  {
    std::lock_guard lock(mat_mu_);
    if (auto it = eval_.find(n); it != eval_.end()) return it->second;
  }
  std::vector<Vec> rows;
  for (const auto& w : twisted_->basis_of_degree(n)) rows.push_back(base()->coordinates(star_eval(w), n));
  Matrix m(base()->field(), base()->dim(n), rows);
  std::lock_guard lock(mat_mu_);
  return eval_.emplace(n, std::move(m)).first->second;
}

NcPoly ZhangAlgebra::to_twisted(const NcPoly& a) const {
  NcPoly nf = base()->normal_form(a);
  NcPoly out(twisted_->ring());
  if (nf.is_zero()) return out;
  for (int t = 0; t <= nf.max_degree(); ++t) {
    NcPoly comp = nf.component(t);
    if (comp.is_zero()) continue;
    auto v = solve_left(evaluation_matrix(t), base()->coordinates(comp, t));
    if (!v) throw Error(ErrorKind::VerificationFailed, "*-evaluation is not onto in degree " + std::to_string(t));
    out += twisted_->from_coordinates(t, *v);
  }
  return out;
}

NcPoly ZhangAlgebra::from_twisted(const NcPoly& p) const {
  NcPoly nf = twisted_->normal_form(p);
  TermAccumulator acc(base()->ring());
  for (const auto& term : nf.terms()) acc.add(star_eval(term.word), term.coeff);
  return acc.finish();
}

GradedEndo sigma_hat(const ZhangAlgebra& z) {
  const TwistingSystem& sys = *z.system();
  std::vector<NcPoly> img = sigma_hat_images(sys);
  const NcPoly& f = sys.element()->f();
  std::vector<NcPoly> twisted;
  for (std::size_t i = 0; i < img.size(); ++i) {
    NcPoly x = NcPoly::generator(z.base()->ring(), i);
    if (!(zhang_mul(sys, x, f) == zhang_mul(sys, f, img[i])))
      throw Error(ErrorKind::VerificationFailed, "a * f = f * sigma-hat(a) fails for " +
                                                     z.base()->ring()->generators()[i].name);
    twisted.push_back(z.to_twisted(img[i]));
  }
  return check_endo(z.twisted(), std::move(twisted));
}

GradedMatrix twist_module_matrix(const ZhangAlgebra& z, const GradedMatrix& m) {
  if (m.algebra() != z.base()) throw Error(ErrorKind::ContextMismatch, "matrix is not over the base algebra");
  std::vector<NcPoly> entries;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      entries.push_back(z.to_twisted(z.system()->zeta_power(-m.target().degree(j)).apply(m.at(i, j))));
  return GradedMatrix(m.source().over(z.twisted()), m.target().over(z.twisted()), std::move(entries));
}

namespace {

GradedMatrix scale_rows_by_c_power(const GradedMatrix& m, const Scalar& c, int sign) {
  const Field& k = m.algebra()->field();
  std::vector<NcPoly> entries;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Scalar s = k.pow(c, sign * static_cast<long long>(m.source().degree(i)));
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(m.at(i, j).scaled(s));
  }
  return GradedMatrix(m.source(), m.target(), std::move(entries));
}

}  // namespace

Factorization transport_tmf(const ZhangAlgebra& z, const Factorization& t) {
  const TwistingSystem& sys = *z.system();
  if (t.element()->ambient() != z.base() || !(t.element()->f() == sys.element()->f()))
    throw Error(ErrorKind::ContextMismatch, "factorization is not of the twisting system's element");
  GradedMatrix phi = twist_module_matrix(z, t.phi());
  GradedMatrix tau = scale_rows_by_c_power(twist_module_matrix(z, t.tau()), sys.c(), 1);
  try {
    return verify_tmf(z.twisted_element(), phi, tau);
  } catch (const Error& e) {
    throw Error(ErrorKind::TransportVerificationFailed, e.what());
  }
}

Factorization untransport_tmf(const ZhangAlgebra& z, const Factorization& t) {
  const TwistingSystem& sys = *z.system();
  if (t.element()->ambient() != z.twisted())
    throw Error(ErrorKind::ContextMismatch, "factorization is not over the twisted algebra");
  auto back = [&](const GradedMatrix& m) {
    std::vector<NcPoly> entries;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        entries.push_back(sys.zeta_power(m.target().degree(j)).apply(z.from_twisted(m.at(i, j))));
    return GradedMatrix(m.source().over(z.base()), m.target().over(z.base()), std::move(entries));
  };
  GradedMatrix phi = back(t.phi());
  GradedMatrix tau = scale_rows_by_c_power(back(t.tau()), sys.c(), -1);
  try {
    return verify_tmf(sys.element(), phi, tau);
  } catch (const Error& e) {
    throw Error(ErrorKind::TransportVerificationFailed, e.what());
  }
}

}  // namespace ncmf
