#include "ncmf/autos.hpp"

#include <mutex>
#include <set>
#include <unordered_map>

#include "ncmf/error.hpp"

namespace ncmf {

struct GradedEndo::Cache {
  std::mutex mu;
  std::unordered_map<std::string, NcPoly> words;
  std::once_flag inverse_once;
  std::unique_ptr<GradedEndo> inverse;
};

namespace {

std::set<int> generator_degrees(const RingPtr& ring) {
  std::set<int> out;
  for (const auto& g : ring->generators()) out.insert(g.degree);
  return out;
}

// Matrix of e on A_n: row i = coordinates of e(basis word i).
Matrix slice_matrix(const GradedEndo& e, int n) {
  const QuotientAlgebra& a = *e.algebra();
  const auto& words = a.basis_of_degree(n);
  Matrix m(a.field(), words.size(), words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    NcPoly img = e.apply(NcPoly::monomial(a.ring(), words[i], a.field().one()));
    Vec c = a.coordinates(img, n);
    for (std::size_t j = 0; j < c.size(); ++j) m.at(i, j) = c[j];
  }
  return m;
}

}  // namespace

GradedEndo::GradedEndo(AlgebraPtr alg, std::vector<NcPoly> images)
    : alg_(std::move(alg)), cache_(std::make_shared<Cache>()) {
  const RingPtr& ring = alg_->ring();
  if (images.size() != ring->num_generators())
    throw Error(ErrorKind::ImageDegreeMismatch, "one image per generator required");
  for (std::size_t i = 0; i < images.size(); ++i) {
    NcPoly img = alg_->normal_form(images[i]);
    if (!img.is_zero() && img.homogeneous_degree() != ring->generators()[i].degree)
      throw Error(ErrorKind::ImageDegreeMismatch,
                  "image of " + ring->generators()[i].name + " is not homogeneous of degree " +
                      std::to_string(ring->generators()[i].degree));
    images_.push_back(std::move(img));
  }
}

GradedEndo GradedEndo::identity(AlgebraPtr alg) {
  std::vector<NcPoly> imgs;
  for (std::size_t i = 0; i < alg->ring()->num_generators(); ++i)
    imgs.push_back(NcPoly::generator(alg->ring(), i));
  return GradedEndo(std::move(alg), std::move(imgs));
}

NcPoly GradedEndo::apply(const NcPoly& p) const {
  const RingPtr& ring = alg_->ring();
  check_same_ring(ring, p.ring());
  TermAccumulator acc(ring);
  for (const auto& t : p.terms()) {
    const std::string& s = t.word.letters();
    NcPoly img;
    {
      std::lock_guard lock(cache_->mu);
      auto it = cache_->words.find(s);
      if (it != cache_->words.end()) img = it->second;
    }
    if (!img.ring()) {
      // Build left to right, reusing cached prefixes.
      std::size_t cut = s.size();
      NcPoly prefix = NcPoly::from_int(ring, 1);
      {
        std::lock_guard lock(cache_->mu);
        while (cut > 0) {
          auto it = cache_->words.find(s.substr(0, cut));
          if (it != cache_->words.end()) {
            prefix = it->second;
            break;
          }
          --cut;
        }
      }
      for (std::size_t i = cut; i < s.size(); ++i) {
        prefix = alg_->normal_form(prefix * images_[static_cast<unsigned char>(s[i])]);
        std::lock_guard lock(cache_->mu);
        cache_->words.try_emplace(s.substr(0, i + 1), prefix);
      }
      img = prefix;
    }
    acc.add(img, t.coeff);
  }
  return acc.finish();
}

bool GradedEndo::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!(images_[i] == NcPoly::generator(alg_->ring(), i))) return false;
  return true;
}

const GradedEndo& GradedEndo::inverse() const {
  std::call_once(cache_->inverse_once, [this] {
    const QuotientAlgebra& a = *alg_;
    const RingPtr& ring = a.ring();
    std::map<int, Matrix> slices;
    for (int e : generator_degrees(ring)) {
      Matrix m = slice_matrix(*this, e);
      if (rank(m) != m.rows())
        throw Error(ErrorKind::NotInvertible, "induced map on degree " + std::to_string(e) + " is singular");
      slices.emplace(e, std::move(m));
    }
    std::vector<NcPoly> pre;
    for (std::size_t i = 0; i < ring->num_generators(); ++i) {
      int e = ring->generators()[i].degree;
      Vec target = a.coordinates(NcPoly::generator(ring, i), e);
      auto v = solve_left(slices.at(e), target);
      if (!v) throw Error(ErrorKind::NotInvertible, "generator has no preimage");
      pre.push_back(a.from_coordinates(e, *v));
    }
    GradedEndo inv(alg_, std::move(pre));
    for (std::size_t i = 0; i < ring->num_generators(); ++i) {
      NcPoly x = NcPoly::generator(ring, i);
      if (!(apply(inv.image(i)) == x) || !(inv.apply(images_[i]) == x))
        throw Error(ErrorKind::NotInvertible, "inverse fails to compose to the identity");
    }
    cache_->inverse = std::make_unique<GradedEndo>(std::move(inv));
  });
  if (!cache_->inverse) throw Error(ErrorKind::NotInvertible, "endomorphism is not invertible");
  return *cache_->inverse;
}

NcPoly apply_endo(const GradedEndo& e, const NcPoly& p) { return e.apply(p); }

GradedEndo check_endo(const AlgebraPtr& alg, std::vector<NcPoly> images) {
  GradedEndo e(alg, std::move(images));
  for (const auto& rel : alg->presentation().relations) {
    NcPoly img = alg->normal_form(substitute(rel, e.images()));
    if (!img.is_zero())
      throw Error(ErrorKind::RelationNotPreserved, "relation " + rel.to_string() + " maps to " + img.to_string());
  }
  for (int d : generator_degrees(alg->ring())) {
    Matrix m = slice_matrix(e, d);
    if (rank(m) != m.rows()) throw Error(ErrorKind::NotInvertible, "degree " + std::to_string(d));
  }
  return e;
}

GradedEndo compose_endo(const GradedEndo& e1, const GradedEndo& e2) {
  if (e1.algebra() != e2.algebra()) check_same_ring(e1.algebra()->ring(), e2.algebra()->ring());
  std::vector<NcPoly> imgs;
  for (const auto& x : e2.images()) imgs.push_back(e1.apply(x));
  return GradedEndo(e1.algebra(), std::move(imgs));
}

GradedEndo invert_endo(const GradedEndo& e) { return e.inverse(); }

GradedEndo endo_power(const GradedEndo& e, long long n) {
  GradedEndo base = n < 0 ? e.inverse() : e;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  GradedEndo r = GradedEndo::identity(e.algebra());
  while (k) {
    if (k & 1) r = compose_endo(r, base);
    base = compose_endo(base, base);
    k >>= 1;
  }
  return r;
}

std::optional<int> endo_order(const GradedEndo& e, int limit) {
  GradedEndo p = e;
  for (int n = 1; n <= limit; ++n) {
    if (p.is_identity()) return n;
    p = compose_endo(e, p);
  }
  return std::nullopt;
}

RegularityReport is_regular(const QuotientAlgebra& a, const NcPoly& f, int m_max) {
  NcPoly g = a.normal_form(f);
  auto d = g.homogeneous_degree();
  if (!d) throw Error(ErrorKind::InvalidArgument, "f must be nonzero and homogeneous");
  a.check_degree(m_max + *d);
  RegularityReport rep;
  rep.bound = m_max;
  for (int m = 0; m <= m_max; ++m) {
    const auto& words = a.basis_of_degree(m);
    Matrix left(a.field(), words.size(), a.dim(m + *d)), right = left;
    for (std::size_t i = 0; i < words.size(); ++i) {
      NcPoly w = NcPoly::monomial(a.ring(), words[i], a.field().one());
      Vec l = a.coordinates(a.multiply(w, g), m + *d), r = a.coordinates(a.multiply(g, w), m + *d);
      for (std::size_t j = 0; j < l.size(); ++j) {
        left.at(i, j) = l[j];
        right.at(i, j) = r[j];
      }
    }
    if (rank(left) != words.size() || rank(right) != words.size()) {
      rep.regular = false;
      rep.failing_degree = m;
      rep.failing_side = rank(left) != words.size() ? "a -> a*f" : "a -> f*a";
      rep.bound = m;
      return rep;
    }
  }
  return rep;
}

NormalityCertificate normalizing_automorphism(const AlgebraPtr& alg, const NcPoly& f) {
  const QuotientAlgebra& a = *alg;
  NcPoly g = a.normal_form(f);
  auto d = g.homogeneous_degree();
  if (!d) throw Error(ErrorKind::InvalidArgument, "f must be nonzero and homogeneous");
  const RingPtr& ring = a.ring();
  std::map<int, Matrix> systems;
  std::vector<NcPoly> images;
  for (std::size_t i = 0; i < ring->num_generators(); ++i) {
    int e = ring->generators()[i].degree;
    a.check_degree(e + *d);
    auto it = systems.find(e);
    if (it == systems.end()) {
      const auto& words = a.basis_of_degree(e);
      Matrix m(a.field(), words.size(), a.dim(e + *d));
      for (std::size_t r = 0; r < words.size(); ++r) {
        Vec c = a.coordinates(a.multiply(g, NcPoly::monomial(ring, words[r], a.field().one())), e + *d);
        for (std::size_t j = 0; j < c.size(); ++j) m.at(r, j) = c[j];
      }
      if (!left_kernel(m).empty())
        throw Error(ErrorKind::AmbiguousSolution,
                    "u -> f u is not injective on degree " + std::to_string(e));
      it = systems.emplace(e, std::move(m)).first;
    }
    Vec target = a.coordinates(a.multiply(NcPoly::generator(ring, i), g), e + *d);
    auto u = solve_left(it->second, target);
    if (!u) throw Error(ErrorKind::NotNormal, ring->generators()[i].name + " f is not in f A");
    images.push_back(a.from_coordinates(e, *u));
  }
  GradedEndo sigma;
  try {
    sigma = check_endo(alg, std::move(images));
    sigma.inverse();
  } catch (const Error& err) {
    throw Error(ErrorKind::NotNormal, std::string("solved map is not a graded automorphism (") + err.what() + ")");
  }
  NormalityCertificate cert;
  cert.f = g;
  cert.sigma = sigma;
  cert.degree_bound = a.degree_bound();
  RegularityReport reg = is_regular(a, g, a.degree_bound() - *d);
  if (!reg.regular)
    throw Error(ErrorKind::AmbiguousSolution,
                "f is a zero divisor in degree " + std::to_string(*reg.failing_degree));
  cert.regularity_bound = reg.bound;
  return cert;
}

}  // namespace ncmf
