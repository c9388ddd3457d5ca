#include "ncmf/gbasis.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ncmf/error.hpp"

namespace ncmf {

namespace {

struct Overlap {
  std::size_t left, right;  // lw(left) = u m, lw(right) = m v
  std::size_t shared;       // |m|
};

class Reducer {
 public:
  explicit Reducer(const RingPtr& ring) : ring_(ring) {}

  void add(const NcPoly& g) {
    index_.emplace(g.leading_word().letters(), elements_.size());
    lengths_.insert(g.leading_word().length());
    elements_.push_back(g);
  }

  const std::vector<NcPoly>& elements() const { return elements_; }

  std::optional<std::pair<std::size_t, std::size_t>> find(const std::string& s) const {
    for (std::size_t end = 1; end <= s.size(); ++end)
      for (auto len : lengths_) {
        if (len > end) break;
        auto it = index_.find(s.substr(end - len, len));
        if (it != index_.end()) return std::make_pair(end - len, it->second);
      }
    return std::nullopt;
  }

  NcPoly reduce(const NcPoly& p) const {
    const Field& k = ring_->field();
    std::map<Word, Scalar, std::greater<>> work;
    for (const auto& t : p.terms()) work.emplace(t.word, t.coeff);
    std::vector<Term> out;
    while (!work.empty()) {
      auto it = work.begin();
      Word w = it->first;
      Scalar c = it->second;
      work.erase(it);
      auto hit = find(w.letters());
      if (!hit) {
        out.push_back({w, c});
        continue;
      }
      const NcPoly& g = elements_[hit->second];
      std::size_t len = g.leading_word().length();
      std::string pre = w.letters().substr(0, hit->first);
      std::string post = w.letters().substr(hit->first + len);
      for (std::size_t i = 1; i < g.terms().size(); ++i) {
        const Term& t = g.terms()[i];
        Word nw(pre + t.word.letters() + post, w.degree());
        Scalar delta = k.neg(k.mul(c, t.coeff));
        auto [jt, inserted] = work.try_emplace(nw, delta);
        if (!inserted) {
          jt->second = k.add(jt->second, delta);
          if (jt->second.is_zero()) work.erase(jt);
        }
      }
    }
    return NcPoly::from_terms(ring_, std::move(out));
  }

 private:
  RingPtr ring_;
  std::vector<NcPoly> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<std::size_t> lengths_;
};

NcPoly s_polynomial(const RingPtr& ring, const NcPoly& a, const NcPoly& b, std::size_t shared) {
  const std::string& la = a.leading_word().letters();
  const std::string& lb = b.leading_word().letters();
  std::string u = la.substr(0, la.size() - shared);
  std::string v = lb.substr(shared);
  Scalar one = ring->field().one();
  NcPoly right = NcPoly::monomial(ring, Word(v, ring->degree_of(v)), one);
  NcPoly left = NcPoly::monomial(ring, Word(u, ring->degree_of(u)), one);
  return a * right - left * b;
}

}  // namespace

int AlgebraPresentation::max_relation_degree() const {
  int d = 0;
  for (const auto& r : relations) d = std::max(d, r.max_degree());
  return d;
}

GroebnerBasis groebner(const AlgebraPresentation& pres, int degree_bound) {
  const RingPtr& ring = pres.ring;
  if (!ring) throw Error(ErrorKind::InvalidArgument, "presentation without generators");
  std::map<int, std::vector<NcPoly>> pending;
  for (const auto& r : pres.relations) {
    check_same_ring(ring, r.ring());
    if (r.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero relation");
    auto deg = r.homogeneous_degree();
    if (!deg) throw Error(ErrorKind::InhomogeneousRelation, r.to_string());
    pending[*deg].push_back(r);
  }
  if (degree_bound < pres.max_relation_degree())
    throw Error(ErrorKind::TruncationExceeded,
                "truncation degree " + std::to_string(degree_bound) + " below relation degree");

  const Field& k = ring->field();
  Reducer red(ring);
  std::map<int, std::deque<Overlap>> overlaps;

  auto add_overlaps = [&](std::size_t fresh) {
    const auto& els = red.elements();
    auto consider = [&](std::size_t l, std::size_t r) {
      const std::string& a = els[l].leading_word().letters();
      const std::string& b = els[r].leading_word().letters();
      std::size_t lim = std::min(a.size(), b.size());
      for (std::size_t s = 1; s < lim; ++s) {
        if (a.compare(a.size() - s, s, b, 0, s) != 0) continue;
        int deg = els[l].leading_word().degree() + ring->degree_of(b.substr(s));
        if (deg <= degree_bound) overlaps[deg].push_back({l, r, s});
      }
    };
    for (std::size_t i = 0; i <= fresh; ++i) {
      consider(fresh, i);
      if (i != fresh) consider(i, fresh);
    }
  };

  for (int n = 1; n <= degree_bound; ++n) {
    std::vector<NcPoly> cands;
    if (auto it = pending.find(n); it != pending.end())
      for (const auto& r : it->second) cands.push_back(red.reduce(r));
    if (auto it = overlaps.find(n); it != overlaps.end())
      for (const auto& o : it->second)
        cands.push_back(red.reduce(
            s_polynomial(ring, red.elements()[o.left], red.elements()[o.right], o.shared)));
    std::set<Word, std::greater<>> words;
    for (const auto& c : cands)
      for (const auto& t : c.terms()) words.insert(t.word);
    if (words.empty()) continue;
    std::vector<Word> cols(words.begin(), words.end());
    std::map<Word, std::size_t, std::greater<>> col_of;
    for (std::size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;
    std::vector<Vec> rows;
    for (const auto& c : cands) {
      if (c.is_zero()) continue;
      Vec v(cols.size(), k.zero());
      for (const auto& t : c.terms()) v[col_of[t.word]] = t.coeff;
      rows.push_back(std::move(v));
    }
    Echelon e = rref_rows(k, cols.size(), rows);
    for (const auto& row : e.rows) {
      std::vector<Term> terms;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (!row[j].is_zero()) terms.push_back({cols[j], row[j]});
      red.add(NcPoly::from_terms(ring, std::move(terms)));
      add_overlaps(red.elements().size() - 1);
    }
  }

  GroebnerBasis gb;
  gb.pres_ = pres;
  gb.degree_bound_ = degree_bound;
  gb.elements_ = red.elements();
  return gb;
}

QuotientAlgebra::QuotientAlgebra(GroebnerBasis gb) : gb_(std::move(gb)) {
  std::set<std::size_t> lens;
  for (std::size_t i = 0; i < gb_.elements().size(); ++i) {
    const Word& lw = gb_.elements()[i].leading_word();
    lead_index_.emplace(lw.letters(), i);
    lens.insert(lw.length());
  }
  lead_lengths_.assign(lens.begin(), lens.end());
}

void QuotientAlgebra::check_degree(int n) const {
  if (n > degree_bound())
    throw Error(ErrorKind::TruncationExceeded, "degree " + std::to_string(n) +
                                                   " exceeds truncation degree " +
                                                   std::to_string(degree_bound()));
}

std::optional<std::pair<std::size_t, std::size_t>> QuotientAlgebra::find_reducible(
    const std::string& s) const {
  for (std::size_t end = 1; end <= s.size(); ++end)
    for (auto len : lead_lengths_) {
      if (len > end) break;
      auto it = lead_index_.find(s.substr(end - len, len));
      if (it != lead_index_.end()) return std::make_pair(end - len, it->second);
    }
  return std::nullopt;
}

bool QuotientAlgebra::is_normal_word(const std::string& letters) const {
  return !find_reducible(letters).has_value();
}

const std::vector<Term>& QuotientAlgebra::normal_form_word(const Word& w) const {
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(w.letters());
    if (it != memo_.end()) return it->second;
  }
  std::vector<Term> result;
  auto hit = find_reducible(w.letters());
  if (!hit) {
    result.push_back({w, field().one()});
  } else {
    const Field& k = field();
    const NcPoly& g = gb_.elements()[hit->second];
    std::size_t len = g.leading_word().length();
    std::string pre = w.letters().substr(0, hit->first);
    std::string post = w.letters().substr(hit->first + len);
    TermAccumulator acc(ring());
    for (std::size_t i = 1; i < g.terms().size(); ++i) {
      const Term& t = g.terms()[i];
      Word nw(pre + t.word.letters() + post, w.degree());
      Scalar c = k.neg(t.coeff);
      for (const auto& r : normal_form_word(nw)) acc.add(r.word, k.mul(c, r.coeff));
    }
    result = acc.finish().terms();
  }
  std::lock_guard lock(mu_);
  return memo_.try_emplace(w.letters(), std::move(result)).first->second;
}

NcPoly QuotientAlgebra::normal_form(const NcPoly& p) const {
  check_same_ring(ring(), p.ring());
  if (p.is_zero()) return NcPoly(ring());
  check_degree(p.max_degree());
  TermAccumulator acc(ring());
  const Field& k = field();
  for (const auto& t : p.terms())
    for (const auto& r : normal_form_word(t.word)) acc.add(r.word, k.mul(t.coeff, r.coeff));
  return acc.finish();
}

const std::vector<Word>& QuotientAlgebra::basis_of_degree(int n) const {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
  check_degree(n);
  {
    std::lock_guard lock(mu_);
    auto it = bases_.find(n);
    if (it != bases_.end()) return it->second.words;
  }
  DegreeBasis b;
  if (n == 0) {
    b.words.push_back(Word());
  } else {
    const auto& gens = ring()->generators();
    for (std::size_t x = 0; x < gens.size(); ++x) {
      if (gens[x].degree > n) continue;
      for (const auto& u : basis_of_degree(n - gens[x].degree)) {
        std::string s = u.letters() + static_cast<char>(x);
        bool ok = true;
        for (auto len : lead_lengths_) {
          if (len > s.size()) break;
          if (lead_index_.count(s.substr(s.size() - len))) {
            ok = false;
            break;
          }
        }
        if (ok) b.words.emplace_back(std::move(s), n);
      }
    }
    std::sort(b.words.begin(), b.words.end());
  }
  for (std::size_t i = 0; i < b.words.size(); ++i) b.index.emplace(b.words[i].letters(), i);
  std::lock_guard lock(mu_);
  return bases_.try_emplace(n, std::move(b)).first->second.words;
}

std::size_t QuotientAlgebra::index_of(const Word& w) const {
  basis_of_degree(w.degree());
  std::lock_guard lock(mu_);
  const auto& idx = bases_.at(w.degree()).index;
  auto it = idx.find(w.letters());
  if (it == idx.end()) throw Error(ErrorKind::InvalidArgument, "word is not normal");
  return it->second;
}

Vec QuotientAlgebra::coordinates(const NcPoly& nf, int n) const {
  Vec v(dim(n), field().zero());
  for (const auto& t : nf.terms()) {
    if (t.word.degree() != n) throw Error(ErrorKind::InvalidArgument, "coordinates: wrong degree");
    v[index_of(t.word)] = t.coeff;
  }
  return v;
}

NcPoly QuotientAlgebra::from_coordinates(int n, const Vec& v) const {
  const auto& words = basis_of_degree(n);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) terms.push_back({words[i], v[i]});
  return NcPoly::from_terms(ring(), std::move(terms));
}

AlgebraPtr make_algebra(const AlgebraPresentation& pres, int degree_bound) {
  return std::make_shared<const QuotientAlgebra>(groebner(pres, degree_bound));
}

NcPoly normal_form(const QuotientAlgebra& q, const NcPoly& p) { return q.normal_form(p); }

const std::vector<Word>& basis_of_degree(const QuotientAlgebra& q, int n) {
  return q.basis_of_degree(n);
}

std::vector<int> hilbert_function(const QuotientAlgebra& q, int up_to) {
  std::vector<int> h;
  for (int n = 0; n <= up_to; ++n) h.push_back(static_cast<int>(q.dim(n)));
  return h;
}

AlgebraPtr quotient_by_element(const QuotientAlgebra& a, const NcPoly& f) {
  NcPoly g = a.normal_form(f);
  if (g.is_zero()) throw Error(ErrorKind::InvalidArgument, "quotient by the zero element");
  if (!g.homogeneous_degree())
    throw Error(ErrorKind::InhomogeneousRelation, "element must be homogeneous");
  AlgebraPresentation pres = a.presentation();
  pres.relations.push_back(g);
  return make_algebra(pres, a.degree_bound());
}

}  // namespace ncmf
