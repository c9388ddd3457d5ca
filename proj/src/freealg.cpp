#include "ncmf/freealg.hpp"

#include <algorithm>
#include <set>

#include "ncmf/error.hpp"

namespace ncmf {

PolyRing::PolyRing(Field field, std::vector<Generator> gens) : field_(field), gens_(std::move(gens)) {
  if (gens_.size() > 250) throw Error(ErrorKind::InvalidArgument, "too many generators");
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.degree < 1)
      throw Error(ErrorKind::InvalidArgument, "generator " + g.name + " must have degree >= 1");
    if (!seen.insert(g.name).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate generator " + g.name);
  }
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

Word PolyRing::generator_word(std::size_t i) const {
  return Word(std::string(1, static_cast<char>(i)), gens_.at(i).degree);
}

Word PolyRing::make_word(const std::vector<std::size_t>& indices) const {
  std::string s;
  int deg = 0;
  for (auto i : indices) {
    s.push_back(static_cast<char>(i));
    deg += gens_.at(i).degree;
  }
  return Word(std::move(s), deg);
}

int PolyRing::degree_of(const std::string& letters) const {
  int deg = 0;
  for (char c : letters) deg += gens_[static_cast<unsigned char>(c)].degree;
  return deg;
}

std::string PolyRing::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.length()) {
    std::size_t j = i;
    while (j < w.length() && w.letter(j) == w.letter(i)) ++j;
    if (!out.empty()) out += "*";
    out += gens_[w.letter(i)].name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

bool PolyRing::same_as(const PolyRing& o) const {
  if (this == &o) return true;
  if (!(field_ == o.field_) || gens_.size() != o.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree) return false;
  return true;
}

void check_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!a || !b) throw Error(ErrorKind::ContextMismatch, "polynomial without algebra context");
  if (a != b && !a->same_as(*b))
    throw Error(ErrorKind::ContextMismatch, "polynomials over different fields or generator sets");
}

void TermAccumulator::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  const Field& k = ring_->field();
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second = k.add(it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TermAccumulator::add(const NcPoly& p, const Scalar& c) {
  const Field& k = ring_->field();
  for (const auto& t : p.terms()) add(t.word, k.mul(t.coeff, c));
}

void TermAccumulator::add(const NcPoly& p) {
  for (const auto& t : p.terms()) add(t.word, t.coeff);
}

NcPoly TermAccumulator::finish() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.push_back({w, c});
  return NcPoly(ring_, std::move(out));
}

NcPoly NcPoly::constant(RingPtr ring, const Scalar& c) {
  return monomial(std::move(ring), Word(), c);
}

NcPoly NcPoly::from_int(RingPtr ring, long long n) {
  Scalar c = ring->field().from_int(n);
  return constant(std::move(ring), c);
}

NcPoly NcPoly::generator(RingPtr ring, std::size_t i) {
  Word w = ring->generator_word(i);
  Scalar one = ring->field().one();
  return monomial(std::move(ring), std::move(w), one);
}

NcPoly NcPoly::monomial(RingPtr ring, Word w, const Scalar& c) {
  if (c.is_zero()) return NcPoly(std::move(ring));
  return NcPoly(std::move(ring), std::vector<Term>{{std::move(w), c}});
}

NcPoly NcPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
  TermAccumulator acc(ring);
  for (const auto& t : terms) acc.add(t.word, t.coeff);
  return acc.finish();
}

std::optional<int> NcPoly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.front().word.degree();
  for (const auto& t : terms_)
    if (t.word.degree() != d) return std::nullopt;
  return d;
}

bool NcPoly::is_homogeneous() const { return terms_.empty() || homogeneous_degree().has_value(); }

int NcPoly::max_degree() const { return terms_.empty() ? -1 : terms_.front().word.degree(); }

NcPoly NcPoly::component(int degree) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.word.degree() == degree) out.push_back(t);
  return NcPoly(ring_, std::move(out));
}

Scalar NcPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().word.empty()) return terms_.back().coeff;
  return ring_->field().zero();
}

Scalar NcPoly::coefficient(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const Word& x) { return t.word > x; });
  if (it != terms_.end() && it->word == w) return it->coeff;
  return ring_->field().zero();
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
  check_same_ring(ring_, o.ring_);
  const Field& k = field();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].word > o.terms_[j].word)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].word > terms_[i].word) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar c = k.add(terms_[i].coeff, o.terms_[j].coeff);
      if (!c.is_zero()) out.push_back({terms_[i].word, c});
      ++i;
      ++j;
    }
  }
  return NcPoly(ring_, std::move(out));
}

NcPoly NcPoly::operator-() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = field().neg(t.coeff);
  return NcPoly(ring_, std::move(out));
}

NcPoly NcPoly::operator-(const NcPoly& o) const { return *this + (-o); }

NcPoly NcPoly::operator*(const NcPoly& o) const {
  check_same_ring(ring_, o.ring_);
  if (terms_.empty() || o.terms_.empty()) return NcPoly(ring_);
  const Field& k = field();
  TermAccumulator acc(ring_);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc.add(a.word * b.word, k.mul(a.coeff, b.coeff));
  return acc.finish();
}

NcPoly NcPoly::scaled(const Scalar& c) const {
  if (c.is_zero()) return NcPoly(ring_);
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = field().mul(t.coeff, c);
  return NcPoly(ring_, std::move(out));
}

bool operator==(const NcPoly& a, const NcPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].word == b.terms_[i].word) || !(a.terms_[i].coeff == b.terms_[i].coeff))
      return false;
  return true;
}

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  const Field& k = field();
  std::string out;
  for (const auto& t : terms_) {
    std::string c = k.format(t.coeff);
    bool negative = c[0] == '-';
    if (negative) c.erase(0, 1);
    std::string body;
    if (t.word.empty()) {
      body = c;
    } else {
      body = ring_->format_word(t.word);
      if (c != "1") body = c + "*" + body;
    }
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

NcPoly substitute(const NcPoly& p, std::span<const NcPoly> images) {
  const RingPtr& ring = p.ring();
  if (images.size() != ring->num_generators())
    throw Error(ErrorKind::ImageDegreeMismatch, "one image per generator required");
  for (std::size_t i = 0; i < images.size(); ++i) {
    check_same_ring(ring, images[i].ring());
    if (!images[i].is_zero() && images[i].homogeneous_degree() != ring->generators()[i].degree)
      throw Error(ErrorKind::ImageDegreeMismatch,
                  "image of " + ring->generators()[i].name + " has the wrong degree");
  }
  TermAccumulator acc(ring);
  for (const auto& t : p.terms()) {
    NcPoly prod = NcPoly::constant(ring, t.coeff);
    for (std::size_t i = 0; i < t.word.length() && !prod.is_zero(); ++i)
      prod = prod * images[t.word.letter(i)];
    acc.add(prod);
  }
  return acc.finish();
}

}  // namespace ncmf
