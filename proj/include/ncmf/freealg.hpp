#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncmf/field.hpp"

namespace ncmf {

struct Generator {
  std::string name;
  int degree = 1;
};

// A monomial: generator indices stored one per char. Ordered deglex: weighted
// degree first, then lexicographically by declared generator order.
class Word {
 public:
  Word() = default;
  Word(std::string letters, int degree) : letters_(std::move(letters)), degree_(degree) {}

  const std::string& letters() const { return letters_; }
  int degree() const { return degree_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::size_t letter(std::size_t i) const { return static_cast<unsigned char>(letters_[i]); }

  Word operator*(const Word& o) const { return Word(letters_ + o.letters_, degree_ + o.degree_); }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    int c = a.letters_.compare(b.letters_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  std::string letters_;
  int degree_ = 0;
};

// The free algebra k<x_1..x_n> on weighted generators.
class PolyRing {
 public:
  PolyRing(Field field, std::vector<Generator> gens);

  const Field& field() const { return field_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t num_generators() const { return gens_.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  Word generator_word(std::size_t i) const;
  Word make_word(const std::vector<std::size_t>& indices) const;
  int degree_of(const std::string& letters) const;
  std::string format_word(const Word& w) const;

  bool same_as(const PolyRing& o) const;

 private:
  Field field_;
  std::vector<Generator> gens_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

struct Term {
  Word word;
  Scalar coeff;
};

class NcPoly {
 public:
  NcPoly() = default;
  explicit NcPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static NcPoly constant(RingPtr ring, const Scalar& c);
  static NcPoly from_int(RingPtr ring, long long n);
  static NcPoly generator(RingPtr ring, std::size_t i);
  static NcPoly monomial(RingPtr ring, Word w, const Scalar& c);
  // Terms in any order; duplicates are merged and zeros dropped.
  static NcPoly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Degree of a nonzero homogeneous polynomial; nullopt for zero or mixed.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const;
  int max_degree() const;
  NcPoly component(int degree) const;
  Scalar constant_term() const;

  const Word& leading_word() const { return terms_.front().word; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  Scalar coefficient(const Word& w) const;

  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly operator-() const;
  NcPoly operator*(const NcPoly& o) const;
  NcPoly scaled(const Scalar& c) const;
  NcPoly& operator+=(const NcPoly& o) { return *this = *this + o; }

  friend bool operator==(const NcPoly& a, const NcPoly& b);

  std::string to_string() const;

 private:
  NcPoly(RingPtr ring, std::vector<Term> sorted) : ring_(std::move(ring)), terms_(std::move(sorted)) {}
  friend class TermAccumulator;
  RingPtr ring_;
  std::vector<Term> terms_;  // strictly descending words, nonzero coefficients
};

// Sparse linear combination of words, used to build polynomials incrementally.
class TermAccumulator {
 public:
  explicit TermAccumulator(RingPtr ring) : ring_(std::move(ring)) {}
  void add(const Word& w, const Scalar& c);
  void add(const NcPoly& p, const Scalar& c);
  void add(const NcPoly& p);
  bool empty() const { return terms_.empty(); }
  NcPoly finish() const;

 private:
  RingPtr ring_;
  std::map<Word, Scalar, std::greater<>> terms_;
};

void check_same_ring(const RingPtr& a, const RingPtr& b);

// Substitutes generator images into p inside the free algebra (no relations).
NcPoly substitute(const NcPoly& p, std::span<const NcPoly> images);

}  // namespace ncmf
