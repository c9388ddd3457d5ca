#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "ncmf/freealg.hpp"
#include "ncmf/linalg.hpp"

namespace ncmf {

struct AlgebraPresentation {
  RingPtr ring;
  std::vector<NcPoly> relations;

  int max_relation_degree() const;
};

class GroebnerBasis {
 public:
  const AlgebraPresentation& presentation() const { return pres_; }
  const RingPtr& ring() const { return pres_.ring; }
  int truncation_degree() const { return degree_bound_; }
  // Reduced, monic, homogeneous; listed in order of discovery (by degree).
  const std::vector<NcPoly>& elements() const { return elements_; }

 private:
  friend GroebnerBasis groebner(const AlgebraPresentation&, int);
  AlgebraPresentation pres_;
  int degree_bound_ = 0;
  std::vector<NcPoly> elements_;
};

// Degree-truncated reduced two-sided Groebner basis under deglex.
GroebnerBasis groebner(const AlgebraPresentation& pres, int degree_bound);

class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(GroebnerBasis gb);

  const RingPtr& ring() const { return gb_.ring(); }
  const Field& field() const { return gb_.ring()->field(); }
  int degree_bound() const { return gb_.truncation_degree(); }
  const GroebnerBasis& groebner_basis() const { return gb_; }
  const AlgebraPresentation& presentation() const { return gb_.presentation(); }

  NcPoly normal_form(const NcPoly& p) const;
  NcPoly multiply(const NcPoly& a, const NcPoly& b) const { return normal_form(a * b); }
  bool is_normal_word(const std::string& letters) const;

  const std::vector<Word>& basis_of_degree(int n) const;
  std::size_t dim(int n) const { return n < 0 ? 0 : basis_of_degree(n).size(); }
  // Index of a normal word within basis_of_degree(w.degree()).
  std::size_t index_of(const Word& w) const;
  // Coordinates of a homogeneous normal form of degree n.
  Vec coordinates(const NcPoly& nf, int n) const;
  NcPoly from_coordinates(int n, const Vec& v) const;

  void check_degree(int n) const;

 private:
  const std::vector<Term>& normal_form_word(const Word& w) const;
  // Position (start, element) of the leftmost-ending leading word occurrence.
  std::optional<std::pair<std::size_t, std::size_t>> find_reducible(const std::string& s) const;

  GroebnerBasis gb_;
  std::unordered_map<std::string, std::size_t> lead_index_;
  std::vector<std::size_t> lead_lengths_;

  struct DegreeBasis {
    std::vector<Word> words;
    std::unordered_map<std::string, std::size_t> index;
  };
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::vector<Term>> memo_;
  mutable std::map<int, DegreeBasis> bases_;
};

using AlgebraPtr = std::shared_ptr<const QuotientAlgebra>;

AlgebraPtr make_algebra(const AlgebraPresentation& pres, int degree_bound);
NcPoly normal_form(const QuotientAlgebra& q, const NcPoly& p);
const std::vector<Word>& basis_of_degree(const QuotientAlgebra& q, int n);
std::vector<int> hilbert_function(const QuotientAlgebra& q, int up_to);
// B = A/(f), truncated at the same degree as A.
AlgebraPtr quotient_by_element(const QuotientAlgebra& a, const NcPoly& f);

}  // namespace ncmf
