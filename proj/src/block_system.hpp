#pragma once

// Linear systems whose unknowns are the entries of degree-0 module maps,
// expanded over the normal-word bases of the relevant degrees.

#include <optional>
#include <vector>

#include "ncmf/gradedmod.hpp"

namespace ncmf::detail {

class BlockSystem {
 public:
  explicit BlockSystem(AlgebraPtr alg) : alg_(std::move(alg)) {}

  std::size_t unknown(FreeModule src, FreeModule tgt);
  std::size_t equation(FreeModule src, FreeModule tgt);
  // equation eq gains coeff * endo(left * X * right); a null left/right acts as the identity.
  void term(std::size_t eq, const GradedMatrix* left, std::size_t x, const GradedMatrix* right,
            const Scalar& coeff, const GradedEndo* endo = nullptr);
  void rhs(std::size_t eq, const GradedMatrix& m);

  std::vector<std::vector<GradedMatrix>> kernel_basis() const;
  std::optional<std::vector<GradedMatrix>> solve() const;

 private:
  struct Block {
    FreeModule src, tgt;
    std::vector<std::size_t> offsets;  // per entry (row-major)
    std::size_t size = 0;
  };
  Block make_block(FreeModule src, FreeModule tgt) const;
  Matrix build() const;
  std::vector<GradedMatrix> unpack(const Vec& v) const;

  AlgebraPtr alg_;
  std::vector<Block> unknowns_, equations_;
  std::size_t num_vars_ = 0, num_coords_ = 0;
  std::vector<std::size_t> var_base_, coord_base_;
  struct Term {
    std::size_t eq, x;
    const GradedMatrix* left;
    const GradedMatrix* right;
    Scalar coeff;
    const GradedEndo* endo;
  };
  std::vector<Term> terms_;
  std::vector<std::pair<std::size_t, GradedMatrix>> rhs_;
};

}  // namespace ncmf::detail
