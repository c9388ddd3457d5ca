#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncmf/factorization.hpp"
#include "ncmf/parse.hpp"

namespace ncmf {

struct Bounds {
  int degree = 10;  // Groebner truncation D
  int steps = 6;    // default h_max / p_max / unroll steps
  int tmax = -1;    // internal degree bound for kernels; -1 means D
  int internal() const { return tmax < 0 ? degree : tmax; }
};

struct MatrixDecl {
  std::string name;
  std::string over;  // element name for A/(f); empty for the ambient algebra
  GradedMatrix matrix;
};

struct ModuleDecl {
  enum class Kind { Coker, Residue };
  std::string name;
  Kind kind = Kind::Coker;
  std::string source;  // matrix name (Coker) or element name (Residue, may be empty)
};

struct TmfDecl {
  std::string name, phi, tau, element;
};

struct MorphismDecl {
  std::string name, psi_g, psi_f, source, target;
};

struct VerifyDecl {
  std::string kind;  // tmf, normal, auto, morphism, zero
  std::string target;
  NcPoly expr;       // for zero
};

class Session {
 public:
  Field field = Field::rationals();
  std::vector<std::pair<std::string, Scalar>> params;
  RingPtr ring;
  std::vector<NcPoly> relations;
  Bounds bounds;
  std::vector<std::pair<std::string, std::vector<NcPoly>>> autos;
  std::vector<std::pair<std::string, NcPoly>> elements;
  std::vector<MatrixDecl> matrices;
  std::vector<ModuleDecl> modules;
  std::vector<TmfDecl> tmfs;
  std::vector<MorphismDecl> morphisms;
  std::vector<VerifyDecl> verifies;
  // Declaration order as (kind, name) for the serializer.
  std::vector<std::pair<std::string, std::size_t>> order;

  const AlgebraPtr& algebra() const;
  bool algebra_built() const { return alg_ != nullptr; }
  ElementPtr element(const std::string& name) const;
  const NcPoly& element_poly(const std::string& name) const;
  GradedEndo automorphism(const std::string& name) const;
  const MatrixDecl& matrix(const std::string& name) const;
  ModulePresentation module(const std::string& name) const;
  Factorization factorization(const std::string& name) const;
  FactorizationMorphism morphism(const std::string& name) const;
  AlgebraPtr algebra_over(const std::string& element) const;

  // The only declaration of a kind, for commands given no name.
  std::string sole(const std::string& kind) const;

 private:
  mutable AlgebraPtr alg_;
  mutable std::map<std::string, ElementPtr> certified_;
  mutable std::map<std::string, Factorization> factorizations_;
};

// Throws Error(Syntax) with line and column on malformed input.
Session parse_session(std::string_view text);
std::string serialize_session(const Session& s);

}  // namespace ncmf
