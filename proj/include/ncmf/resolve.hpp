#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncmf/factorization.hpp"
#include "ncmf/gradedmod.hpp"

namespace ncmf {

struct BettiTable {
  std::vector<std::vector<int>> steps;  // sorted generator degrees per homological step

  std::vector<int> ranks() const;
  std::string to_string() const;
};

struct MinimalResolution {
  ResolutionSegment segment;  // modules P_0..P_n, differentials d_1..d_n
  BettiTable betti;
  int certified_degree = 0;   // statements hold for internal degrees <= this
  bool terminated = false;    // some kernel vanished through the certified degree
};

// Removes generators killed by scalar relation entries, then redundant relations.
ModulePresentation minimize(const ModulePresentation& m);
// Steps 0..h_max inclusive, kernels computed through internal degree t_max.
MinimalResolution minimal_resolution(const ModulePresentation& m, int h_max, int t_max);

struct PdReport {
  bool at_most_one = false;
  int bound = 0;
  ModulePresentation minimal;     // minimal presentation over A
  GradedMatrix second_syzygies;   // kernel generators found through bound
};

PdReport pd_at_most_one(const ModulePresentation& m, int t_max);

// Presentation over A of a B-module: lifted relations plus f e_j.
ModulePresentation lift_to_ambient(const ModulePresentation& m, const NormalElement& elem);

struct StripResult {
  ModulePresentation module;
  std::size_t stripped = 0;
};

// Drops generators that occur in no relation of the minimal presentation.
StripResult strip_free_summands(const ModulePresentation& m);

Factorization extract_tmf(const ModulePresentation& m, const ElementPtr& elem, int t_max);

struct PipelineResult {
  MinimalResolution prefix;     // resolution through step syzygy_index + 1
  Factorization factorization;  // reduced; rank 0 when the syzygy is free
  int syzygy_index = 0;
  std::size_t stripped_rank = 0;
  bool finite_resolution = false;  // the syzygy was free, so no nontrivial factorization arises
  bool splice_verified = false;
};

// Resolves M and returns the first syzygy (index <= dim + 1) whose free-summand-free
// part has projective dimension <= 1 over A, with its factorization.
PipelineResult factorization_pipeline(const ModulePresentation& m, const ElementPtr& elem, int dim, int t_max);

// The module coker(d_{i+1}) = image of d_i, for 1 <= i; i = 0 gives the module itself.
ModulePresentation syzygy_presentation(const MinimalResolution& r, int i);

}  // namespace ncmf
