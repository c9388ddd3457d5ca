#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ncmf/freealg.hpp"
#include "ncmf/gbasis.hpp"
#include "ncmf/parse.hpp"

namespace testing_support {

// "x:1 y:1 w:2" -> ring
inline ncmf::RingPtr ring(const ncmf::Field& k, const std::string& names) {
  std::vector<ncmf::Generator> gens;
  std::istringstream in(names);
  std::string item;
  while (in >> item) {
    auto colon = item.find(':');
    gens.push_back({item.substr(0, colon), colon == std::string::npos ? 1 : std::stoi(item.substr(colon + 1))});
  }
  return std::make_shared<const ncmf::PolyRing>(k, gens);
}

inline ncmf::NcPoly P(const ncmf::RingPtr& r, const std::string& text) { return ncmf::parse_poly(r, text); }

inline ncmf::AlgebraPtr algebra(const ncmf::RingPtr& r, const std::vector<std::string>& rels, int degree) {
  ncmf::AlgebraPresentation pres{r, {}};
  for (const auto& s : rels) pres.relations.push_back(P(r, s));
  return ncmf::make_algebra(pres, degree);
}

}  // namespace testing_support
