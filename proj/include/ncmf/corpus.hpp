#pragma once

#include <string>
#include <vector>

namespace ncmf {

std::vector<std::string> corpus_names();
// Session text of a bundled example; throws UnknownName.
std::string corpus_text(const std::string& name);

}  // namespace ncmf
