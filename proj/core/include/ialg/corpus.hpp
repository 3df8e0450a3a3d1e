#pragma once

#include <string>
#include <vector>

namespace ialg {

struct CorpusEntry {
  std::string name;
  std::string text;
};

/// Built-in example specifications, sorted by name.
const std::vector<CorpusEntry>& corpus();

}  // namespace ialg
