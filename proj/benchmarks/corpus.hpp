//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ocsrbench/chemgraph/molfile.hpp"

namespace ocsrbench::bench {

inline std::vector<chemgraph::Molecule> load_corpus() {
  std::vector<std::filesystem::path> paths;
  for (const auto &e: std::filesystem::directory_iterator(
           std::filesystem::path(OCSRBENCH_SOURCE_DIR) / "data" / "corpus")) {
    if (e.path().extension() == ".mol") {
      paths.push_back(e.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<chemgraph::Molecule> out;
  for (const auto &p: paths) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(chemgraph::parse_molfile(ss.str()));
  }
  return out;
}

}  // namespace ocsrbench::bench
