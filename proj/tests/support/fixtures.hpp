#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dlat/tait.hpp"

namespace dlat::testing {

inline nlohmann::json load_diagrams() {
  std::ifstream in(std::string(DLAT_FIXTURE_DIR) + "/diagrams.json");
  return nlohmann::json::parse(in);
}

inline PdCode pd_of(const nlohmann::json& entry) {
  PdCode code;
  for (const auto& c : entry.at("pd")) code.push_back({c[0].get<Int>(), c[1].get<Int>(), c[2].get<Int>(), c[3].get<Int>()});
  return code;
}

// Every single diagram of the corpus: knots, (2,n) torus links, pretzels and
// both members of each mutant pair.
inline std::vector<std::pair<std::string, PdCode>> corpus() {
  auto j = load_diagrams();
  std::vector<std::pair<std::string, PdCode>> out;
  for (const char* group : {"knots", "torus", "pretzels"})
    for (const auto& [name, e] : j.at(group).items()) out.emplace_back(name, pd_of(e));
  for (const auto& pair : j.at("mutant_pairs")) {
    out.emplace_back(pair.at("name").get<std::string>() + "_a", pd_of(pair.at("first")));
    out.emplace_back(pair.at("name").get<std::string>() + "_b", pd_of(pair.at("second")));
  }
  return out;
}

}  // namespace dlat::testing
