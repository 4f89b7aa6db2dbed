#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "translucent/structure.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(TRANSLUCENT_FIXTURES) + "/" + name; }

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline translucent::CounterfactualStructure load_fixture(const std::string& name) {
  return translucent::parse_structure(fixture_text(name), nullptr, TRANSLUCENT_FIXTURES);
}

/// One state on the 1x1 game ladder(1): everything points at itself.
inline translucent::CounterfactualStructure single_state_structure() {
  auto g = std::make_shared<const translucent::Game>(translucent::ladder_game(1, 1));
  return translucent::CounterfactualStructure(g, {{"only", {0, 0}}},
                                              {{translucent::Distribution::point(0)},
                                               {translucent::Distribution::point(0)}},
                                              {{{0}, {0}}});
}

}  // namespace testing_support
