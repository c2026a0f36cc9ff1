#pragma once

#include <fstream>
#include <iterator>
#include <string>

#include "chanbin/document.hpp"

namespace fixture {

inline std::string path(const std::string& relative) { return std::string(CHANBIN_FIXTURE_DIR) + "/" + relative; }

inline std::string read(const std::string& relative) {
  std::ifstream in(path(relative), std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline chanbin::CompositionSpec spec(const std::string& name) {
  return chanbin::parse_composition_spec(read("specs/" + name + ".json"));
}

}  // namespace fixture
