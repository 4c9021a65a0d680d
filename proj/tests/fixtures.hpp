#pragma once

#include <string>

#include "gallai/gallai.hpp"

#ifndef GALLAI_DATA_DIR
#error "GALLAI_DATA_DIR must point at the data/ directory"
#endif

namespace fixtures {

// Found by `gallai search --n 14 --k 2 --pattern w4` and pinned.
inline constexpr const char* kBase14Digest = "f214bf7ffb66c624";

inline std::string data_path(const std::string& name) { return std::string(GALLAI_DATA_DIR) + "/" + name; }

inline const gallai::EdgeColoring& base14() {
  static const gallai::EdgeColoring c = gallai::parse_grc(gallai::read_file(data_path("base14.grc")));
  return c;
}

inline gallai::EdgeColoring mono(std::size_t n, gallai::Color col = 1) { return gallai::EdgeColoring(n, col, col); }

inline gallai::EdgeColoring double_pentagon() {
  const auto p = gallai::pentagon_coloring();
  return gallai::join(p, p, 3);
}

}  // namespace fixtures
