#pragma once

#include <charconv>
#include <string>

namespace tfc {

// Shortest round-trip decimal form; all CSV/JSON numbers go through here so
// identical configurations produce byte-identical output.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace tfc
