#pragma once

#include <charconv>
#include <string>

namespace shocknet {

/// Shortest decimal text that reads back as the same double.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace shocknet
