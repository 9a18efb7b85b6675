#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace ospfw {

// Shortest decimal form that round-trips to the same double.
inline std::string fmt_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// 9 significant digits; the file-format precision for capacities/demands.
inline std::string fmt_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// 6 significant digits, trailing zeros trimmed by %g.
inline std::string fmt_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace ospfw
