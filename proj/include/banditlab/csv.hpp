#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace banditlab {

// Shortest decimal form that parses back to the identical double. Keeps CSV
// output byte-stable across runs and round-trippable.
inline std::string format_double(double v) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace banditlab
