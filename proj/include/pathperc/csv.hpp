#pragma once

#include <cstdio>
#include <string>

namespace pathperc {

/// Decimal with 9 significant digits, the precision every CSV output uses.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace pathperc
