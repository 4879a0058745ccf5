#include "anosov/util.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace anosov {

double bigLog(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 60) return std::log(static_cast<double>(x));
  const auto shift = bits - 52;
  const BigInt top = x >> shift;
  return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

std::string bigToString(const BigInt& x) { return x.str(); }

int defaultWorkers() {
  if (const char* env = std::getenv("ANOSOV_WORKERS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1) return static_cast<int>(value);
  }
  return 1;
}

}  // namespace anosov
