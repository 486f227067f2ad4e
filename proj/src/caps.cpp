#include "hadwit/caps.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "hadwit/common.hpp"

namespace hadwit {

namespace {

int env_int(const char* name, int fallback, int hard_max) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || parsed < 1 || parsed > hard_max)
    return fallback;
  return static_cast<int>(parsed);
}

}  // namespace

int system_cap() {
  static const int cap = env_int("HADWIT_MAX_N", 24, 28);
  return cap;
}

int oracle_cap_folded() {
  static const int cap = env_int("HADWIT_ORACLE_MAX_N", 28, 30);
  return cap;
}

int oracle_cap_unfolded() { return std::max(1, oracle_cap_folded() - 4); }

void check_system_cap(int n) {
  if (n > system_cap())
    throw cap_exceeded("order n=" + std::to_string(n) +
                       " exceeds the configured cap n<=" +
                       std::to_string(system_cap()) +
                       " (override with HADWIT_MAX_N)");
}

}  // namespace hadwit
