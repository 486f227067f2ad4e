#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hadwit {

// A character / group element of Z_2^n as an n-bit mask. n <= 28 everywhere
// (enforced by the per-module caps), so 32 bits suffice.
using Mask = std::uint32_t;

// Exact rational scalar. All certificate and system coefficients are exact;
// there is no floating point anywhere in the pipeline.
using Rat = mpq_class;

// Convention tag recorded in every exported artifact: the d = n/2 equation
// sums each antipodal position pair once (j = 1..n/2), not twice.
inline constexpr std::string_view kConventionTag = "d-half/1";

inline constexpr std::string_view kToolName = "hadwit";

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a, used for the deterministic run fingerprint printed by the CLI.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Canonical "p" or "p/q" rendering (GMP keeps mpq_class canonicalized).
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

// Parses "p" or "p/q". Throws parse_error on malformed input or zero
// denominator.
inline Rat rat_from_string(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw parse_error("malformed rational: '" + s + "'");
  if (q.get_den() == 0) throw parse_error("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace hadwit
