#pragma once

// Non-existence certificates. A witness is an exact rational combination of
// system rows equal to the unit functional at M(0); its existence rules out
// a circulant Hadamard matrix of that order. Three shapes: weights on raw
// rows, weights constant on row orbits, and single-weight symmetric weights
// through the tridiagonal aggregate system.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hadwit/common.hpp"
#include "hadwit/group.hpp"
#include "hadwit/symmetry.hpp"
#include "hadwit/system.hpp"

namespace hadwit {

// Aggregating the system rows over all gamma of one weight w and all d
// collapses onto the single-weight sums E_v = sum_{|mu|=v} M(mu): row w
// touches v = w-2, w, w+2 with coefficients C(n-w+2, 2), w(n-w), C(w+2, 2).
// Rows and columns are indexed by even weights 0, 2, ..., n.
struct TridiagonalSystem {
  int n = 0;
  std::vector<long long> sub, diag, super;  // size n/2+1; zeros off the ends

  long long rows() const { return static_cast<long long>(diag.size()); }
};

TridiagonalSystem build_tridiagonal(int n);  // n even
long long tridiagonal_rank(const TridiagonalSystem& T);

// Weights c_w with sum_w c_w * (aggregate row w) = M(0); nullopt exactly
// when the target is outside the span of the aggregates. Requires n
// divisible by 4 (other orders are excluded upstream).
std::optional<std::map<int, Rat>> symmetric_witness(int n);

enum class WitnessKind { full, orbit_reduced, symmetric };
std::string witness_kind_name(WitnessKind k);
WitnessKind witness_kind_from_name(const std::string& name);

struct WitnessWeight {
  Mask gamma;
  int d;
  Rat c;
};

struct WitnessCertificate {
  int version = 1;
  int n = 0;
  WitnessKind kind = WitnessKind::full;
  std::string convention{kConventionTag};
  std::uint64_t seed = 0;              // pivot-order provenance
  Coset coset = Coset::even;           // kinds full / orbit-reduced
  std::string scaling;                 // kind orbit-reduced
  std::vector<WitnessWeight> weights;  // sorted by (gamma, d); zero-free
  std::map<int, Rat> weight_by_w;      // kind symmetric
};

enum class WitnessMode { full, orbit_reduced };

// Solves against the selected system with target = unit at M(0). Nullopt is
// the mathematical answer "no witness exists" (equivalently: the order still
// admits a circulant Hadamard matrix, as at n = 4).
std::optional<WitnessCertificate> find_witness(int n, WitnessMode mode,
                                               std::uint64_t seed = 0,
                                               Coset coset = Coset::even);

std::optional<WitnessCertificate> find_symmetric_witness(int n);

enum class VerifyLevel { automatic, full, basis };

struct VerificationReport {
  bool pass = false;
  std::string level;           // "full" (per character) or "basis" (per w)
  long long columns_checked = 0;
  long long nonzero_columns = 0;
  std::vector<std::pair<std::string, std::string>> residuals;  // first few
  std::string message;
};

// Independent of the solver: rows are regenerated from scratch and the
// weighted accumulation must equal the unit functional at gamma = 0 exactly.
// For symmetric certificates, `basis` checks the tridiagonal residual
// instead of expanding every row (the automatic level expands fully up to
// n = 16).
VerificationReport verify_certificate(const WitnessCertificate& cert,
                                      VerifyLevel level = VerifyLevel::automatic);

// Structured-text round trip. Parsing ignores unknown fields and rejects a
// convention tag other than the one this build implements.
std::string serialize_certificate(const WitnessCertificate& cert);
WitnessCertificate parse_certificate(const std::string& text);

}  // namespace hadwit
