#pragma once

// Brute-force ground truth: exhaustive circulant Hadamard search, periodic
// autocorrelation, the squared-autocorrelation functional, and the
// admissibility filter on candidate orders. Deliberately simple; the point
// of this module is to be obviously correct.

#include <cstdint>
#include <string>
#include <vector>

#include "hadwit/group.hpp"

namespace hadwit {

// sum_j u_j u_{j+d} with cyclic indices; 0 <= d < n. Same parity as n.
int periodic_autocorrelation(const SignVector& u, int d);

// Mask-level fast path (set bit means -1 entry).
int periodic_autocorrelation(Mask u, int d, int n);

// True iff every autocorrelation at d = 1..n/2 vanishes (d and n-d agree).
bool is_circulant_hadamard(const SignVector& u);
bool is_circulant_hadamard(Mask u, int n);

// sum_{d=1}^{n-1} (sum_j u_j u_{j+d})^2; zero exactly on circulant
// Hadamard generators.
long long s_value(const SignVector& u);
long long s_value(Mask u, int n);

struct SearchReport {
  int n = 0;
  std::vector<Mask> generators;  // ascending; every one passes the predicate
  std::uint64_t count = 0;       // unfolded total == generators.size()
  double elapsed_s = 0.0;        // wall time; never serialized
  bool folded = false;           // u_1 fixed to +1 and unfolded by negation
};

// Exact enumeration over all 2^n sign vectors. When folding is possible
// (n >= 1), u_1 is fixed to +1 and results are unfolded by negation; the
// reported count is always the unfolded total. Deterministic output for any
// thread count. threads = 0 means hardware concurrency.
SearchReport brute_force_generators(int n, int threads = 0);

struct TurynResult {
  bool admissible = false;
  std::string reason;
};

// Necessary condition for a circulant Hadamard matrix of order n > 4:
// n = 4u^2 with u odd, u > 1, and u not a prime power.
TurynResult turyn_admissible(long long n);

// Structured-text (JSON) report; volatile fields (elapsed) are omitted so
// identical configurations serialize byte-identically.
std::string serialize_report(const SearchReport& report);

}  // namespace hadwit
