#include "hadwit/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hadwit/caps.hpp"
#include "hadwit/common.hpp"

namespace hadwit {

namespace {

inline Mask rotr_n(Mask m, int d, int n) {
  const Mask full = (Mask{1} << n) - 1;
  d %= n;
  if (d == 0) return m;
  return ((m >> d) | (m << (n - d))) & full;
}

}  // namespace

int periodic_autocorrelation(Mask u, int d, int n) {
  // u_j u_{j+d} = -1 exactly where bits j and j+d differ.
  return n - 2 * std::popcount(u ^ rotr_n(u, d, n));
}

int periodic_autocorrelation(const SignVector& u, int d) {
  const int n = u.order();
  if (d < 0 || d >= n)
    throw std::out_of_range("periodic_autocorrelation: d outside 0..n-1");
  return periodic_autocorrelation(u.to_mask(), d, n);
}

bool is_circulant_hadamard(Mask u, int n) {
  for (int d = 1; d <= n / 2; ++d)
    if (periodic_autocorrelation(u, d, n) != 0) return false;
  return true;
}

bool is_circulant_hadamard(const SignVector& u) {
  return is_circulant_hadamard(u.to_mask(), u.order());
}

long long s_value(Mask u, int n) {
  long long total = 0;
  for (int d = 1; d < n; ++d) {
    const long long a = periodic_autocorrelation(u, d, n);
    total += a * a;
  }
  return total;
}

long long s_value(const SignVector& u) { return s_value(u.to_mask(), u.order()); }

namespace {

// Scans masks in [lo, hi) with bit 0 clear (u_1 = +1); appends generators
// and their negations, both in ascending order within the chunk.
void scan_folded(int n, Mask lo, Mask hi, std::vector<Mask>& out) {
  const Mask full = (Mask{1} << n) - 1;
  for (Mask m = lo; m < hi; m += 2) {
    if (is_circulant_hadamard(m, n)) {
      out.push_back(m);
      out.push_back(m ^ full);
    }
  }
}

}  // namespace

SearchReport brute_force_generators(int n, int threads) {
  if (n < 1) throw std::invalid_argument("brute_force_generators: n < 1");
  if (n > oracle_cap_folded())
    throw cap_exceeded("oracle enumeration capped at n<=" +
                       std::to_string(oracle_cap_folded()));
  const auto t0 = std::chrono::steady_clock::now();

  SearchReport report;
  report.n = n;
  report.folded = true;

  if (threads <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    threads = hc == 0 ? 1 : static_cast<int>(hc);
  }

  const Mask space = Mask{1} << n;  // scan even masks only: u_1 fixed to +1
  std::vector<std::pair<Mask, Mask>> chunks;
  {
    const int parts = std::max(1, std::min<int>(threads, 64));
    const Mask step = (space / parts + 1) & ~Mask{1};
    for (Mask lo = 0; lo < space; lo += std::max<Mask>(step, 2))
      chunks.emplace_back(lo, std::min<Mask>(space, lo + std::max<Mask>(step, 2)));
  }

  std::vector<std::vector<Mask>> found(chunks.size());
  if (chunks.size() == 1) {
    scan_folded(n, chunks[0].first, chunks[0].second, found[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i)
      pool.emplace_back(scan_folded, n, chunks[i].first, chunks[i].second,
                        std::ref(found[i]));
    for (auto& t : pool) t.join();
  }

  // Chunks cover ascending ranges; a sort makes the merge order-independent.
  for (auto& part : found)
    report.generators.insert(report.generators.end(), part.begin(), part.end());
  std::sort(report.generators.begin(), report.generators.end());
  report.count = report.generators.size();

  report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

namespace {

long long isqrt_ll(long long v) {
  if (v < 0) return -1;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// u >= 2: true iff u = p^k for a single prime p.
bool is_prime_power(long long u) {
  for (long long p = 2; p * p <= u; ++p) {
    if (u % p == 0) {
      while (u % p == 0) u /= p;
      return u == 1;
    }
  }
  return true;  // u itself prime
}

}  // namespace

TurynResult turyn_admissible(long long n) {
  if (n < 1) throw std::invalid_argument("turyn_admissible: n < 1");
  if (n % 4 != 0) return {false, "n is not divisible by 4"};
  const long long q = n / 4;
  const long long u = isqrt_ll(q);
  if (u * u != q) return {false, "n/4 is not a perfect square"};
  if (u == 1)
    return {false, "u = 1 (the order-4 circulant Hadamard matrix exists)"};
  if (u % 2 == 0) return {false, "u = " + std::to_string(u) + " is even"};
  if (is_prime_power(u))
    return {false, "u = " + std::to_string(u) + " is a prime power"};
  return {true, "n = 4u^2 with u = " + std::to_string(u) +
                    " odd and not a prime power"};
}

std::string serialize_report(const SearchReport& report) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format\": \"hadwit-search-report\",\n";
  os << "  \"version\": 1,\n";
  os << "  \"convention\": \"" << kConventionTag << "\",\n";
  os << "  \"n\": " << report.n << ",\n";
  os << "  \"folded\": " << (report.folded ? "true" : "false") << ",\n";
  os << "  \"count\": " << report.count << ",\n";
  os << "  \"generators\": [";
  for (std::size_t i = 0; i < report.generators.size(); ++i) {
    if (i) os << ", ";
    os << "\"0x" << std::hex << report.generators[i] << std::dec << "\"";
  }
  os << "]\n}\n";
  return os.str();
}

}  // namespace hadwit
