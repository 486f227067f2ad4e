#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "hadwit/oracle.hpp"
#include "hadwit/walsh.hpp"

using namespace hadwit;

TEST_CASE("order 4 has exactly the eight known generators") {
  const SearchReport r = brute_force_generators(4);
  CHECK(r.n == 4);
  CHECK(r.count == 8);
  CHECK(r.generators ==
        std::vector<Mask>{0x1, 0x2, 0x4, 0x7, 0x8, 0xb, 0xd, 0xe});
  // Mask 0x1 is the sign vector (-1, 1, 1, 1).
  const SignVector u = SignVector::from_mask(4, 0x1);
  CHECK(u.entry(1) == -1);
  CHECK(u.entry(2) == 1);
  CHECK(u.entry(3) == 1);
  CHECK(u.entry(4) == 1);
  CHECK(is_circulant_hadamard(u));
}

TEST_CASE("small orders without generators report zero") {
  for (int n : {2, 3, 5, 6, 7, 8, 9, 10, 11, 12}) {
    const SearchReport r = brute_force_generators(n);
    CHECK(r.count == 0);
    CHECK(r.generators.empty());
  }
}

TEST_CASE("order 1 admits both one-entry vectors") {
  const SearchReport r = brute_force_generators(1);
  CHECK(r.generators == std::vector<Mask>{0x0, 0x1});
  CHECK(r.count == 2);
}

TEST_CASE("generator lists are sorted, folded, and consistently counted") {
  for (int n = 1; n <= 10; ++n) {
    const SearchReport r = brute_force_generators(n);
    CHECK(r.folded);
    CHECK(r.count == r.generators.size());
    CHECK(std::is_sorted(r.generators.begin(), r.generators.end()));
    // Folding means negation-closure: m is a generator iff ~m is.
    const Mask full = static_cast<Mask>((Mask{1} << n) - 1);
    for (Mask m : r.generators)
      CHECK(std::binary_search(r.generators.begin(), r.generators.end(),
                               m ^ full));
  }
}

TEST_CASE("thread count never changes the result") {
  for (int n : {4, 9, 10}) {
    const SearchReport one = brute_force_generators(n, 1);
    for (int threads : {2, 3, 4, 8}) {
      const SearchReport many = brute_force_generators(n, threads);
      CHECK(one.generators == many.generators);
      CHECK(one.count == many.count);
    }
  }
}

TEST_CASE("autocorrelation: definition, parity, and mask fast path agree") {
  for (int n = 1; n <= 8; ++n) {
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      const SignVector u = SignVector::from_mask(n, m);
      for (int d = 0; d < n; ++d) {
        long long direct = 0;
        for (int j = 1; j <= n; ++j)
          direct += u.entry(j) * u.entry((j - 1 + d) % n + 1);
        const int reference = static_cast<int>(direct);
        CHECK(periodic_autocorrelation(u, d) == reference);
        CHECK(periodic_autocorrelation(m, d, n) == reference);
        CHECK(((reference - n) % 2) == 0);  // same parity as n
        if (d >= 1)
          CHECK(periodic_autocorrelation(m, n - d, n) == reference);
      }
      CHECK(periodic_autocorrelation(m, 0, n) == n);
    }
  }
}

TEST_CASE("the squared functional vanishes exactly on generators") {
  for (int n = 1; n <= 8; ++n) {
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      const SignVector u = SignVector::from_mask(n, m);
      const long long s = s_value(u);
      CHECK(s == s_value(m, n));
      CHECK(s >= 0);
      CHECK((s == 0) == is_circulant_hadamard(u));
      CHECK(is_circulant_hadamard(u) == is_circulant_hadamard(m, n));
    }
  }
}

TEST_CASE("admissibility filter on the three reference orders") {
  const TurynResult small = turyn_admissible(4);
  CHECK_FALSE(small.admissible);
  CHECK_FALSE(small.reason.empty());

  // 100 = 4 * 5^2 and 5 is a prime power.
  CHECK_FALSE(turyn_admissible(100).admissible);

  // 4 * 11715^2 with 11715 = 3 * 5 * 11 * 71: odd, composite, not a prime
  // power. The filter cannot exclude it.
  const long long u = 11715;
  CHECK(turyn_admissible(4 * u * u).admissible);
}

TEST_CASE("admissibility filter rejects malformed orders") {
  CHECK_FALSE(turyn_admissible(8).admissible);    // not 4 * square
  CHECK_FALSE(turyn_admissible(16).admissible);   // u = 2 even
  CHECK_FALSE(turyn_admissible(36).admissible);   // u = 3 prime
  CHECK_FALSE(turyn_admissible(144).admissible);  // u = 6 even
  CHECK_FALSE(turyn_admissible(196).admissible);  // u = 7 prime
  CHECK_FALSE(turyn_admissible(324).admissible);  // u = 9 = 3^2
  CHECK_FALSE(turyn_admissible(7).admissible);    // not divisible by 4
  // 4 * 15^2: 15 = 3 * 5 odd composite non prime power.
  CHECK(turyn_admissible(900).admissible);
}

TEST_CASE("serialized reports are stable and never carry wall time") {
  const SearchReport a = brute_force_generators(6, 1);
  const SearchReport b = brute_force_generators(6, 4);
  const std::string sa = serialize_report(a);
  CHECK(sa == serialize_report(b));
  CHECK(sa.find("elapsed") == std::string::npos);
  CHECK(sa.find("\"n\": 6") != std::string::npos);
}
