#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>
#include <sstream>
#include <vector>

#include "hadwit/oracle.hpp"
#include "hadwit/system.hpp"
#include "hadwit/walsh.hpp"

using namespace hadwit;

TEST_CASE("row structure: sorted keys, coefficient sums, coset confinement") {
  for (int n = 2; n <= 10; n += 2) {
    for (Mask g = 0; g < (Mask{1} << n); ++g) {
      const GroupElement gamma(n, g);
      const int gpar = std::popcount(g) & 1;
      for (int d = 1; d <= n / 2; ++d) {
        const EquationRow row = build_row(gamma, d);
        CHECK(row.coefficient_sum() == (d < n / 2 ? n : n / 2));
        Mask prev = 0;
        bool first = true;
        for (const auto& [key, coeff] : row.terms) {
          CHECK(coeff > 0);
          CHECK((std::popcount(key) & 1) == gpar);
          if (!first) CHECK(key > prev);
          prev = key;
          first = false;
        }
      }
    }
  }
}

TEST_CASE("row functional equals the character-weighted autocorrelation") {
  // For every sign vector u: sum of coeff * u^key over the row of (gamma, d)
  // equals u^gamma times the d-autocorrelation of u (halved at d = n/2,
  // where the row sums each antipodal pair once).
  for (int n = 2; n <= 10; n += 2) {
    const Mask space = Mask{1} << n;
    for (int d = 1; d <= n / 2; ++d) {
      std::vector<long long> autocorr(space);
      for (Mask u = 0; u < space; ++u)
        autocorr[u] = periodic_autocorrelation(u, d, n);
      for (Mask g = 0; g < space; ++g) {
        const EquationRow row = build_row(GroupElement(n, g), d);
        for (Mask u = 0; u < space; ++u) {
          long long lhs = 0;
          for (const auto& [key, coeff] : row.terms)
            lhs += coeff * character_sign(key, u);
          long long rhs = character_sign(g, u) * autocorr[u];
          if (d == n / 2) rhs /= 2;
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("generator sign vectors annihilate every row") {
  const SearchReport r = brute_force_generators(4);
  REQUIRE(r.count == 8);
  const MtilingSystem sys = build_system(4, Coset::both);
  for (Mask u : r.generators) {
    for (long long id = 0; id < sys.row_count(); ++id) {
      const EquationRow row = sys.row(id);
      long long dot = 0;
      for (const auto& [key, coeff] : row.terms)
        dot += coeff * character_sign(key, u);
      CHECK(dot == 0);
    }
  }
}

TEST_CASE("translation covariance: shifting gamma shifts every key") {
  for (int n = 2; n <= 8; n += 2) {
    const Mask space = Mask{1} << n;
    for (Mask g = 0; g < space; ++g) {
      for (int d = 1; d <= n / 2; ++d) {
        const EquationRow base = build_row(GroupElement(n, g), d);
        for (Mask tau : {Mask{0x1}, Mask{0x3}, space - 1}) {
          const EquationRow moved = build_row(GroupElement(n, g ^ tau), d);
          REQUIRE(moved.terms.size() == base.terms.size());
          std::vector<std::pair<Mask, int>> expect;
          for (const auto& [key, coeff] : base.terms)
            expect.emplace_back(key ^ tau, coeff);
          std::sort(expect.begin(), expect.end());
          CHECK(moved.terms == expect);
        }
      }
    }
  }
}

TEST_CASE("row and column indexing are inverse bijections") {
  for (int n = 2; n <= 10; n += 2) {
    for (Coset coset : {Coset::even, Coset::odd, Coset::both}) {
      const MtilingSystem sys = build_system(n, coset);
      CHECK(sys.row_count() == (n / 2) * sys.column_count());
      for (long long c = 0; c < sys.column_count(); ++c) {
        const Mask m = sys.mask_of_column(c);
        CHECK(in_coset(m, coset));
        CHECK(sys.column_of(m) == c);
        if (c > 0) CHECK(m > sys.mask_of_column(c - 1));
      }
      for (long long id = 0; id < sys.row_count(); ++id) {
        const auto [gamma, d] = sys.row_of_id(id);
        CHECK(sys.row_id(gamma, d) == id);
        const EquationRow row = sys.row(id);
        CHECK(row.gamma.bits() == gamma);
        CHECK(row.d == d);
      }
    }
  }
}

TEST_CASE("column zero of the even and both cosets is the M(0) column") {
  for (int n = 2; n <= 10; n += 2) {
    CHECK(build_system(n, Coset::even).column_of(0) == 0);
    CHECK(build_system(n, Coset::both).column_of(0) == 0);
  }
  CHECK_THROWS_AS(build_system(4, Coset::odd).column_of(0),
                  std::invalid_argument);
}

TEST_CASE("coordinate export round trips through the reader") {
  for (int n : {4, 6}) {
    for (Coset coset : {Coset::even, Coset::odd, Coset::both}) {
      const MtilingSystem sys = build_system(n, coset);
      std::ostringstream out;
      write_system(sys, out);
      std::istringstream in(out.str());
      const CoordinateMatrix m = read_coordinate_file(in);
      CHECK(m.n == n);
      CHECK(m.coset == coset);
      CHECK(m.convention == kConventionTag);
      CHECK(m.nrows == sys.row_count());
      CHECK(m.ncols == sys.column_count());
      std::size_t k = 0;
      for (long long id = 0; id < sys.row_count(); ++id) {
        for (const auto& [key, coeff] : sys.row(id).terms) {
          REQUIRE(k < m.triples.size());
          const auto [r, c, v] = m.triples[k++];
          CHECK(r == id + 1);
          CHECK(c == sys.column_of(key) + 1);
          CHECK(v == coeff);
        }
      }
      CHECK(k == m.triples.size());
    }
  }
}

TEST_CASE("reader rejects malformed input") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_coordinate_file(in);
  };
  CHECK_THROWS_AS(parse(""), parse_error);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix array real general\n1 1\n1\n"),
                  parse_error);
  CHECK_THROWS_AS(
      parse("%%MatrixMarket matrix coordinate integer general\n2 2 1\n"),
      parse_error);  // missing triple
  CHECK_THROWS_AS(
      parse("%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 1\n"),
      parse_error);  // row out of range
}

TEST_CASE("coefficient polynomial: fixed order-4 terms") {
  const WalshPolynomial S = s_coefficients(4);
  CHECK(S.term_count() == 4);
  CHECK(S.coefficient(0x0) == 16);
  CHECK(S.coefficient(0x5) == 8);
  CHECK(S.coefficient(0xa) == 8);
  CHECK(S.coefficient(0xf) == 16);
}

TEST_CASE("coefficient polynomial: totals and support for all small orders") {
  for (int n = 2; n <= 8; ++n) {
    const WalshPolynomial S = s_coefficients(n);
    // n per d from k = j, plus n more at d = n/2 when that shift exists.
    const long self_hits =
        static_cast<long>(n - 1) * n + (n % 2 == 0 ? n : 0);
    CHECK(S.coefficient(0) == Rat(self_hits));
    if (n % 2 == 0) CHECK(S.coefficient(0) == Rat(static_cast<long>(n) * n));
    Rat total(0);
    for (const auto& [gamma, c] : S.terms()) {
      total += c;
      const int w = std::popcount(gamma);
      CHECK((w == 0 || w == 2 || w == 4));
      CHECK(c > 0);
    }
    CHECK(total == Rat(static_cast<long>(n - 1) * n * n));
  }
}

TEST_CASE("transform of the coefficient polynomial is the functional") {
  for (int n = 2; n <= 8; ++n) {
    const std::vector<Rat> dense = s_coefficients(n).to_dense();
    const std::vector<Rat> transformed = walsh_transform(dense);
    for (Mask u = 0; u < (Mask{1} << n); ++u) {
      CHECK(transformed[u] == Rat(static_cast<long>(s_value(u, n))));
      CHECK(transformed[u] >= 0);
    }
  }
}

TEST_CASE("direct and transform-side convolutions agree") {
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 6; ++n) {
    const WalshPolynomial S = s_coefficients(n);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rat> M(std::size_t{1} << n);
      for (auto& v : M) v = Rat(static_cast<long>(rng() % 21) - 10);
      CHECK(convolve(S, M) == convolve_via_transform(S, M));
    }
  }
}

TEST_CASE("generator characters are convolution kernels at order 4") {
  const WalshPolynomial S = s_coefficients(4);
  const SearchReport r = brute_force_generators(4);
  REQUIRE(r.count == 8);
  for (Mask u : r.generators) {
    std::vector<Rat> M(16);
    for (Mask g = 0; g < 16; ++g) M[g] = Rat(character_sign(g, u));
    const std::vector<Rat> conv = convolve(S, M);
    for (const Rat& v : conv) CHECK(v == 0);

    // One flipped value must break the identity.
    std::vector<Rat> bent = M;
    bent[3] += 1;
    const std::vector<Rat> broken = convolve(S, bent);
    bool some_nonzero = false;
    for (const Rat& v : broken) some_nonzero = some_nonzero || v != 0;
    CHECK(some_nonzero);
  }
}

TEST_CASE("system constructor rejects bad orders and parities") {
  CHECK_THROWS_AS(build_system(3, Coset::even), std::invalid_argument);
  CHECK_THROWS_AS(build_system(0, Coset::even), std::invalid_argument);
  CHECK_THROWS_AS(build_system(26, Coset::even), cap_exceeded);
  CHECK_THROWS_AS(build_row(GroupElement(4, 0), 0), std::invalid_argument);
  CHECK_THROWS_AS(build_row(GroupElement(4, 0), 3), std::invalid_argument);
}

TEST_CASE("coset names round trip and reject junk") {
  for (Coset c : {Coset::even, Coset::odd, Coset::both})
    CHECK(coset_from_name(coset_name(c)) == c);
  CHECK_THROWS_AS(coset_from_name("evenish"), parse_error);
}
