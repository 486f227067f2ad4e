#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>
#include <vector>

#include "hadwit/group.hpp"
#include "hadwit/walsh.hpp"

using namespace hadwit;

namespace {

Rat rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Reference transform straight from the definition, O(4^n).
std::vector<Rat> naive_transform(const std::vector<Rat>& f) {
  const std::size_t size = f.size();
  std::vector<Rat> out(size, Rat(0));
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t g = 0; g < size; ++g)
      out[x] += f[g] * character_sign(static_cast<Mask>(g),
                                      static_cast<Mask>(x));
  return out;
}

SignVector random_sign_vector(int n, std::mt19937_64& rng) {
  std::vector<int> e(n);
  for (auto& v : e) v = (rng() & 1) ? 1 : -1;
  return SignVector(n, e);
}

}  // namespace

TEST_CASE("character sign follows the shared-support parity") {
  CHECK(character_sign(0b0000, 0b1111) == 1);
  CHECK(character_sign(0b0001, 0b0001) == -1);
  CHECK(character_sign(0b0011, 0b0001) == -1);
  CHECK(character_sign(0b0011, 0b0011) == 1);
  CHECK(character_sign(0b0111, 0b0101) == 1);
}

TEST_CASE("character evaluation agrees between sign vectors and masks") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const SignVector u = random_sign_vector(n, rng);
      const Mask umask = u.to_mask();
      for (Mask g = 0; g < (Mask{1} << n); ++g) {
        const GroupElement gamma(n, g);
        CHECK(evaluate_character(gamma, u) == character_sign(g, umask));
      }
    }
  }
}

TEST_CASE("characters are multiplicative in gamma") {
  // Exhaustive over (gamma, gamma', u) up to n = 6; sampled u beyond.
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n) {
    const Mask space = Mask{1} << n;
    std::vector<Mask> us;
    if (n <= 6)
      for (Mask u = 0; u < space; ++u) us.push_back(u);
    else
      for (int k = 0; k < 32; ++k) us.push_back(rng() & (space - 1));
    for (Mask a = 0; a < space; ++a)
      for (Mask b = 0; b < space; ++b)
        for (Mask u : us)
          CHECK(character_sign(a ^ b, u) ==
                character_sign(a, u) * character_sign(b, u));
  }
}

TEST_CASE("mask round trip preserves sign vectors") {
  for (int n = 1; n <= 6; ++n)
    for (Mask m = 0; m < (Mask{1} << n); ++m)
      CHECK(SignVector::from_mask(n, m).to_mask() == m);
}

TEST_CASE("transform matches the quadratic definition") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 6; ++n) {
    std::vector<Rat> f(std::size_t{1} << n);
    for (auto& v : f)
      v = rat(static_cast<long>(rng() % 41) - 20,
              static_cast<long>(rng() % 7) + 1);
    CHECK(walsh_transform(f) == naive_transform(f));
  }
}

TEST_CASE("integer and rational transforms agree") {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 8; ++n) {
    std::vector<long long> fi(std::size_t{1} << n);
    std::vector<Rat> fr(fi.size());
    for (std::size_t i = 0; i < fi.size(); ++i) {
      fi[i] = static_cast<long long>(rng() % 101) - 50;
      fr[i] = Rat(static_cast<long>(fi[i]));
    }
    const auto ti = walsh_transform(fi);
    const auto tr = walsh_transform(fr);
    for (std::size_t i = 0; i < fi.size(); ++i)
      CHECK(Rat(static_cast<long>(ti[i])) == tr[i]);
  }
}

TEST_CASE("transform is an involution up to 2^n") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 8; ++n) {
    const long scale = 1l << n;
    std::vector<Rat> f(std::size_t{1} << n);
    for (auto& v : f)
      v = rat(static_cast<long>(rng() % 201) - 100,
              static_cast<long>(rng() % 9) + 1);
    const auto twice = walsh_transform(walsh_transform(f));
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(twice[i] == f[i] * scale);
  }
}

TEST_CASE("transform rejects non-power-of-two input") {
  std::vector<Rat> f(3, Rat(1));
  CHECK_THROWS_AS(walsh_transform(f), std::invalid_argument);
  std::vector<long long> g(6, 1);
  CHECK_THROWS_AS(walsh_transform(g), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic purges zeros") {
  WalshPolynomial p(4);
  p.set(3, Rat(2));
  p.add(3, Rat(-2));
  CHECK(p.term_count() == 0);
  p.set(5, rat(1, 2));
  p.set(5, Rat(0));
  CHECK(p.term_count() == 0);
  p.add(7, Rat(0));
  CHECK(p.term_count() == 0);
  p.add(1, Rat(3));
  CHECK(p.coefficient(1) == Rat(3));
  CHECK(p.coefficient(2) == Rat(0));
}

TEST_CASE("circulant matrix shifts its generator cyclically") {
  const SignVector u(4, {-1, 1, 1, 1});
  const SignMatrix A = SignMatrix::circulant(u);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      CHECK(A.entry(i, j) == u.entry(((j - i) % 4 + 4) % 4 + 1));
  // Column mask encodes -1 positions; column 1 is u itself.
  CHECK(A.column_mask(1) == 0x1);
}

TEST_CASE("pairwise ratio sum is the squared matrix Fourier value") {
  std::mt19937_64 rng(19);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<int> entries(static_cast<std::size_t>(n) * n);
      for (auto& e : entries) e = (rng() & 1) ? 1 : -1;
      const SignMatrix A(n, entries);
      for (Mask g = 0; g < (Mask{1} << n); ++g) {
        const GroupElement gamma(n, g);
        const long long hat = matrix_fourier(A, gamma);
        CHECK(pairwise_ratio_character_sum(A, gamma) == hat * hat);
      }
    }
  }
}

TEST_CASE("order-4 circulant evaluates the all-ones character to -4") {
  const SignMatrix A = SignMatrix::circulant(SignVector(4, {-1, 1, 1, 1}));
  const GroupElement all_ones = GroupElement::all_ones(4);
  CHECK(matrix_fourier(A, all_ones) == -4);
  CHECK(pairwise_ratio_character_sum(A, all_ones) == 16);
  CHECK(orthogonal_allones_ratio_sum(4) == 16);
}

TEST_CASE("orthogonal all-ones ratio sum is negative for n = 2 mod 4") {
  CHECK(orthogonal_allones_ratio_sum(2) == 2 - 2 * 1);
  CHECK(orthogonal_allones_ratio_sum(6) == 6 - 6 * 5);
  CHECK(orthogonal_allones_ratio_sum(8) == 8 + 8 * 7);
  // A squared modulus can never equal -n(n-2) < 0, which rules the
  // orthogonal-column case out for these orders.
  CHECK(orthogonal_allones_ratio_sum(6) == -6 * 4);
  CHECK(orthogonal_allones_ratio_sum(10) == -10 * 8);
  for (int n = 6; n <= 22; n += 4) CHECK(orthogonal_allones_ratio_sum(n) < 0);
}
