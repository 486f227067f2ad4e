#include "hadwit/walsh.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace hadwit {

int evaluate_character(const GroupElement& gamma, const SignVector& u) {
  if (gamma.order() != u.order())
    throw std::invalid_argument("evaluate_character: mismatched orders");
  return character_sign(gamma.bits(), u.to_mask());
}

namespace {

template <typename T>
std::vector<T> butterfly(const std::vector<T>& f) {
  const std::size_t size = f.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("walsh_transform: length " +
                                std::to_string(size) +
                                " is not a power of two");
  std::vector<T> v = f;
  for (std::size_t stride = 1; stride < size; stride <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * stride) {
      for (std::size_t j = base; j < base + stride; ++j) {
        T a = v[j];
        T b = v[j + stride];
        v[j] = a + b;
        v[j + stride] = a - b;
      }
    }
  }
  return v;
}

}  // namespace

std::vector<Rat> walsh_transform(const std::vector<Rat>& f) {
  return butterfly(f);
}

std::vector<long long> walsh_transform(const std::vector<long long>& f) {
  return butterfly(f);
}

SignMatrix::SignMatrix(int n, std::vector<int> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1 || n > 28) throw std::invalid_argument("SignMatrix: bad order");
  if (entries_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("SignMatrix: entry count != n*n");
  for (int e : entries_)
    if (e != 1 && e != -1)
      throw std::invalid_argument("SignMatrix: entry not +-1");
}

SignMatrix SignMatrix::circulant(const SignVector& u) {
  const int n = u.order();
  std::vector<int> e(static_cast<std::size_t>(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      e[(i - 1) * static_cast<std::size_t>(n) + (j - 1)] =
          u.entry((j - i + n) % n + 1);
  return SignMatrix(n, std::move(e));
}

int SignMatrix::entry(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw std::out_of_range("SignMatrix: index outside 1..n");
  return entries_[(i - 1) * static_cast<std::size_t>(n_) + (j - 1)];
}

Mask SignMatrix::column_mask(int j) const {
  Mask m = 0;
  for (int i = 1; i <= n_; ++i)
    if (entry(i, j) == -1) m |= Mask{1} << (i - 1);
  return m;
}

int matrix_fourier(const SignMatrix& A, const GroupElement& gamma) {
  if (A.order() != gamma.order())
    throw std::invalid_argument("matrix_fourier: mismatched orders");
  int sum = 0;
  for (int j = 1; j <= A.order(); ++j)
    sum += character_sign(gamma.bits(), A.column_mask(j));
  return sum;
}

long long pairwise_ratio_character_sum(const SignMatrix& A,
                                       const GroupElement& gamma) {
  if (A.order() != gamma.order())
    throw std::invalid_argument("pairwise_ratio_character_sum: mismatched orders");
  const int n = A.order();
  long long sum = 0;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k)
      sum += character_sign(gamma.bits(),
                            A.column_mask(j) ^ A.column_mask(k));
  return sum;
}

long long orthogonal_allones_ratio_sum(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument(
        "orthogonal_allones_ratio_sum: n must be even, n >= 2");
  const long long nn = n;
  const int sign = (n / 2) % 2 ? -1 : 1;
  return nn + nn * (nn - 1) * sign;
}

}  // namespace hadwit
