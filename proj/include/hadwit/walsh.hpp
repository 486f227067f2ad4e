#pragma once

// Walsh characters, the fast Walsh transform, and the matrix Fourier sum.

#include <cstdint>
#include <map>
#include <vector>

#include "hadwit/common.hpp"
#include "hadwit/group.hpp"

namespace hadwit {

// Sparse exact-rational coefficient function on characters. Absent keys are
// zero; arithmetic entry points purge stored zeros.
class WalshPolynomial {
 public:
  explicit WalshPolynomial(int n) : n_(n) {}

  int order() const { return n_; }

  Rat coefficient(Mask gamma) const {
    auto it = coeffs_.find(gamma);
    return it == coeffs_.end() ? Rat(0) : it->second;
  }

  void set(Mask gamma, Rat value) {
    if (value == 0)
      coeffs_.erase(gamma);
    else
      coeffs_[gamma] = std::move(value);
  }

  void add(Mask gamma, const Rat& value) {
    auto [it, inserted] = coeffs_.emplace(gamma, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0) coeffs_.erase(it);
    } else if (it->second == 0) {
      coeffs_.erase(it);
    }
  }

  std::size_t term_count() const { return coeffs_.size(); }

  // Deterministic ascending-mask iteration.
  const std::map<Mask, Rat>& terms() const { return coeffs_; }

  std::vector<Rat> to_dense() const {
    std::vector<Rat> v(std::size_t{1} << n_, Rat(0));
    for (const auto& [g, c] : coeffs_) v[g] = c;
    return v;
  }

 private:
  int n_;
  std::map<Mask, Rat> coeffs_;
};

// gamma(u) = u^gamma = product of u_j over the support of gamma; +1 or -1.
int evaluate_character(const GroupElement& gamma, const SignVector& u);

// Mask-level fast path: sign of x^gamma with both sides encoded as masks
// (set bit means -1 entry on the x side).
inline int character_sign(Mask gamma, Mask x_mask) {
  return std::popcount(gamma & x_mask) & 1 ? -1 : 1;
}

// Unnormalized Walsh transform: out[x] = sum_gamma f[gamma] * x^gamma.
// Self-inverse up to the factor 2^n. Input length must be a power of two.
std::vector<Rat> walsh_transform(const std::vector<Rat>& f);

// Integer variant used by hot paths (oracle cross-checks); same kernel.
std::vector<long long> walsh_transform(const std::vector<long long>& f);

// An n x n matrix with +-1 entries, stored row-major. Columns are regarded
// as elements of Z_2^n.
class SignMatrix {
 public:
  SignMatrix(int n, std::vector<int> entries);

  // Circulant matrix generated by u: entry(i,j) = u_{j-i+1 mod n}.
  static SignMatrix circulant(const SignVector& u);

  int order() const { return n_; }
  int entry(int i, int j) const;          // 1-based
  Mask column_mask(int j) const;          // set bit i-1 <=> entry(i,j) = -1

 private:
  int n_;
  std::vector<int> entries_;
};

// hat A(gamma) = sum_j gamma(a_j) over the columns a_j of A.
int matrix_fourier(const SignMatrix& A, const GroupElement& gamma);

// sum_{j,k} (a_j / a_k)^gamma with coordinate-wise division (= multiplication
// for +-1 entries). Equals matrix_fourier(A, gamma)^2 for every A, gamma.
long long pairwise_ratio_character_sum(const SignMatrix& A,
                                       const GroupElement& gamma);

// For a +-1 matrix with pairwise-orthogonal columns and n even, every
// off-diagonal ratio vector a_j/a_k has exactly n/2 entries equal to -1, so
// the all-ones character evaluates the pairwise ratio sum to
//   n + n(n-1) * (-1)^(n/2).
// For n = 2 mod 4 this is n - n(n-1) = -n(n-2) < 0, impossible for a squared
// modulus; returns that forced value.
long long orthogonal_allones_ratio_sum(int n);

}  // namespace hadwit
