#pragma once

// Bit-level model of the group Z_2^n and its dual.
//
// A character gamma is an n-bit Mask: bit j-1 corresponds to coordinate j
// (public interfaces are 1-based, storage is 0-based). A sign vector u with
// entries in {+1,-1} is in bijection with the same masks: entry_j = -1 iff
// bit j-1 is set, so the all-ones vector is the group identity 0.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hadwit/common.hpp"

namespace hadwit {

class GroupElement {
 public:
  GroupElement(int n, Mask bits) : n_(n), bits_(bits) {
    if (n < 1 || n > 28)
      throw std::invalid_argument("GroupElement: order out of range: " +
                                  std::to_string(n));
    if (n < 32 && (bits >> n) != 0)
      throw std::invalid_argument("GroupElement: bits above position n-1");
  }

  static GroupElement zero(int n) { return GroupElement(n, 0); }
  static GroupElement all_ones(int n) {
    return GroupElement(n, (Mask{1} << n) - 1);
  }

  int order() const { return n_; }
  Mask bits() const { return bits_; }

  // 1-based coordinate access.
  bool bit(int j) const {
    check_index(j);
    return (bits_ >> (j - 1)) & 1u;
  }

  // Group addition is bitwise XOR.
  GroupElement operator+(const GroupElement& other) const {
    check_order(other);
    return GroupElement(n_, bits_ ^ other.bits_);
  }

  bool operator==(const GroupElement& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }
  bool operator!=(const GroupElement& other) const { return !(*this == other); }

  void check_order(const GroupElement& other) const {
    if (n_ != other.n_)
      throw std::invalid_argument("GroupElement: mismatched orders " +
                                  std::to_string(n_) + " vs " +
                                  std::to_string(other.n_));
  }

 private:
  void check_index(int j) const {
    if (j < 1 || j > n_)
      throw std::out_of_range("coordinate index " + std::to_string(j) +
                              " outside 1.." + std::to_string(n_));
  }

  int n_;
  Mask bits_;
};

// Number of 1-coordinates of gamma.
inline int weight(const GroupElement& g) { return std::popcount(g.bits()); }

// pi_j: the character with a single 1 at coordinate j (1-based).
inline GroupElement basis_element(int j, int n) {
  if (j < 1 || j > n)
    throw std::out_of_range("basis_element: index " + std::to_string(j) +
                            " outside 1.." + std::to_string(n));
  return GroupElement(n, Mask{1} << (j - 1));
}

// A +-1 column vector of length n, candidate generator of a circulant matrix.
class SignVector {
 public:
  SignVector(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 1 || n > 28)
      throw std::invalid_argument("SignVector: order out of range");
    if (static_cast<int>(entries_.size()) != n_)
      throw std::invalid_argument("SignVector: entry count != n");
    for (int e : entries_)
      if (e != 1 && e != -1)
        throw std::invalid_argument("SignVector: entry not +-1");
  }

  explicit SignVector(std::vector<int> entries)
      : SignVector(static_cast<int>(entries.size()), std::move(entries)) {}

  // entry_j = -1  <=>  bit j-1 of mask set.
  static SignVector from_mask(int n, Mask m) {
    std::vector<int> e(n);
    for (int j = 0; j < n; ++j) e[j] = (m >> j) & 1 ? -1 : 1;
    return SignVector(n, std::move(e));
  }

  Mask to_mask() const {
    Mask m = 0;
    for (int j = 0; j < n_; ++j)
      if (entries_[j] == -1) m |= Mask{1} << j;
    return m;
  }

  int order() const { return n_; }
  int entry(int j) const {
    if (j < 1 || j > n_)
      throw std::out_of_range("SignVector: index outside 1..n");
    return entries_[j - 1];
  }
  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const SignVector& o) const {
    return n_ == o.n_ && entries_ == o.entries_;
  }

 private:
  int n_;
  std::vector<int> entries_;
};

}  // namespace hadwit
