#pragma once

// Invariance group of the system: the index maps j -> k*j + t (mod n) with
// gcd(k, n) = 1, acting simultaneously on characters and on shift distances.
// Provides orbit tables with integer-minimum canonical representatives and
// the reduction of the linear system to orbit coordinates.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hadwit/common.hpp"
#include "hadwit/group.hpp"
#include "hadwit/system.hpp"

namespace hadwit {

// j -> k*j + t (mod n) on 1-based coordinate indices.
struct IndexMap {
  int k;
  int t;
};

// Coordinate j of the input lands at ((k*j + t - 1) mod n) + 1.
GroupElement apply_index_map(const GroupElement& g, int k, int t);
Mask apply_index_map_mask(Mask m, int k, int t, int n);

// gcd(d, n); two shift distances are equivalent iff their gcd classes agree.
int d_class(int d, int n);

// The full semidirect product of cyclic shifts and multiplier automorphisms,
// order n * phi(n). Elements are enumerated by ascending (k, t).
class SymmetryGroup {
 public:
  explicit SymmetryGroup(int n);

  int order_n() const { return n_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<IndexMap>& elements() const { return elements_; }

  Mask apply(int i, Mask m) const;

  // Image of a shift distance d in 1..n/2: k*d mod n folded back into range.
  int fold_shift(int i, int d) const;

 private:
  int n_;
  std::vector<IndexMap> elements_;
  std::vector<std::vector<int>> perms_;  // 0-based position images
};

// rep(m) = integer-minimum mask over the orbit of m, brute forced over all
// n * phi(n) images of every mask.
class OrbitTable {
 public:
  explicit OrbitTable(int n);

  int order() const { return group_.order_n(); }
  const SymmetryGroup& group() const { return group_; }

  Mask rep(Mask m) const;
  long long orbit_size(Mask m) const;
  const std::vector<Mask>& reps() const { return reps_; }
  std::size_t orbit_count() const { return reps_.size(); }

 private:
  SymmetryGroup group_;
  std::vector<Mask> rep_;
  std::vector<Mask> reps_;
  std::map<Mask, long long> sizes_;
};

struct RowKey {
  Mask gamma;
  int d;
  auto operator<=>(const RowKey&) const = default;
};

// Lexicographic minimum of (image of gamma, folded d) over the group; the
// group permutes system rows, so this names the row orbit.
RowKey canonical_row(const SymmetryGroup& G, Mask gamma, int d);
std::vector<RowKey> row_orbit_members(const SymmetryGroup& G, Mask gamma,
                                      int d);

// Rows indexed by row-orbit representatives, columns by character-orbit
// representatives inside the coset. Entry[R, O] sums, over all rows of the
// orbit R, the coefficient each places on the representative column of O.
// A vector constant on row orbits solves the full system against the unit
// target at M(0) exactly when the corresponding reduced vector solves this
// system against the unit at the orbit of 0.
struct ReducedSystem {
  int n = 0;
  Coset coset = Coset::even;
  std::vector<RowKey> row_reps;  // ascending
  std::vector<Mask> col_reps;    // ascending
  std::vector<std::vector<std::pair<long long, long long>>> rows;
  std::string scaling;  // "row-orbit-sum-at-representative"
};

ReducedSystem reduce_system(const MtilingSystem& sys, const OrbitTable& orbits);

// Audit export: one "rep size" line per orbit plus summary comments.
void write_orbit_table(const OrbitTable& t, std::ostream& out);

}  // namespace hadwit
