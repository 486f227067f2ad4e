#include "hadwit/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "hadwit/caps.hpp"

namespace hadwit {

Mask apply_index_map_mask(Mask m, int k, int t, int n) {
  if (n < 1) throw std::invalid_argument("apply_index_map: n < 1");
  if (std::gcd(((k % n) + n) % n, n) != 1)
    throw std::invalid_argument("apply_index_map: k=" + std::to_string(k) +
                                " not coprime to n=" + std::to_string(n));
  Mask out = 0;
  for (int j = 1; j <= n; ++j)
    if ((m >> (j - 1)) & 1u) {
      const int q = ((k * j + t - 1) % n + n) % n;  // 0-based image position
      out |= Mask{1} << q;
    }
  return out;
}

GroupElement apply_index_map(const GroupElement& g, int k, int t) {
  return GroupElement(g.order(),
                      apply_index_map_mask(g.bits(), k, t, g.order()));
}

int d_class(int d, int n) {
  if (d < 1 || d > n / 2)
    throw std::out_of_range("d_class: d outside 1..n/2");
  return std::gcd(d, n);
}

SymmetryGroup::SymmetryGroup(int n) : n_(n) {
  if (n < 1 || n > 28)
    throw std::invalid_argument("SymmetryGroup: order out of range");
  for (int k = 1; k <= n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    for (int t = 0; t < n; ++t) {
      elements_.push_back({k, t});
      std::vector<int> perm(n);
      for (int p = 0; p < n; ++p)
        perm[p] = ((k * (p + 1) + t - 1) % n + n) % n;
      perms_.push_back(std::move(perm));
    }
  }
}

Mask SymmetryGroup::apply(int i, Mask m) const {
  const std::vector<int>& perm = perms_[i];
  Mask out = 0;
  while (m) {
    const int p = std::countr_zero(m);
    out |= Mask{1} << perm[p];
    m &= m - 1;
  }
  return out;
}

int SymmetryGroup::fold_shift(int i, int d) const {
  const int x = (elements_[i].k * d) % n_;  // never 0: gcd(k,n)=1, d < n
  return std::min(x, n_ - x);
}

OrbitTable::OrbitTable(int n) : group_(n) {
  check_system_cap(n);
  const std::size_t space = std::size_t{1} << n;
  const Mask unassigned = ~Mask{0};
  rep_.assign(space, unassigned);
  std::vector<Mask> images;
  for (Mask m = 0; m < space; ++m) {
    if (rep_[m] != unassigned) continue;
    // Ascending scan: the first unassigned mask is its orbit's minimum.
    images.clear();
    for (int i = 0; i < group_.size(); ++i) images.push_back(group_.apply(i, m));
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    for (Mask im : images) rep_[im] = m;
    reps_.push_back(m);
    sizes_[m] = static_cast<long long>(images.size());
  }
}

Mask OrbitTable::rep(Mask m) const {
  if ((m >> group_.order_n()) != 0)
    throw std::out_of_range("OrbitTable::rep: mask outside 2^n");
  return rep_[m];
}

long long OrbitTable::orbit_size(Mask m) const { return sizes_.at(rep(m)); }

RowKey canonical_row(const SymmetryGroup& G, Mask gamma, int d) {
  RowKey best{G.apply(0, gamma), G.fold_shift(0, d)};
  for (int i = 1; i < G.size(); ++i) {
    const RowKey cand{G.apply(i, gamma), G.fold_shift(i, d)};
    if (cand < best) best = cand;
  }
  return best;
}

std::vector<RowKey> row_orbit_members(const SymmetryGroup& G, Mask gamma,
                                      int d) {
  std::vector<RowKey> members;
  members.reserve(G.size());
  for (int i = 0; i < G.size(); ++i)
    members.push_back({G.apply(i, gamma), G.fold_shift(i, d)});
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

ReducedSystem reduce_system(const MtilingSystem& sys,
                            const OrbitTable& orbits) {
  if (sys.order() != orbits.order())
    throw std::invalid_argument("reduce_system: mismatched orders");
  const SymmetryGroup& G = orbits.group();

  ReducedSystem red;
  red.n = sys.order();
  red.coset = sys.coset();
  red.scaling = "row-orbit-sum-at-representative";
  for (Mask r : orbits.reps())
    if (in_coset(r, sys.coset())) red.col_reps.push_back(r);
  std::map<Mask, long long> col_index;
  for (std::size_t i = 0; i < red.col_reps.size(); ++i)
    col_index[red.col_reps[i]] = static_cast<long long>(i);

  // One streaming pass: every row adds its coefficient at representative
  // columns into the aggregate row of its row orbit.
  std::map<RowKey, std::map<long long, long long>> agg;
  const long long rows = sys.row_count();
  for (long long id = 0; id < rows; ++id) {
    const auto [gamma, d] = sys.row_of_id(id);
    const RowKey key = canonical_row(G, gamma, d);
    auto& acc = agg[key];
    const EquationRow row = build_row(GroupElement(sys.order(), gamma), d);
    for (const auto& [mask, c] : row.terms)
      if (orbits.rep(mask) == mask) acc[col_index.at(mask)] += c;
  }

  red.row_reps.reserve(agg.size());
  red.rows.reserve(agg.size());
  for (auto& [key, acc] : agg) {
    red.row_reps.push_back(key);
    std::vector<std::pair<long long, long long>> row(acc.begin(), acc.end());
    red.rows.push_back(std::move(row));
  }
  return red;
}

void write_orbit_table(const OrbitTable& t, std::ostream& out) {
  out << "% tool: " << kToolName << "\n";
  out << "% n: " << t.order() << "\n";
  out << "% group-order: " << t.group().size() << "\n";
  out << "% orbits: " << t.orbit_count() << "\n";
  for (Mask r : t.reps())
    out << "0x" << std::hex << r << std::dec << " " << t.orbit_size(r) << "\n";
}

}  // namespace hadwit
