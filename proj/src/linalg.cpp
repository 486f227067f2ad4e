#include "hadwit/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hadwit {

bool SparseMatrixSource::next(RowRecord& out) {
  if (pos_ >= m_->rows.size()) return false;
  out = m_->rows[pos_++];
  return true;
}

bool MtilingRowSource::next(RowRecord& out) {
  if (pos_ >= sys_.row_count()) return false;
  const EquationRow row = sys_.row(pos_);
  out.id = pos_;
  out.entries.clear();
  // Terms are sorted by mask and the coset rank is monotone in the mask.
  for (const auto& [key, c] : row.terms)
    out.entries.emplace_back(sys_.column_of(key), c);
  ++pos_;
  return true;
}

CoordinateSource::CoordinateSource(const CoordinateMatrix& m)
    : ncols_(m.ncols) {
  rows_.resize(static_cast<std::size_t>(m.nrows));
  for (long long i = 0; i < m.nrows; ++i)
    rows_[static_cast<std::size_t>(i)].id = i;
  auto triples = m.triples;
  std::sort(triples.begin(), triples.end());
  for (const auto& [r, c, v] : triples) {
    auto& entries = rows_[static_cast<std::size_t>(r - 1)].entries;
    if (!entries.empty() && entries.back().first == c - 1)
      entries.back().second += v;  // duplicate triples accumulate
    else
      entries.emplace_back(c - 1, v);
  }
  for (auto& rr : rows_)
    std::erase_if(rr.entries, [](const auto& e) { return e.second == 0; });
}

bool CoordinateSource::next(RowRecord& out) {
  if (pos_ >= rows_.size()) return false;
  out = rows_[pos_++];
  return true;
}

namespace {

// ---------------------------------------------------------------- GF(p) ---

struct Barrett {
  std::uint32_t p;
  std::uint64_t magic;  // floor(2^64 / p)

  explicit Barrett(std::uint32_t prime) : p(prime) {
    if (p < 3 || p >= (1u << 31))
      throw std::invalid_argument("prime field: modulus outside (2, 2^31)");
    magic = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(1) << 64) / p);
  }

  // z mod p for any z < 2^63 (one correction step suffices).
  std::uint64_t reduce(std::uint64_t z) const {
    const std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(z) * magic) >> 64);
    std::uint64_t r = z - q * p;
    if (r >= p) r -= p;
    return r;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(a * b);
  }

  std::uint64_t pow(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t acc = 1;
    while (e) {
      if (e & 1) acc = mul(acc, b);
      b = mul(b, b);
      e >>= 1;
    }
    return acc;
  }

  std::uint64_t inverse(std::uint64_t a) const { return pow(a, p - 2); }

  std::uint64_t from_int(long long v) const {
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  }
};

// Incremental row echelon over GF(p) with dense working rows. Echelon rows
// are stored as normalized suffixes starting at their pivot column.
class ModularEliminator {
 public:
  ModularEliminator(long long ncols, std::uint32_t p)
      : C_(ncols), bar_(p), piv_(static_cast<std::size_t>(ncols)),
        scratch_(static_cast<std::size_t>(ncols)) {}

  bool insert(long long row_id,
              const std::vector<std::pair<long long, long long>>& entries) {
    ++rows_consumed_;
    std::fill(scratch_.begin(), scratch_.end(), std::uint64_t{0});
    for (const auto& [c, v] : entries) {
      if (c < 0 || c >= C_)
        throw std::out_of_range("eliminator: column index out of range");
      scratch_[static_cast<std::size_t>(c)] =
          bar_.reduce(scratch_[static_cast<std::size_t>(c)] + bar_.from_int(v));
    }
    long long pos = 0;
    while (pos < C_) {
      const std::uint64_t r = scratch_[static_cast<std::size_t>(pos)];
      if (r == 0) {
        ++pos;
        continue;
      }
      auto& suffix = piv_[static_cast<std::size_t>(pos)];
      if (suffix.empty()) {
        const std::uint64_t inv = bar_.inverse(r);
        suffix.resize(static_cast<std::size_t>(C_ - pos));
        for (long long j = 0; j < C_ - pos; ++j)
          suffix[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(
              bar_.mul(inv, scratch_[static_cast<std::size_t>(pos + j)]));
        pivot_rows_.push_back(row_id);
        pivot_cols_.push_back(pos);
        ++rank_;
        return true;
      }
      const std::uint64_t g = bar_.p - r;
      std::uint64_t* v = scratch_.data() + pos;
      const std::uint32_t* s = suffix.data();
      const long long len = C_ - pos;
      for (long long j = 0; j < len; ++j) v[j] = bar_.reduce(v[j] + g * s[j]);
      // v[0] = r + (p - r) * 1 reduces to zero; the scan moves on.
    }
    return false;
  }

  long long rank() const { return rank_; }
  long long rows_consumed() const { return rows_consumed_; }
  const std::vector<long long>& pivot_rows() const { return pivot_rows_; }
  const std::vector<long long>& pivot_cols() const { return pivot_cols_; }

  long long echelon_nonzeros() const {
    long long nnz = 0;
    for (const auto& suffix : piv_)
      for (std::uint32_t x : suffix) nnz += x != 0;
    return nnz;
  }

 private:
  long long C_;
  Barrett bar_;
  std::vector<std::vector<std::uint32_t>> piv_;  // by pivot column
  std::vector<std::uint64_t> scratch_;
  std::vector<long long> pivot_rows_;  // insertion order
  std::vector<long long> pivot_cols_;
  long long rank_ = 0;
  long long rows_consumed_ = 0;
};

// ------------------------------------------------------------- rationals ---

using RatRow = std::map<long long, Rat>;

// Incremental reduced row echelon form over Q. Every echelon row optionally
// carries its provenance: the exact combination of original source rows it
// equals. Kept fully back-eliminated so that pivot rows vanish at all other
// pivot columns; target expression is then a single ascending pass.
class RationalEliminator {
 public:
  RationalEliminator(long long ncols, bool provenance)
      : C_(ncols), track_(provenance) {}

  bool insert(long long row_id,
              const std::vector<std::pair<long long, long long>>& ints) {
    ++stats_.rows_consumed;
    RatRow cur;
    for (const auto& [c, v] : ints) {
      if (c < 0 || c >= C_)
        throw std::out_of_range("eliminator: column index out of range");
      if (v == 0) continue;
      cur[c] += static_cast<long>(v);
      if (cur[c] == 0) cur.erase(c);
    }
    RatRow prov;
    if (track_) prov[row_id] = 1;
    reduce(cur, track_ ? &prov : nullptr);
    if (cur.empty()) return false;

    // Markowitz-style pivot: fewest echelon nonzeros in the candidate
    // column, ties to the lowest column index.
    long long pivot = -1;
    long long best = 0;
    for (const auto& [c, v] : cur) {
      const auto oit = occupancy_.find(c);
      const long long occ = oit == occupancy_.end() ? 0 : oit->second;
      if (pivot < 0 || occ < best) {
        pivot = c;
        best = occ;
      }
    }

    const Rat f = cur[pivot];
    for (auto& [c, v] : cur) v /= f;
    if (track_)
      for (auto& [r, v] : prov) v /= f;

    // Back-eliminate the new pivot column from every stored row; their
    // provenance moves by the new row's provenance.
    for (auto& [pc, er] : rows_) {
      auto hit = er.entries.find(pivot);
      if (hit == er.entries.end()) continue;
      const Rat g = -hit->second;
      axpy(er.entries, cur, g, true);
      if (track_) axpy(er.prov, prov, g, false);
    }

    for (const auto& [c, v] : cur) {
      ++occupancy_[c];
      note_bits(v);
    }
    rows_.emplace(pivot, EchelonRow{std::move(cur), std::move(prov)});
    return true;
  }

  long long rank() const { return static_cast<long long>(rows_.size()); }

  std::vector<long long> pivot_columns() const {
    std::vector<long long> cols;
    cols.reserve(rows_.size());
    for (const auto& [c, er] : rows_) cols.push_back(c);
    return cols;
  }

  std::optional<RatRow> express(
      const std::vector<std::pair<long long, long long>>& target) const {
    RatRow cur;
    for (const auto& [c, v] : target) {
      if (c < 0 || c >= C_)
        throw std::out_of_range("express: column index out of range");
      if (v == 0) continue;
      cur[c] += static_cast<long>(v);
      if (cur[c] == 0) cur.erase(c);
    }
    RatRow acc;
    auto it = cur.begin();
    while (it != cur.end()) {
      const auto pit = rows_.find(it->first);
      if (pit == rows_.end()) {
        ++it;  // free column; a later pivot row may still cancel it
        continue;
      }
      const long long c = it->first;
      const Rat g = it->second;
      axpy(cur, pit->second.entries, -g, false);
      axpy(acc, pit->second.prov, g, false);
      it = cur.upper_bound(c);
    }
    // Reduced rows vanish at all other pivot columns, so the remainder is
    // supported on free columns only; it is zero exactly on the row space.
    if (!cur.empty()) return std::nullopt;
    return acc;
  }

  std::vector<std::vector<Rat>> kernel() const {
    std::vector<std::vector<Rat>> basis;
    for (long long f = 0; f < C_; ++f) {
      if (rows_.count(f)) continue;
      std::vector<Rat> x(static_cast<std::size_t>(C_), Rat(0));
      x[static_cast<std::size_t>(f)] = 1;
      for (const auto& [p, er] : rows_) {
        auto hit = er.entries.find(f);
        if (hit != er.entries.end())
          x[static_cast<std::size_t>(p)] = -hit->second;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

  EliminationStats stats() const {
    EliminationStats s = stats_;
    for (const auto& [c, er] : rows_)
      s.echelon_nonzeros += static_cast<long long>(er.entries.size());
    return s;
  }

 private:
  struct EchelonRow {
    RatRow entries;
    RatRow prov;
  };

  // Forward reduction against the stored pivots: ascending scan. Stored rows
  // vanish at every other pivot column, so each subtraction introduces
  // entries at free columns only and the scan never moves backwards.
  void reduce(RatRow& cur, RatRow* prov) const {
    auto it = cur.begin();
    while (it != cur.end()) {
      const auto pit = rows_.find(it->first);
      if (pit == rows_.end()) {
        ++it;
        continue;
      }
      const long long c = it->first;
      const Rat g = -it->second;
      axpy(cur, pit->second.entries, g, false);
      if (prov) axpy(*prov, pit->second.prov, g, false);
      it = cur.upper_bound(c);
    }
  }

  // dst += g * src. `counted` maintains the echelon column occupancy.
  void axpy(RatRow& dst, const RatRow& src, const Rat& g, bool counted) const {
    if (g == 0) return;
    for (const auto& [c, v] : src) {
      auto [it, fresh] = dst.try_emplace(c, 0);
      it->second += g * v;
      if (it->second == 0) {
        dst.erase(it);
        if (counted && !fresh) --occupancy_[c];
      } else if (fresh && counted) {
        ++occupancy_[c];
      }
    }
  }

  void note_bits(const Rat& v) {
    const long long bits = static_cast<long long>(
        mpz_sizeinbase(v.get_num().get_mpz_t(), 2));
    stats_.max_numerator_bits = std::max(stats_.max_numerator_bits, bits);
  }

  long long C_;
  bool track_;
  std::map<long long, EchelonRow> rows_;  // keyed by pivot column
  mutable std::map<long long, long long> occupancy_;
  EliminationStats stats_;
};

void consume_rational(RowSource& src, RationalEliminator& el, bool early_exit) {
  src.rewind();
  RowRecord rec;
  while (src.next(rec)) {
    el.insert(rec.id, rec.entries);
    if (early_exit && el.rank() == src.ncols()) break;
  }
}

}  // namespace

RankResult rank(RowSource& src, const RankOptions& opt) {
  RankResult res;
  res.nrows = src.nrows();
  res.ncols = src.ncols();
  const long long C = src.ncols();

  const auto run_rational = [&]() {
    RationalEliminator el(C, false);
    consume_rational(src, el, opt.early_exit);
    res.rank = el.rank();
    res.field = "rational";
    res.certified = true;
    res.pivot_columns = el.pivot_columns();
    res.stats = el.stats();
  };

  const auto run_modular = [&](std::uint32_t p) {
    ModularEliminator el(C, p);
    src.rewind();
    RowRecord rec;
    while (src.next(rec)) {
      el.insert(rec.id, rec.entries);
      if (opt.early_exit && el.rank() == C) break;
    }
    res.rank = el.rank();
    res.pivot_columns = el.pivot_cols();
    std::sort(res.pivot_columns.begin(), res.pivot_columns.end());
    res.stats = EliminationStats{el.rows_consumed(), el.echelon_nonzeros(), 0};
    return el.rank();
  };

  if (opt.field == "rational") {
    run_rational();
    return res;
  }
  if (opt.field != "auto" && opt.field != "prime")
    throw std::invalid_argument("rank: unknown field selector '" + opt.field +
                                "'");

  const std::uint32_t p = opt.prime ? opt.prime : derive_prime(opt.seed, 0);
  const long long r1 = run_modular(p);
  res.field = "mod " + std::to_string(p);
  res.certified = r1 == C;  // GF(p) rank <= rational rank <= ncols
  if (opt.field == "prime" || res.certified) return res;

  if (C <= opt.rational_cutoff) {
    run_rational();
    return res;
  }

  // Out of rational reach: a second prime tightens the certified lower bound.
  const std::uint32_t p2 = opt.prime ? opt.prime : derive_prime(opt.seed, 1);
  const long long r2 = run_modular(p2);
  res.rank = std::max(r1, r2);
  res.field = "mod " + std::to_string(p) + ", mod " + std::to_string(p2);
  res.certified = res.rank == C;
  return res;
}

std::optional<std::map<long long, Rat>> solve_left(
    RowSource& src, const std::vector<std::pair<long long, long long>>& target,
    const SolveOptions& opt) {
  const long long C = src.ncols();

  if (opt.modular_prepass) {
    ModularEliminator mel(C, derive_prime(opt.seed, 0));
    src.rewind();
    RowRecord rec;
    while (src.next(rec)) {
      mel.insert(rec.id, rec.entries);
      if (mel.rank() == C) break;
    }
    const std::set<long long> chosen(mel.pivot_rows().begin(),
                                     mel.pivot_rows().end());
    RationalEliminator rel(C, true);
    src.rewind();
    while (src.next(rec))
      if (chosen.count(rec.id)) rel.insert(rec.id, rec.entries);
    auto sol = rel.express(target);
    if (sol) return sol;
    // Either no solution exists or the prime lost rank; the full rational
    // pass below settles it either way.
  }

  RationalEliminator rel(C, true);
  consume_rational(src, rel, true);
  return rel.express(target);
}

std::vector<std::vector<Rat>> kernel_basis(RowSource& src) {
  RationalEliminator el(src.ncols(), false);
  consume_rational(src, el, true);
  return el.kernel();
}

namespace {

std::uint64_t splitmix_next(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t acc = 1;
  b %= m;
  while (e) {
    if (e & 1)
      acc = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(acc) * b % m);
    b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % m);
    e >>= 1;
  }
  return acc;
}

// Deterministic Miller-Rabin; the fixed base set is exact far beyond 2^31.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

std::uint32_t derive_prime(std::uint64_t seed, int index) {
  std::uint64_t s = seed;
  std::uint64_t z = 0;
  for (int i = 0; i <= index; ++i) z = splitmix_next(s);
  std::uint64_t c = (1ull << 30) + z % ((1ull << 30) - 2);
  c |= 1;
  while (!is_prime_u64(c)) c += 2;  // 2^31 - 1 is prime, so this stays 31-bit
  return static_cast<std::uint32_t>(c);
}

}  // namespace hadwit
