#pragma once

// Exact linear algebra over rationals and 31-bit prime fields: streaming
// row-echelon elimination with provenance tracking (each echelon row is a
// recorded combination of original rows), rank certification, left solves
// against a target functional, and kernel bases.
//
// Rank certification logic: for integer matrices the rank over GF(p) never
// exceeds the rational rank, so a prime-field rank equal to the column count
// certifies rational full column rank exactly; anything less is settled by a
// rational pass (or reported as a certified lower bound when that pass is
// out of reach).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hadwit/common.hpp"
#include "hadwit/system.hpp"

namespace hadwit {

struct RowRecord {
  long long id = 0;
  std::vector<std::pair<long long, long long>> entries;  // (col, value)
};

// Forward-only stream of sparse integer rows; rewindable for multi-pass
// algorithms (modular pivot selection, then rational replay).
class RowSource {
 public:
  virtual ~RowSource() = default;
  virtual void rewind() = 0;
  virtual bool next(RowRecord& out) = 0;
  virtual long long nrows() const = 0;
  virtual long long ncols() const = 0;
};

struct SparseMatrix {
  long long ncols = 0;
  std::vector<RowRecord> rows;
};

class SparseMatrixSource : public RowSource {
 public:
  explicit SparseMatrixSource(const SparseMatrix& m) : m_(&m) {}
  void rewind() override { pos_ = 0; }
  bool next(RowRecord& out) override;
  long long nrows() const override {
    return static_cast<long long>(m_->rows.size());
  }
  long long ncols() const override { return m_->ncols; }

 private:
  const SparseMatrix* m_;
  std::size_t pos_ = 0;
};

// Streams the Mtiling system without materializing it; row ids are the
// lexicographic (gamma, d) positions, columns the coset ranks.
class MtilingRowSource : public RowSource {
 public:
  explicit MtilingRowSource(const MtilingSystem& sys) : sys_(sys) {}
  void rewind() override { pos_ = 0; }
  bool next(RowRecord& out) override;
  long long nrows() const override { return sys_.row_count(); }
  long long ncols() const override { return sys_.column_count(); }

 private:
  MtilingSystem sys_;
  long long pos_ = 0;
};

// Adapts a parsed coordinate file; rows are 0-based file row indices and
// keep their position even when empty.
class CoordinateSource : public RowSource {
 public:
  explicit CoordinateSource(const CoordinateMatrix& m);
  void rewind() override { pos_ = 0; }
  bool next(RowRecord& out) override;
  long long nrows() const override {
    return static_cast<long long>(rows_.size());
  }
  long long ncols() const override { return ncols_; }

 private:
  long long ncols_ = 0;
  std::vector<RowRecord> rows_;
  std::size_t pos_ = 0;
};

struct EliminationStats {
  long long rows_consumed = 0;
  long long echelon_nonzeros = 0;
  long long max_numerator_bits = 0;  // rational path only
};

struct RankResult {
  long long rank = 0;
  long long nrows = 0;
  long long ncols = 0;
  std::string field;      // "rational" or "mod <p>[, mod <q>]"
  bool certified = false; // true when the value is the exact rational rank
  std::vector<long long> pivot_columns;  // ascending
  EliminationStats stats;
};

struct RankOptions {
  std::string field = "auto";  // "auto" | "rational" | "prime"
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;          // 0: derive from seed
  long long rational_cutoff = 600;  // auto: rational pass when ncols <= this
  bool early_exit = true;           // stop once rank == ncols
};

RankResult rank(RowSource& src, const RankOptions& opt = {});

struct SolveOptions {
  std::uint64_t seed = 0;
  bool modular_prepass = true;  // pick pivot rows mod p, replay rationally
};

// Exact c with sum_i c_i * row_i = target, keyed by source row id; nullopt
// when the target lies outside the row space. Falls back to a full rational
// elimination when the prepass prime proves unlucky.
std::optional<std::map<long long, Rat>> solve_left(
    RowSource& src, const std::vector<std::pair<long long, long long>>& target,
    const SolveOptions& opt = {});

// Basis of {x : Ax = 0} over the rationals, as dense columns.
std::vector<std::vector<Rat>> kernel_basis(RowSource& src);

// Deterministic 31-bit prime in (2^30, 2^31) from (seed, index).
std::uint32_t derive_prime(std::uint64_t seed, int index);

}  // namespace hadwit
