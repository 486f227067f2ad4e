#pragma once

// The homogeneous linear system over the characters of Z_2^n. One row per
// (gamma, d) encodes the cyclic orthogonality constraint
//   sum_{j-k=d} M(gamma + pi_j + pi_k) = 0,
// together with the squared-autocorrelation coefficient polynomial S and the
// convolution S * M.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hadwit/common.hpp"
#include "hadwit/group.hpp"
#include "hadwit/walsh.hpp"

namespace hadwit {

enum class Coset { even, odd, both };

std::string coset_name(Coset c);
Coset coset_from_name(const std::string& name);
bool in_coset(Mask m, Coset c);

// One equation row. Keys are gamma ^ pi_j ^ pi_{j+d}; for d < n/2 the index
// j runs over 1..n, for d = n/2 over 1..n/2 only, so each antipodal position
// pair is counted once (the "d-half/1" convention). Colliding keys accumulate
// integer coefficients; the coefficient sum is n for d < n/2 and n/2 at the
// boundary. Keys never leave the parity coset of gamma.
struct EquationRow {
  GroupElement gamma;
  int d;
  std::vector<std::pair<Mask, int>> terms;  // sorted by key, no zeros

  int coefficient_sum() const;
};

EquationRow build_row(const GroupElement& gamma, int d);

// Streaming description of the system restricted to a parity coset: rows in
// lexicographic (gamma, d) order, row id = coset_rank(gamma) * (n/2) + d - 1.
// Never materializes rows; each is regenerated on demand.
class MtilingSystem {
 public:
  MtilingSystem(int n, Coset coset);

  int order() const { return n_; }
  Coset coset() const { return coset_; }

  long long row_count() const;    // (n/2) * number of gamma in the coset
  long long column_count() const;

  long long column_of(Mask m) const;       // rank of m within the coset
  Mask mask_of_column(long long c) const;

  long long row_id(Mask gamma, int d) const;
  std::pair<Mask, int> row_of_id(long long id) const;
  EquationRow row(long long id) const;

 private:
  int n_;
  Coset coset_;
};

// Checks the cap and parity before constructing.
MtilingSystem build_system(int n, Coset coset);

// Monomial-by-monomial expansion of sum_{d=1}^{n-1} (sum_j u_j u_{j+d})^2:
// each (d, j, k) triple contributes +1 at pi_j ^ pi_{j+d} ^ pi_k ^ pi_{k+d}.
// Support lies in the even coset with weights in {0, 2, 4}.
WalshPolynomial s_coefficients(int n);

// (S * M)(gamma) = sum_rho M(gamma ^ rho) S(rho), directly from the sparse
// terms of S, and the same convolution through three Walsh transforms. The
// two must agree exactly.
std::vector<Rat> convolve(const WalshPolynomial& S, const std::vector<Rat>& M);
std::vector<Rat> convolve_via_transform(const WalshPolynomial& S,
                                        const std::vector<Rat>& M);

// Coordinate-format text export: header line, comment block recording n,
// coset and convention tag, a "nrows ncols nnz" size line, then 1-based
// "row col value" triples in row-major order.
void write_system(const MtilingSystem& sys, std::ostream& out);

struct CoordinateMatrix {
  long long nrows = 0;
  long long ncols = 0;
  std::vector<std::tuple<long long, long long, long long>> triples;  // 1-based
  int n = 0;  // 0 when the comment block carries no annotations
  std::optional<Coset> coset;
  std::string convention;
};

CoordinateMatrix read_coordinate_file(std::istream& in);

}  // namespace hadwit
