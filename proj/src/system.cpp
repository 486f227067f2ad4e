#include "hadwit/system.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hadwit/caps.hpp"

namespace hadwit {

std::string coset_name(Coset c) {
  switch (c) {
    case Coset::even: return "even";
    case Coset::odd: return "odd";
    case Coset::both: return "both";
  }
  throw std::logic_error("coset_name: bad enum value");
}

Coset coset_from_name(const std::string& name) {
  if (name == "even") return Coset::even;
  if (name == "odd") return Coset::odd;
  if (name == "both") return Coset::both;
  throw parse_error("unknown coset selector: '" + name + "'");
}

bool in_coset(Mask m, Coset c) {
  switch (c) {
    case Coset::even: return (std::popcount(m) & 1) == 0;
    case Coset::odd: return (std::popcount(m) & 1) == 1;
    case Coset::both: return true;
  }
  return false;
}

int EquationRow::coefficient_sum() const {
  int s = 0;
  for (const auto& [key, c] : terms) s += c;
  return s;
}

EquationRow build_row(const GroupElement& gamma, int d) {
  const int n = gamma.order();
  if (n % 2 != 0)
    throw std::invalid_argument("build_row: order must be even");
  if (d < 1 || d > n / 2)
    throw std::invalid_argument("build_row: d=" + std::to_string(d) +
                                " outside 1.." + std::to_string(n / 2));
  const int jmax = d < n / 2 ? n : n / 2;
  std::vector<std::pair<Mask, int>> terms;
  terms.reserve(jmax);
  for (int j = 1; j <= jmax; ++j) {
    const Mask key = gamma.bits() ^ (Mask{1} << (j - 1)) ^
                     (Mask{1} << ((j - 1 + d) % n));
    terms.emplace_back(key, 1);
  }
  std::sort(terms.begin(), terms.end());
  // Accumulate colliding keys in place.
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms.size(); ++r) {
    if (w > 0 && terms[w - 1].first == terms[r].first)
      terms[w - 1].second += terms[r].second;
    else
      terms[w++] = terms[r];
  }
  terms.resize(w);
  return EquationRow{gamma, d, std::move(terms)};
}

MtilingSystem::MtilingSystem(int n, Coset coset) : n_(n), coset_(coset) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("MtilingSystem: order must be even, n >= 2");
}

long long MtilingSystem::row_count() const {
  // Rows and columns range over the same coset of gamma values.
  return (n_ / 2) * column_count();
}

long long MtilingSystem::column_count() const {
  return coset_ == Coset::both ? (1ll << n_) : (1ll << (n_ - 1));
}

long long MtilingSystem::column_of(Mask m) const {
  if ((m >> n_) != 0)
    throw std::out_of_range("column_of: mask outside 2^n");
  if (!in_coset(m, coset_))
    throw std::invalid_argument("column_of: mask parity outside the coset");
  // Within a parity coset the top n-1 bits determine the mask (the low bit
  // is forced), and m >> 1 is an order-preserving bijection onto 0..2^(n-1)-1.
  return coset_ == Coset::both ? m : (m >> 1);
}

Mask MtilingSystem::mask_of_column(long long c) const {
  if (c < 0 || c >= column_count())
    throw std::out_of_range("mask_of_column: column out of range");
  if (coset_ == Coset::both) return static_cast<Mask>(c);
  const Mask high = static_cast<Mask>(c);
  const Mask parity = static_cast<Mask>(std::popcount(high) & 1);
  return (high << 1) | (coset_ == Coset::even ? parity : parity ^ 1u);
}

long long MtilingSystem::row_id(Mask gamma, int d) const {
  if (d < 1 || d > n_ / 2)
    throw std::out_of_range("row_id: d outside 1..n/2");
  return column_of(gamma) * (n_ / 2) + (d - 1);
}

std::pair<Mask, int> MtilingSystem::row_of_id(long long id) const {
  if (id < 0 || id >= row_count())
    throw std::out_of_range("row_of_id: id out of range");
  return {mask_of_column(id / (n_ / 2)), static_cast<int>(id % (n_ / 2)) + 1};
}

EquationRow MtilingSystem::row(long long id) const {
  auto [gamma, d] = row_of_id(id);
  return build_row(GroupElement(n_, gamma), d);
}

MtilingSystem build_system(int n, Coset coset) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("build_system: order must be even, n >= 2");
  check_system_cap(n);
  return MtilingSystem(n, coset);
}

WalshPolynomial s_coefficients(int n) {
  if (n < 2) throw std::invalid_argument("s_coefficients: n >= 2 required");
  check_system_cap(n);
  WalshPolynomial S(n);
  for (int d = 1; d < n; ++d)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Mask key = (Mask{1} << j) ^ (Mask{1} << ((j + d) % n)) ^
                         (Mask{1} << k) ^ (Mask{1} << ((k + d) % n));
        S.add(key, 1);
      }
  return S;
}

std::vector<Rat> convolve(const WalshPolynomial& S, const std::vector<Rat>& M) {
  const std::size_t size = std::size_t{1} << S.order();
  if (M.size() != size)
    throw std::invalid_argument("convolve: M length != 2^n");
  std::vector<Rat> out(size, Rat(0));
  for (std::size_t g = 0; g < size; ++g)
    for (const auto& [rho, c] : S.terms())
      out[g] += M[g ^ rho] * c;
  return out;
}

std::vector<Rat> convolve_via_transform(const WalshPolynomial& S,
                                        const std::vector<Rat>& M) {
  const std::size_t size = std::size_t{1} << S.order();
  if (M.size() != size)
    throw std::invalid_argument("convolve_via_transform: M length != 2^n");
  std::vector<Rat> sh = walsh_transform(S.to_dense());
  std::vector<Rat> mh = walsh_transform(M);
  for (std::size_t i = 0; i < size; ++i) sh[i] *= mh[i];
  std::vector<Rat> out = walsh_transform(sh);
  const Rat scale(1, static_cast<unsigned long>(size));
  for (auto& v : out) v *= scale;
  return out;
}

void write_system(const MtilingSystem& sys, std::ostream& out) {
  long long nnz = 0;
  const long long rows = sys.row_count();
  for (long long id = 0; id < rows; ++id)
    nnz += static_cast<long long>(sys.row(id).terms.size());

  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << "% tool: " << kToolName << "\n";
  out << "% n: " << sys.order() << "\n";
  out << "% coset: " << coset_name(sys.coset()) << "\n";
  out << "% convention: " << kConventionTag << "\n";
  out << rows << " " << sys.column_count() << " " << nnz << "\n";
  for (long long id = 0; id < rows; ++id) {
    const EquationRow row = sys.row(id);
    for (const auto& [key, c] : row.terms)
      out << (id + 1) << " " << (sys.column_of(key) + 1) << " " << c << "\n";
  }
}

namespace {

// "% key: value" annotation, or an arbitrary comment to skip.
void parse_comment(const std::string& line, CoordinateMatrix& m) {
  std::istringstream is(line.substr(1));
  std::string key, value;
  if (!(is >> key >> value)) return;
  if (key == "n:") {
    try {
      m.n = std::stoi(value);
    } catch (const std::exception&) {
      throw parse_error("coordinate file: malformed n annotation: '" + value +
                        "'");
    }
  }
  if (key == "coset:") m.coset = coset_from_name(value);
  if (key == "convention:") m.convention = value;
}

}  // namespace

CoordinateMatrix read_coordinate_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw parse_error("coordinate file: missing %%MatrixMarket header");
  if (line.find("coordinate") == std::string::npos)
    throw parse_error("coordinate file: not in coordinate format");

  CoordinateMatrix m;
  long long nnz = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '%') {
      parse_comment(line, m);
      continue;
    }
    std::istringstream is(line);
    if (!(is >> m.nrows >> m.ncols >> nnz) || m.nrows < 0 || m.ncols < 0 ||
        nnz < 0)
      throw parse_error("coordinate file: malformed size line: '" + line + "'");
    break;
  }
  if (nnz < 0) throw parse_error("coordinate file: missing size line");

  m.triples.reserve(static_cast<std::size_t>(nnz));
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream is(line);
    long long r = 0, c = 0, v = 0;
    if (!(is >> r >> c >> v))
      throw parse_error("coordinate file: malformed triple: '" + line + "'");
    if (r < 1 || r > m.nrows || c < 1 || c > m.ncols)
      throw parse_error("coordinate file: index out of range: '" + line + "'");
    m.triples.emplace_back(r, c, v);
  }
  if (static_cast<long long>(m.triples.size()) != nnz)
    throw parse_error("coordinate file: triple count " +
                      std::to_string(m.triples.size()) +
                      " does not match header nnz " + std::to_string(nnz));
  return m;
}

}  // namespace hadwit
