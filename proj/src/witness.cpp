#include "hadwit/witness.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "hadwit/caps.hpp"
#include "hadwit/linalg.hpp"

namespace hadwit {

namespace {

long long choose2(long long m) { return m * (m - 1) / 2; }

SparseMatrix tridiagonal_matrix(const TridiagonalSystem& T) {
  SparseMatrix m;
  m.ncols = T.rows();
  for (long long i = 0; i < T.rows(); ++i) {
    RowRecord rec;
    rec.id = i;
    const std::size_t ix = static_cast<std::size_t>(i);
    if (i > 0 && T.sub[ix] != 0) rec.entries.emplace_back(i - 1, T.sub[ix]);
    if (T.diag[ix] != 0) rec.entries.emplace_back(i, T.diag[ix]);
    if (i + 1 < T.rows() && T.super[ix] != 0)
      rec.entries.emplace_back(i + 1, T.super[ix]);
    m.rows.push_back(std::move(rec));
  }
  return m;
}

}  // namespace

TridiagonalSystem build_tridiagonal(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("build_tridiagonal: order must be even");
  TridiagonalSystem T;
  T.n = n;
  const int half = n / 2;
  T.sub.assign(half + 1, 0);
  T.diag.assign(half + 1, 0);
  T.super.assign(half + 1, 0);
  for (int i = 0; i <= half; ++i) {
    const long long w = 2ll * i;
    if (w >= 2) T.sub[i] = choose2(n - w + 2);
    T.diag[i] = w * (n - w);
    if (w + 2 <= n) T.super[i] = choose2(w + 2);
  }
  return T;
}

long long tridiagonal_rank(const TridiagonalSystem& T) {
  const SparseMatrix m = tridiagonal_matrix(T);
  SparseMatrixSource src(m);
  RankOptions opt;
  opt.field = "rational";
  return rank(src, opt).rank;
}

std::optional<std::map<int, Rat>> symmetric_witness(int n) {
  if (n % 4 != 0)
    throw std::invalid_argument(
        "symmetric_witness: order must be divisible by 4");
  check_system_cap(n);
  const SparseMatrix m = tridiagonal_matrix(build_tridiagonal(n));
  SparseMatrixSource src(m);
  SolveOptions opt;
  opt.modular_prepass = false;  // a handful of rows; solve rationally
  auto sol = solve_left(src, {{0, 1}}, opt);
  if (!sol) return std::nullopt;
  std::map<int, Rat> by_w;
  for (const auto& [row, c] : *sol)
    if (c != 0) by_w[static_cast<int>(2 * row)] = c;
  return by_w;
}

std::string witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::full: return "full";
    case WitnessKind::orbit_reduced: return "orbit-reduced";
    case WitnessKind::symmetric: return "symmetric";
  }
  throw std::logic_error("witness_kind_name: bad enum value");
}

WitnessKind witness_kind_from_name(const std::string& name) {
  if (name == "full") return WitnessKind::full;
  if (name == "orbit-reduced") return WitnessKind::orbit_reduced;
  if (name == "symmetric") return WitnessKind::symmetric;
  throw parse_error("unknown witness kind: '" + name + "'");
}

std::optional<WitnessCertificate> find_witness(int n, WitnessMode mode,
                                               std::uint64_t seed,
                                               Coset coset) {
  const MtilingSystem sys = build_system(n, coset);
  WitnessCertificate cert;
  cert.n = n;
  cert.seed = seed;
  cert.coset = coset;

  if (mode == WitnessMode::full) {
    cert.kind = WitnessKind::full;
    if (coset == Coset::odd) return std::nullopt;  // no M(0) column to hit
    MtilingRowSource src(sys);
    SolveOptions opt;
    opt.seed = seed;
    opt.modular_prepass = sys.column_count() > 64;
    auto sol = solve_left(src, {{sys.column_of(0), 1}}, opt);
    if (!sol) return std::nullopt;
    for (const auto& [id, c] : *sol) {
      if (c == 0) continue;
      const auto [gamma, d] = sys.row_of_id(id);
      cert.weights.push_back({gamma, d, c});
    }
  } else {
    cert.kind = WitnessKind::orbit_reduced;
    if (coset == Coset::odd) return std::nullopt;
    const OrbitTable orbits(n);
    const ReducedSystem red = reduce_system(sys, orbits);
    SparseMatrix m;
    m.ncols = static_cast<long long>(red.col_reps.size());
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
      RowRecord rec;
      rec.id = static_cast<long long>(i);
      rec.entries = red.rows[i];
      m.rows.push_back(std::move(rec));
    }
    SparseMatrixSource src(m);
    SolveOptions opt;
    opt.seed = seed;
    opt.modular_prepass = m.rows.size() > 4096;
    // col_reps is ascending and contains 0, so the M(0) orbit sits at 0.
    auto sol = solve_left(src, {{0, 1}}, opt);
    if (!sol) return std::nullopt;
    cert.scaling = red.scaling;
    for (const auto& [id, c] : *sol) {
      if (c == 0) continue;
      const RowKey key = red.row_reps[static_cast<std::size_t>(id)];
      cert.weights.push_back({key.gamma, key.d, c});
    }
  }

  std::sort(cert.weights.begin(), cert.weights.end(),
            [](const WitnessWeight& a, const WitnessWeight& b) {
              return std::tie(a.gamma, a.d) < std::tie(b.gamma, b.d);
            });
  return cert;
}

std::optional<WitnessCertificate> find_symmetric_witness(int n) {
  auto c = symmetric_witness(n);
  if (!c) return std::nullopt;
  WitnessCertificate cert;
  cert.n = n;
  cert.kind = WitnessKind::symmetric;
  cert.weight_by_w = std::move(*c);
  return cert;
}

namespace {

void note_residual(VerificationReport& report, const std::string& name,
                   const Rat& value) {
  ++report.nonzero_columns;
  if (report.residuals.size() < 8)
    report.residuals.emplace_back(name, rat_to_string(value));
}

// Accumulation target: exactly one unit at gamma = 0.
VerificationReport finish_character_report(std::map<Mask, Rat>& acc, int n) {
  VerificationReport report;
  report.level = "full";
  report.columns_checked = 1ll << n;
  acc[0] -= 1;
  for (const auto& [mask, v] : acc) {
    if (v == 0) continue;
    std::ostringstream name;
    name << "gamma 0x" << std::hex << mask;
    note_residual(report, name.str(), v);
  }
  report.pass = report.nonzero_columns == 0;
  report.message = report.pass
                       ? "combination equals the unit functional at M(0)"
                       : "nonzero residual columns remain";
  return report;
}

VerificationReport verify_rows(const WitnessCertificate& cert) {
  VerificationReport bad;
  bad.level = "full";

  const int n = cert.n;
  std::map<Mask, Rat> acc;
  std::optional<SymmetryGroup> group;
  if (cert.kind == WitnessKind::orbit_reduced) group.emplace(n);

  for (const auto& w : cert.weights) {
    if (w.d < 1 || w.d > n / 2) {
      bad.message = "weight with shift distance outside 1..n/2";
      return bad;
    }
    if ((w.gamma >> n) != 0) {
      bad.message = "weight with character outside 2^n";
      return bad;
    }
    if (!in_coset(w.gamma, cert.coset)) {
      bad.message = "weight outside the declared coset";
      return bad;
    }
    if (cert.kind == WitnessKind::full) {
      const EquationRow row = build_row(GroupElement(n, w.gamma), w.d);
      for (const auto& [key, coef] : row.terms) {
        acc[key] += w.c * coef;
        if (acc[key] == 0) acc.erase(key);
      }
    } else {
      const RowKey rep = canonical_row(*group, w.gamma, w.d);
      if (rep.gamma != w.gamma || rep.d != w.d) {
        bad.message = "orbit-reduced weight keyed by a non-canonical row";
        return bad;
      }
      for (const RowKey& member : row_orbit_members(*group, w.gamma, w.d)) {
        const EquationRow row =
            build_row(GroupElement(n, member.gamma), member.d);
        for (const auto& [key, coef] : row.terms) {
          acc[key] += w.c * coef;
          if (acc[key] == 0) acc.erase(key);
        }
      }
    }
  }
  return finish_character_report(acc, n);
}

VerificationReport verify_symmetric_full(const WitnessCertificate& cert) {
  const int n = cert.n;
  std::map<Mask, Rat> acc;
  const Mask space_end = Mask{1} << n;
  for (const auto& [w, c] : cert.weight_by_w) {
    if (c == 0) continue;
    for (Mask gamma = 0; gamma < space_end; ++gamma) {
      if (std::popcount(gamma) != w) continue;
      for (int d = 1; d <= n / 2; ++d) {
        const EquationRow row = build_row(GroupElement(n, gamma), d);
        for (const auto& [key, coef] : row.terms) {
          acc[key] += c * coef;
          if (acc[key] == 0) acc.erase(key);
        }
      }
    }
  }
  return finish_character_report(acc, n);
}

VerificationReport verify_symmetric_basis(const WitnessCertificate& cert) {
  VerificationReport report;
  report.level = "basis";
  const TridiagonalSystem T = build_tridiagonal(cert.n);
  report.columns_checked = T.rows();
  std::vector<Rat> residual(static_cast<std::size_t>(T.rows()), Rat(0));
  for (const auto& [w, c] : cert.weight_by_w) {
    if (w % 2 != 0 || w < 0 || w > cert.n) {
      report.message = "symmetric weight at an odd or out-of-range w";
      return report;
    }
    const std::size_t i = static_cast<std::size_t>(w / 2);
    if (i > 0) residual[i - 1] += c * static_cast<long>(T.sub[i]);
    residual[i] += c * static_cast<long>(T.diag[i]);
    if (i + 1 < residual.size())
      residual[i + 1] += c * static_cast<long>(T.super[i]);
  }
  residual[0] -= 1;
  for (std::size_t i = 0; i < residual.size(); ++i)
    if (residual[i] != 0)
      note_residual(report, "w " + std::to_string(2 * i), residual[i]);
  report.pass = report.nonzero_columns == 0;
  report.message =
      report.pass ? "tridiagonal residual is zero against the M(0) target"
                  : "nonzero tridiagonal residuals remain";
  return report;
}

}  // namespace

VerificationReport verify_certificate(const WitnessCertificate& cert,
                                      VerifyLevel level) {
  if (cert.convention != kConventionTag)
    throw parse_error("certificate convention '" + cert.convention +
                      "' does not match this build ('" +
                      std::string(kConventionTag) + "')");
  if (cert.n < 2 || cert.n % 2 != 0) {
    VerificationReport report;
    report.message = "certificate order must be even and >= 2";
    return report;
  }
  check_system_cap(cert.n);

  if (cert.kind == WitnessKind::symmetric) {
    if (level == VerifyLevel::basis) return verify_symmetric_basis(cert);
    if (level == VerifyLevel::full) return verify_symmetric_full(cert);
    return cert.n <= 16 ? verify_symmetric_full(cert)
                        : verify_symmetric_basis(cert);
  }
  if (level == VerifyLevel::basis) {
    VerificationReport report;
    report.message = "basis-level verification applies to symmetric "
                     "certificates only";
    return report;
  }
  return verify_rows(cert);
}

std::string serialize_certificate(const WitnessCertificate& cert) {
  nlohmann::ordered_json j;
  j["format"] = "hadwit-witness";
  j["version"] = cert.version;
  j["n"] = cert.n;
  j["kind"] = witness_kind_name(cert.kind);
  j["convention"] = cert.convention;
  j["seed"] = cert.seed;
  j["target"] = "M(0)";
  if (cert.kind == WitnessKind::symmetric) {
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (const auto& [w, c] : cert.weight_by_w)
      weights.push_back({{"w", w}, {"c", rat_to_string(c)}});
    j["weights"] = std::move(weights);
  } else {
    j["coset"] = coset_name(cert.coset);
    if (cert.kind == WitnessKind::orbit_reduced) j["scaling"] = cert.scaling;
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (const auto& w : cert.weights) {
      std::ostringstream hex;
      hex << "0x" << std::hex << w.gamma;
      weights.push_back(
          {{"gamma", hex.str()}, {"d", w.d}, {"c", rat_to_string(w.c)}});
    }
    j["weights"] = std::move(weights);
  }
  return j.dump(2) + "\n";
}

namespace {

Mask parse_mask(const std::string& text) {
  if (text.rfind("0x", 0) != 0 || text.size() < 3 || text.size() > 10)
    throw parse_error("malformed character mask: '" + text + "'");
  Mask m = 0;
  for (std::size_t i = 2; i < text.size(); ++i) {
    const char ch = text[i];
    int digit = 0;
    if (ch >= '0' && ch <= '9') digit = ch - '0';
    else if (ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
    else throw parse_error("malformed character mask: '" + text + "'");
    m = (m << 4) | static_cast<Mask>(digit);
  }
  return m;
}

}  // namespace

WitnessCertificate parse_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("certificate is not valid JSON: ") +
                      e.what());
  }
  try {
    if (j.value("format", "") != "hadwit-witness")
      throw parse_error("not a witness certificate (format field)");
    WitnessCertificate cert;
    cert.version = j.at("version").get<int>();
    if (cert.version != 1)
      throw parse_error("unsupported certificate version " +
                        std::to_string(cert.version));
    cert.n = j.at("n").get<int>();
    cert.kind = witness_kind_from_name(j.at("kind").get<std::string>());
    cert.convention = j.at("convention").get<std::string>();
    if (cert.convention != kConventionTag)
      throw parse_error("certificate convention '" + cert.convention +
                        "' does not match this build ('" +
                        std::string(kConventionTag) + "')");
    cert.seed = j.value("seed", std::uint64_t{0});
    if (cert.kind != WitnessKind::symmetric)
      cert.coset = coset_from_name(j.value("coset", "even"));
    if (cert.kind == WitnessKind::orbit_reduced)
      cert.scaling = j.value("scaling", "");
    for (const auto& entry : j.at("weights")) {
      const Rat c = rat_from_string(entry.at("c").get<std::string>());
      if (cert.kind == WitnessKind::symmetric) {
        cert.weight_by_w[entry.at("w").get<int>()] = c;
      } else {
        cert.weights.push_back(
            {parse_mask(entry.at("gamma").get<std::string>()),
             entry.at("d").get<int>(), c});
      }
    }
    std::sort(cert.weights.begin(), cert.weights.end(),
              [](const WitnessWeight& a, const WitnessWeight& b) {
                return std::tie(a.gamma, a.d) < std::tie(b.gamma, b.d);
              });
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace hadwit
