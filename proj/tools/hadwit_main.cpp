// Command-line front end. Every subcommand emits one artifact (stdout or
// --out) whose bytes depend only on the run configuration, and logs the
// convention tag plus an FNV-1a fingerprint of the artifact to stderr.
//
// Exit codes: 0 success / verified, 1 verification failed, 2 no witness
// exists (a mathematical answer, not an error), 64 usage, 65 malformed
// data, 70 cap exceeded or internal error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hadwit/caps.hpp"
#include "hadwit/common.hpp"
#include "hadwit/linalg.hpp"
#include "hadwit/oracle.hpp"
#include "hadwit/symmetry.hpp"
#include "hadwit/system.hpp"
#include "hadwit/walsh.hpp"
#include "hadwit/witness.hpp"

namespace {

using hadwit::Mask;
using nlohmann::ordered_json;

std::string hex_mask(Mask m) {
  std::ostringstream out;
  out << "0x" << std::hex << m;
  return out.str();
}

void emit_artifact(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + out_path);
  }
  std::cerr << "hadwit: convention " << hadwit::kConventionTag << "\n";
  std::cerr << "hadwit: fingerprint " << std::hex << std::setw(16)
            << std::setfill('0') << hadwit::fnv1a64(text) << std::dec << "\n";
}

int run_oracle(int n, int threads, const std::string& out) {
  const hadwit::SearchReport report = hadwit::brute_force_generators(n, threads);
  emit_artifact(hadwit::serialize_report(report), out);
  std::cerr << "hadwit: elapsed " << report.elapsed_s << " s\n";
  return 0;
}

int run_system(int n, const std::string& coset, const std::string& out) {
  const hadwit::MtilingSystem sys =
      hadwit::build_system(n, hadwit::coset_from_name(coset));
  std::ostringstream text;
  hadwit::write_system(sys, text);
  emit_artifact(text.str(), out);
  return 0;
}

int run_rank(int n, const std::string& coset, const std::string& in_path,
             const std::string& field, std::uint64_t seed, std::uint32_t prime,
             const std::string& out) {
  hadwit::RankOptions opt;
  opt.field = field;
  opt.seed = seed;
  opt.prime = prime;

  ordered_json j;
  j["format"] = "hadwit-rank";
  j["version"] = 1;
  j["convention"] = std::string(hadwit::kConventionTag);

  hadwit::RankResult result;
  if (!in_path.empty()) {
    std::ifstream f(in_path);
    if (!f) throw hadwit::parse_error("cannot open input file: " + in_path);
    const hadwit::CoordinateMatrix m = hadwit::read_coordinate_file(f);
    hadwit::CoordinateSource src(m);
    result = hadwit::rank(src, opt);
    j["input"] = in_path;
    if (m.n > 0) j["n"] = m.n;
  } else {
    if (n <= 0)
      throw std::invalid_argument("rank: provide --n or --in FILE");
    const hadwit::MtilingSystem sys =
        hadwit::build_system(n, hadwit::coset_from_name(coset));
    hadwit::MtilingRowSource src(sys);
    result = hadwit::rank(src, opt);
    j["n"] = n;
    j["coset"] = coset;
  }

  j["nrows"] = result.nrows;
  j["ncols"] = result.ncols;
  j["rank"] = result.rank;
  j["field"] = result.field;
  j["certified"] = result.certified;
  j["pivot_columns"] = result.pivot_columns;
  j["stats"] = {{"rows_consumed", result.stats.rows_consumed},
                {"echelon_nonzeros", result.stats.echelon_nonzeros},
                {"max_numerator_bits", result.stats.max_numerator_bits}};
  emit_artifact(j.dump(2) + "\n", out);
  return 0;
}

int run_witness(int n, const std::string& mode, const std::string& coset,
                std::uint64_t seed, const std::string& out) {
  std::optional<hadwit::WitnessCertificate> cert;
  if (mode == "symmetric") {
    cert = hadwit::find_symmetric_witness(n);
  } else {
    const hadwit::WitnessMode m = mode == "full"
                                      ? hadwit::WitnessMode::full
                                      : hadwit::WitnessMode::orbit_reduced;
    cert = hadwit::find_witness(n, m, seed, hadwit::coset_from_name(coset));
  }
  if (!cert) {
    std::cerr << "hadwit: no witness at n = " << n;
    if (n == 4)
      std::cerr << " (the order-4 circulant Hadamard matrix exists;"
                   " M(0) lies outside the row space)";
    else
      std::cerr << " (target outside the row space of the selected system)";
    std::cerr << "\n";
    return 2;
  }
  emit_artifact(hadwit::serialize_certificate(*cert), out);
  return 0;
}

int run_verify(const std::string& cert_path, const std::string& level,
               const std::string& out) {
  std::ifstream f(cert_path);
  if (!f)
    throw hadwit::parse_error("cannot open certificate: " + cert_path);
  std::ostringstream buf;
  buf << f.rdbuf();
  const hadwit::WitnessCertificate cert =
      hadwit::parse_certificate(buf.str());

  hadwit::VerifyLevel lv = hadwit::VerifyLevel::automatic;
  if (level == "full") lv = hadwit::VerifyLevel::full;
  if (level == "basis") lv = hadwit::VerifyLevel::basis;
  const hadwit::VerificationReport report = hadwit::verify_certificate(cert, lv);

  ordered_json j;
  j["format"] = "hadwit-verify";
  j["version"] = 1;
  j["convention"] = std::string(hadwit::kConventionTag);
  j["n"] = cert.n;
  j["kind"] = hadwit::witness_kind_name(cert.kind);
  j["level"] = report.level;
  j["pass"] = report.pass;
  j["columns_checked"] = report.columns_checked;
  j["nonzero_columns"] = report.nonzero_columns;
  ordered_json residuals = ordered_json::array();
  for (const auto& [at, value] : report.residuals)
    residuals.push_back({{"at", at}, {"value", value}});
  j["residuals"] = std::move(residuals);
  j["message"] = report.message;
  emit_artifact(j.dump(2) + "\n", out);
  return report.pass ? 0 : 1;
}

int run_tridiag(int n, const std::string& out) {
  const hadwit::TridiagonalSystem T = hadwit::build_tridiagonal(n);
  ordered_json j;
  j["format"] = "hadwit-tridiag";
  j["version"] = 1;
  j["convention"] = std::string(hadwit::kConventionTag);
  j["n"] = n;
  ordered_json rows = ordered_json::array();
  for (long long i = 0; i < T.rows(); ++i) {
    const std::size_t ix = static_cast<std::size_t>(i);
    rows.push_back({{"w", 2 * i},
                    {"sub", T.sub[ix]},
                    {"diag", T.diag[ix]},
                    {"super", T.super[ix]}});
  }
  j["rows"] = std::move(rows);
  j["rank"] = hadwit::tridiagonal_rank(T);
  emit_artifact(j.dump(2) + "\n", out);
  return 0;
}

int run_scoeffs(int n, const std::string& out) {
  const hadwit::WalshPolynomial S = hadwit::s_coefficients(n);
  ordered_json j;
  j["format"] = "hadwit-scoeffs";
  j["version"] = 1;
  j["convention"] = std::string(hadwit::kConventionTag);
  j["n"] = n;
  long long total = 0;
  ordered_json terms = ordered_json::array();
  for (const auto& [gamma, c] : S.terms()) {
    const long long v = c.get_num().get_si();
    total += v;
    terms.push_back({{"gamma", hex_mask(gamma)}, {"c", v}});
  }
  j["s0"] = S.coefficient(0).get_num().get_si();
  j["total"] = total;
  j["terms"] = std::move(terms);
  emit_artifact(j.dump(2) + "\n", out);
  return 0;
}

// Cross-module identity: the Walsh transform of the coefficient polynomial S
// must equal the squared-autocorrelation functional pointwise, stay
// nonnegative, and vanish exactly on the brute-force generator set.
int run_wht_check(int n, int threads, const std::string& out) {
  const hadwit::WalshPolynomial S = hadwit::s_coefficients(n);
  std::vector<long long> dense(std::size_t{1} << n, 0);
  for (const auto& [gamma, c] : S.terms()) dense[gamma] = c.get_num().get_si();
  const std::vector<long long> transformed = hadwit::walsh_transform(dense);

  bool matches = true;
  bool nonnegative = true;
  std::vector<Mask> zeros;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    const long long direct = hadwit::s_value(x, n);
    if (transformed[x] != direct) matches = false;
    if (transformed[x] < 0) nonnegative = false;
    if (transformed[x] == 0) zeros.push_back(x);
  }
  const hadwit::SearchReport oracle = hadwit::brute_force_generators(n, threads);
  const bool zeros_match = zeros == oracle.generators;
  const bool pass = matches && nonnegative && zeros_match;

  ordered_json j;
  j["format"] = "hadwit-wht-check";
  j["version"] = 1;
  j["convention"] = std::string(hadwit::kConventionTag);
  j["n"] = n;
  j["points"] = 1ll << n;
  j["matches_direct_evaluation"] = matches;
  j["nonnegative"] = nonnegative;
  j["zeros_match_search"] = zeros_match;
  ordered_json zs = ordered_json::array();
  for (Mask z : zeros) zs.push_back(hex_mask(z));
  j["zeros"] = std::move(zs);
  j["pass"] = pass;
  emit_artifact(j.dump(2) + "\n", out);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact linear-algebra certificates for the circulant Hadamard"
               " problem",
               "hadwit"};
  app.require_subcommand(1);

  int n = 0;
  int threads = 0;
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
  std::string coset = "even";
  std::string mode = "full";
  std::string field = "auto";
  std::string level = "auto";
  std::string in_path;
  std::string out_path;
  std::string cert_path;

  const auto coset_values = CLI::IsMember({"even", "odd", "both"});

  CLI::App* sc_oracle =
      app.add_subcommand("oracle", "exhaustively search one order for"
                                   " circulant Hadamard generators");
  sc_oracle->add_option("--n", n, "order to search")->required();
  sc_oracle->add_option("--threads", threads,
                        "worker threads (0 = hardware concurrency)");
  sc_oracle->add_option("--out", out_path, "artifact path (default stdout)");

  CLI::App* sc_system =
      app.add_subcommand("system", "export the orthogonality system in"
                                   " coordinate format");
  sc_system->add_option("--n", n, "order")->required();
  sc_system->add_option("--coset", coset, "character parity class")
      ->check(coset_values);
  sc_system->add_option("--out", out_path, "artifact path (default stdout)");

  CLI::App* sc_rank =
      app.add_subcommand("rank", "exact rank of the system or of a"
                                 " coordinate-format file");
  auto* rank_n = sc_rank->add_option("--n", n, "order (builds the system)");
  sc_rank->add_option("--coset", coset, "character parity class")
      ->check(coset_values);
  sc_rank->add_option("--in", in_path, "coordinate-format input file")
      ->excludes(rank_n);
  sc_rank->add_option("--field", field, "elimination field")
      ->check(CLI::IsMember({"auto", "rational", "prime"}));
  sc_rank->add_option("--seed", seed, "prime derivation seed");
  sc_rank->add_option("--prime", prime, "explicit 31-bit prime (0 = derive)");
  sc_rank->add_option("--out", out_path, "artifact path (default stdout)");

  CLI::App* sc_witness =
      app.add_subcommand("witness", "solve for a non-existence certificate");
  sc_witness->add_option("--n", n, "order")->required();
  sc_witness->add_option("--mode", mode, "search space")
      ->check(CLI::IsMember({"full", "orbit-reduced", "symmetric"}));
  sc_witness->add_option("--coset", coset, "character parity class")
      ->check(coset_values);
  sc_witness->add_option("--seed", seed, "pivot prepass seed");
  sc_witness->add_option("--out", out_path, "certificate path (default stdout)");

  CLI::App* sc_verify =
      app.add_subcommand("verify", "re-derive a certificate from scratch");
  sc_verify->add_option("certificate", cert_path, "certificate file")
      ->required();
  sc_verify->add_option("--level", level, "verification depth")
      ->check(CLI::IsMember({"auto", "full", "basis"}));
  sc_verify->add_option("--out", out_path, "report path (default stdout)");

  CLI::App* sc_tridiag =
      app.add_subcommand("tridiag", "weight-aggregated tridiagonal system"
                                    " entries and exact rank");
  sc_tridiag->add_option("--n", n, "order")->required();
  sc_tridiag->add_option("--out", out_path, "artifact path (default stdout)");

  CLI::App* sc_scoeffs =
      app.add_subcommand("scoeffs", "squared-autocorrelation coefficient"
                                    " polynomial dump");
  sc_scoeffs->add_option("--n", n, "order")->required();
  sc_scoeffs->add_option("--out", out_path, "artifact path (default stdout)");

  CLI::App* sc_wht =
      app.add_subcommand("wht-check", "transform-vs-direct identity check on"
                                      " the coefficient polynomial");
  sc_wht->add_option("--n", n, "order")->required();
  sc_wht->add_option("--threads", threads,
                     "worker threads for the search (0 = hardware)");
  sc_wht->add_option("--out", out_path, "artifact path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (app.got_subcommand(sc_oracle)) return run_oracle(n, threads, out_path);
    if (app.got_subcommand(sc_system)) return run_system(n, coset, out_path);
    if (app.got_subcommand(sc_rank))
      return run_rank(n, coset, in_path, field, seed, prime, out_path);
    if (app.got_subcommand(sc_witness))
      return run_witness(n, mode, coset, seed, out_path);
    if (app.got_subcommand(sc_verify))
      return run_verify(cert_path, level, out_path);
    if (app.got_subcommand(sc_tridiag)) return run_tridiag(n, out_path);
    if (app.got_subcommand(sc_scoeffs)) return run_scoeffs(n, out_path);
    if (app.got_subcommand(sc_wht)) return run_wht_check(n, threads, out_path);
    std::cerr << "hadwit: error: no subcommand\n";
    return 64;
  } catch (const hadwit::cap_exceeded& e) {
    std::cerr << "hadwit: error: " << e.what() << "\n";
    return 70;
  } catch (const hadwit::parse_error& e) {
    std::cerr << "hadwit: error: " << e.what() << "\n";
    return 65;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hadwit: error: " << e.what() << "\n";
    return 64;
  } catch (const std::out_of_range& e) {
    std::cerr << "hadwit: error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "hadwit: error: " << e.what() << "\n";
    return 70;
  }
}
