// tile: command-line front end for the tiling library.
//
// Exit codes: 0 on success, 1 on usage or internal errors, 2 when --strict is
// given and the check comes out negative.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tiling/classify.hpp"
#include "tiling/cm.hpp"
#include "tiling/cyclo.hpp"
#include "tiling/fillout.hpp"
#include "tiling/lowerbound.hpp"
#include "tiling/report.hpp"
#include "tiling/zset.hpp"

namespace {

using namespace tiling;

constexpr std::size_t kMinMemoCap = std::size_t{1} << 20;

struct RunConfig {
  unsigned threads = 1;
  std::size_t memo_cap_bytes = std::size_t{1} << 31;
  std::string skip_list_path;
  bool force_exceptional = false;
  bool force = false;
  std::string output_path;
  std::string format = "text";
  bool strict_exit = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_threads() {
  const char* env = std::getenv("TILE_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const long v = std::stol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw UsageError("TILE_THREADS must be a positive integer");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

void check_modulus(std::int64_t n) {
  if (n < 1 || n > kMaxCyclotomicIndex) throw UsageError("N must lie in [1, " + std::to_string(kMaxCyclotomicIndex) + "]");
}

int run(int argc, char** argv) {
  CLI::App app{"Exact tools for translational tilings of cyclic groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = default_threads();

  std::int64_t n = 0, p = 0, q = 0, samples = 1;
  std::uint64_t seed = 0;
  std::string set_a, set_b;
  std::optional<std::int64_t> mod;
  bool nonperiodic = false;

  auto* cyclo_cmd = app.add_subcommand("cyclo", "print the n-th cyclotomic polynomial");
  cyclo_cmd->add_option("n", n, "index")->required();

  auto* sig_cmd = app.add_subcommand("sig", "print the divisor signature of a set in Z_N");
  sig_cmd->add_option("N", n)->required();
  sig_cmd->add_option("set", set_a, "comma-separated ascending residues")->required();

  auto* cm_cmd = app.add_subcommand("cm", "check the Coven-Meyerowitz conditions");
  cm_cmd->add_option("set", set_a)->required();
  cm_cmd->add_option("--mod", mod, "work in Z_N instead of Z");
  cm_cmd->add_flag("--strict", cfg.strict_exit, "exit 2 on DoesNotTile");

  auto* verify_cmd = app.add_subcommand("verify", "check whether A + B = Z_N");
  verify_cmd->add_option("N", n)->required();
  verify_cmd->add_option("A", set_a)->required();
  verify_cmd->add_option("B", set_b)->required();
  verify_cmd->add_flag("--strict", cfg.strict_exit, "exit 2 when not a tiling");

  auto* fill_cmd = app.add_subcommand("fillout", "list every tiling complement containing 0");
  fill_cmd->add_option("N", n)->required();
  fill_cmd->add_option("set", set_a)->required();
  fill_cmd->add_flag("--nonperiodic", nonperiodic, "only non-periodic complements, one per translation orbit");

  auto* classify_cmd = app.add_subcommand("classify", "classify the non-periodic tilings of Z_N");
  classify_cmd->add_option("N", n)->required();
  classify_cmd->add_option("--skip-list", cfg.skip_list_path, "file of 'H | justification' lines");
  classify_cmd->add_flag("--force-exceptional", cfg.force_exceptional, "search skipped partitions as well");
  classify_cmd->add_flag("--force", cfg.force, "run N outside the supported range");
  classify_cmd->add_option("--out", cfg.output_path, "write the JSON report here");
  classify_cmd->add_option("--format", cfg.format, "stdout format")->check(CLI::IsMember({"text", "json"}));

  for (auto* c : {fill_cmd, classify_cmd}) {
    c->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
    c->add_option("--memo-cap", cfg.memo_cap_bytes, "bytes")->check(CLI::Range(kMinMemoCap, std::size_t{1} << 40));
  }

  auto* lb_cmd = app.add_subcommand("lowerbound", "sample non-periodic tilings of Z_30pq by a 3x5 rectangle");
  lb_cmd->add_option("p", p)->required();
  lb_cmd->add_option("q", q)->required();
  lb_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  lb_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const ExploreOptions opts{.memo_cap_bytes = cfg.memo_cap_bytes, .use_memo = true, .threads = cfg.threads};

  if (*cyclo_cmd) {
    if (n < 1 || n > kMaxCyclotomicIndex) throw UsageError("n must lie in [1, " + std::to_string(kMaxCyclotomicIndex) + "]");
    std::cout << cyclotomic(n).to_string() << "\n";
  } else if (*sig_cmd) {
    check_modulus(n);
    std::cout << signature(parse_residue_set(n, set_a)).to_string() << "\n";
  } else if (*cm_cmd) {
    CmReport r;
    if (mod) {
      check_modulus(*mod);
      r = decide_tiles_ZN(parse_residue_set(*mod, set_a));
    } else {
      r = decide_tiles_Z(parse_integer_list(set_a));
    }
    std::cout << to_json(r).dump(2) << "\n";
    if (cfg.strict_exit && r.verdict == Verdict::DoesNotTile) return 2;
  } else if (*verify_cmd) {
    check_modulus(n);
    const bool ok = verify_tiling(parse_residue_set(n, set_a), parse_residue_set(n, set_b));
    std::cout << (ok ? "TILING" : "NOT A TILING") << "\n";
    if (cfg.strict_exit && !ok) return 2;
  } else if (*fill_cmd) {
    check_modulus(n);
    const auto a = parse_residue_set(n, set_a);
    if (!a.contains(0)) throw UsageError("the set must contain 0");
    if (n % a.size() != 0) throw UsageError("|A| = " + std::to_string(a.size()) + " does not divide " + std::to_string(n));
    auto out = explore(a, opts);
    if (nonperiodic) out = nonperiodic_orbits(out);
    for (const auto& b : out) std::cout << b.to_string() << "\n";
  } else if (*classify_cmd) {
    ClassifyConfig cc;
    cc.threads = cfg.threads;
    cc.memo_cap_bytes = cfg.memo_cap_bytes;
    cc.force = cfg.force;
    cc.force_exceptional = cfg.force_exceptional;
    if (!cfg.skip_list_path.empty()) cc.skip_list = parse_skip_list(read_file(cfg.skip_list_path));
    if (auto why = unsupported_reason(n); why && !cfg.force) throw UsageError(*why);
    const auto report = classify(n, cc);
    if (!cfg.output_path.empty()) write_file(cfg.output_path, render_json(report));
    std::cout << (cfg.format == "json" ? render_json(report) : render_text(report));
  } else if (*lb_cmd) {
    const auto a = rectangle_tile(p, q);
    for (const auto& b : sample_complements(p, q, samples, seed)) std::cout << a.to_string() << "\n" << b.to_string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "tile: " << e.what() << "\n";
  } catch (const tiling::ParseError& e) {
    std::cerr << "tile: " << e.what() << "\n";
  } catch (const tiling::DomainError& e) {
    std::cerr << "tile: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "tile: internal error: " << e.what() << "\n";
  }
  return 1;
}
