// Command-line front end: exact evaluation, certified/uncertified estimation,
// decomposition, and the named check suites.
//
// Exit codes: 0 success, 1 check-suite failure, 2 parse/usage error,
// 3 size limit exceeded, 4 decomposition or estimation failure.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "matising/decompose.hpp"
#include "matising/errors.hpp"
#include "matising/estimator.hpp"
#include "matising/io.hpp"
#include "matising/matroid.hpp"
#include "matising/rational.hpp"
#include "matising/suites.hpp"
#include "matising/tutte.hpp"

namespace {

using namespace matising;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

/// MATISING_EXHAUSTIVE_LIMIT overrides both the subset-sweep cap and the
/// decomposer's separation-search cap. Unset means the built-in defaults.
std::optional<std::size_t> exhaustive_limit() {
  const char* raw = std::getenv("MATISING_EXHAUSTIVE_LIMIT");
  if (raw == nullptr) return std::nullopt;
  const std::string text(raw);
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    throw ParseError("MATISING_EXHAUSTIVE_LIMIT is not a number: " + text);
  }
  if (pos != text.size() || value == 0) {
    throw ParseError("MATISING_EXHAUSTIVE_LIMIT must be a positive integer, got: " + text);
  }
  return value;
}

SweepOptions sweep_options(unsigned threads) {
  SweepOptions opts;
  opts.threads = threads;
  if (const auto limit = exhaustive_limit()) opts.max_elements = *limit;
  return opts;
}

DecompLimits decomp_limits() {
  DecompLimits limits;
  if (const auto limit = exhaustive_limit()) limits.separation_search_max = *limit;
  return limits;
}

int cmd_exact(const std::string& path, unsigned threads) {
  const WeightedMatroid w = parse_instance(read_file(path));
  const SweepOptions opts = sweep_options(threads);
  const Rat value = tutte_exact(w, opts);
  const std::size_t m = w.matroid.size();
  std::cout << "value " << to_string(value) << "\n";
  std::cout << "decimal " << fmt(to_double(value)) << "\n";
  std::cout << "elements " << m << "\n";
  std::cout << "rank " << w.matroid.rank() << "\n";
  std::cout << "subsets " << (std::uint64_t{1} << m) << "\n";
  return 0;
}

int cmd_estimate(const std::string& path, double eps, const std::string& cert_path,
                 const std::string& oracle, std::uint64_t seed, unsigned threads,
                 bool audit) {
  const WeightedMatroid w = parse_instance(read_file(path));

  std::optional<CertShape> cert;
  if (!cert_path.empty()) cert = parse_certificate(read_file(cert_path));

  EstimateRequest req;
  req.w = to_float(w);
  req.eps = eps;
  req.certificate = cert ? &*cert : nullptr;
  req.oracle = oracle == "noisy" ? OracleMode::Noisy : OracleMode::Exact;
  req.seed = seed;
  req.limits = decomp_limits();
  req.sweep = sweep_options(threads);

  const EstimateResult res = estimate(req);
  const EstimateStats& st = res.stats;
  std::cout << "estimate " << fmt(res.value) << "\n";
  std::cout << "eps " << fmt(res.eps) << "\n";
  std::cout << "oracle " << (req.oracle == OracleMode::Noisy ? "noisy" : "exact") << "\n";
  std::cout << "seed " << seed << "\n";
  std::cout << "elements " << w.matroid.size() << "\n";
  std::cout << "certificate " << (cert ? "supplied" : "searched") << "\n";
  std::cout << "leaf_calls " << st.leaf_calls << "\n";
  std::cout << "graphic_leaves " << st.graphic_leaves << "\n";
  std::cout << "cographic_leaves " << st.cographic_leaves << "\n";
  std::cout << "r10_leaves " << st.r10_leaves << "\n";
  std::cout << "small_leaves " << st.small_leaves << "\n";
  std::cout << "sum_nodes_1 " << st.sum_nodes_1 << "\n";
  std::cout << "sum_nodes_2 " << st.sum_nodes_2 << "\n";
  std::cout << "sum_nodes_3 " << st.sum_nodes_3 << "\n";
  std::cout << "max_depth " << st.max_depth << "\n";
  std::cout << "max_leaf_size " << st.max_leaf_size << "\n";
  std::cout << "minor_estimates " << st.minor_estimates << "\n";
  if (audit) {
    for (const AuditRow& row : st.audit) {
      std::cout << "audit k " << row.k << " m " << row.m << " m2 " << row.m2 << " eps "
                << fmt(row.eps) << " eps_minor " << fmt(row.eps_minor) << " eps_replace "
                << fmt(row.eps_replace) << " eps_recurse " << fmt(row.eps_recurse) << "\n";
    }
  }
  return 0;
}

int cmd_decompose(const std::string& path) {
  const WeightedMatroid w = parse_instance(read_file(path));
  const DecompTree tree = decompose(w.matroid, decomp_limits());
  std::cout << print_certificate(shape_of(tree)) << "\n";
  return 0;
}

int cmd_check(const std::string& name, std::uint64_t seed, std::size_t count) {
  if (name.empty()) {
    std::cout << "available suites (name, default volume, purpose):\n";
    for (const SuiteInfo& s : all_suites()) {
      std::cout << "  " << std::left << std::setw(22) << s.name << std::right
                << std::setw(7) << s.default_count << "  " << s.summary << "\n";
    }
    return 0;
  }
  const SuiteInfo* suite = find_suite(name);
  if (suite == nullptr) {
    std::cerr << "error: unknown suite '" << name
              << "' (run `matising check` to list suites)\n";
    return 2;
  }
  const SuiteResult res = suite->run(seed, count);
  std::cout << "suite " << suite->name << "\n";
  std::cout << "seed " << seed << "\n";
  std::cout << "checked " << res.checked << "\n";
  std::cout << "result " << (res.ok ? "pass" : "fail") << "\n";
  if (!res.detail.empty()) std::cout << "detail " << res.detail << "\n";
  return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Ising partition values of binary matroids: exact subset sweeps and a\n"
      "decomposition-based estimator with rigorous accuracy bookkeeping."};
  app.require_subcommand(1);

  std::string instance_path;
  std::string cert_path;
  std::string oracle = "exact";
  std::string suite_name;
  double eps = 0.5;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  unsigned threads = 1;
  bool audit = false;

  const auto eps_in_unit = [](const std::string& s) -> std::string {
    double v = 0.0;
    try {
      v = std::stod(s);
    } catch (const std::exception&) {
      return "not a number: " + s;
    }
    if (!(v > 0.0 && v <= 1.0)) return "eps must lie in (0, 1], got " + s;
    return {};
  };

  CLI::App* exact = app.add_subcommand(
      "exact", "evaluate the instance exactly by a subset sweep (bit-exact rational)");
  exact->add_option("instance", instance_path, "instance file")->required();
  exact->add_option("--threads", threads, "worker threads for the sweep");

  CLI::App* est = app.add_subcommand(
      "estimate", "estimate the instance within e^{±eps} via decomposition");
  est->add_option("instance", instance_path, "instance file")->required();
  est->add_option("--eps", eps, "accuracy budget in (0, 1]")
      ->required()
      ->check(eps_in_unit);
  est->add_option("--cert", cert_path, "decomposition certificate file (else search)");
  est->add_option("--oracle", oracle, "leaf oracle: exact (default) or noisy")
      ->check(CLI::IsMember({"exact", "noisy"}));
  est->add_option("--seed", seed, "noise stream seed (noisy oracle)");
  est->add_option("--threads", threads, "worker threads for leaf sweeps");
  est->add_flag("--audit", audit, "print the per-node accuracy budget table");

  CLI::App* dec = app.add_subcommand(
      "decompose", "print a validated decomposition tree in certificate syntax");
  dec->add_option("instance", instance_path, "instance file")->required();

  CLI::App* chk = app.add_subcommand(
      "check", "run a named property suite (no name: list the suites)");
  chk->add_option("suite", suite_name, "suite name");
  chk->add_option("--seed", seed, "RNG seed");
  chk->add_option("--count", count, "case count (0 = suite default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (exact->parsed()) return cmd_exact(instance_path, threads);
    if (est->parsed())
      return cmd_estimate(instance_path, eps, cert_path, oracle, seed, threads, audit);
    if (dec->parsed()) return cmd_decompose(instance_path);
    if (chk->parsed()) return cmd_check(suite_name, seed, count);
  } catch (const ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  } catch (const SizeLimitError& e) {
    std::cerr << "error: size limit: " << e.what() << "\n";
    return 3;
  } catch (const DecompositionError& e) {
    std::cerr << "error: decomposition: " << e.what() << "\n";
    return 4;
  } catch (const ConstraintError& e) {
    std::cerr << "error: constraint: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
