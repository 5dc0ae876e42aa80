#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dd/digest.hpp"
#include "dd/metrics.hpp"
#include "dd/script_oracle.hpp"
#include "dd/session_log.hpp"
#include "dd/simulation.hpp"
#include "dd/tree.hpp"
#include "dd/tree_reduce.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInitialTestFailed = 2;
constexpr int kExitOracleError = 3;
constexpr int kExitUsage = 4;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ReduceCli {
  std::string input;
  std::string oracle;
  std::string algorithm = "wddmin";
  std::string granularity = "tree-delimiters";
  bool fixpoint = true;
  double p0 = 0.2;
  std::optional<std::uint64_t> seed;
  double timeout = 300.0;
  bool timeout_abort = false;
  std::string cache_dir;
  std::string log_path;
  std::string out_path;
  std::string report_path;
  bool keep_temps = false;
  bool verbose = false;
};

int cmd_reduce(const ReduceCli& cli) {
  std::string source;
  try {
    source = read_file(cli.input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  dd::TreeDoc tree = dd::TreeDoc::from_source("", dd::TreeMode::flat_token);
  try {
    if (cli.granularity == "token")
      tree = dd::TreeDoc::from_source(source, dd::TreeMode::flat_token);
    else if (cli.granularity == "line")
      tree = dd::TreeDoc::from_source(source, dd::TreeMode::flat_line);
    else if (cli.granularity == "tree-delimiters")
      tree = dd::TreeDoc::from_source(source, dd::TreeMode::delimiters);
    else
      tree = dd::TreeDoc::from_json(source);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  dd::OracleConfig cfg;
  cfg.script = cli.oracle;
  cfg.timeout_seconds = cli.timeout;
  cfg.timeout_is_error = cli.timeout_abort;
  cfg.keep_temps = cli.keep_temps;
  if (!cli.cache_dir.empty()) cfg.cache_dir = cli.cache_dir;

  std::optional<dd::ScriptOracle> script;
  try {
    script.emplace(cfg);
  } catch (const dd::OracleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream log_stream;
  std::optional<dd::SessionLog> log;
  if (!cli.log_path.empty()) {
    log_stream.open(cli.log_path, std::ios::binary);
    if (!log_stream) {
      std::cerr << "error: cannot write " << cli.log_path << '\n';
      return kExitUsage;
    }
    log.emplace(log_stream);
  }

  // For tree-json input the file holds the parse tree, not the test text;
  // the oracle always sees rendered documents.
  const std::string initial_text =
      cli.granularity == "tree-json" ? tree.render() : source;
  const std::size_t initial_tokens = tree.token_count();

  auto t0 = std::chrono::steady_clock::now();
  try {
    dd::verify_initial(*script, initial_text);
  } catch (const dd::InitialTestFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInitialTestFailed;
  } catch (const dd::OracleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOracleError;
  }

  dd::OracleCache cache;
  cache.store(dd::content_digest(initial_text), true);
  dd::SessionCounters counters;

  dd::ReduceOptions opts;
  opts.algorithm = *dd::algorithm_from_name(cli.algorithm);
  opts.p0 = cli.p0;
  opts.tie_seed = cli.seed;

  dd::ReduceHooks hooks;
  hooks.cache = &cache;
  hooks.counters = &counters;
  if (log) {
    hooks.on_test = [&log](const std::string& digest, bool verdict, bool hit) {
      log->log_test(digest, verdict, hit);
    };
    hooks.on_invocation = [&log, &cli](std::size_t depth,
                                       const dd::WeightedList& before,
                                       const dd::WeightedList& after) {
      log->log_invocation(cli.algorithm, depth, before, after);
    };
  }
  dd::TextOracle psi = [&script](std::string_view s) {
    return script->test(s);
  };

  std::size_t passes = 1;
  try {
    if (cli.fixpoint)
      passes = dd::fixpoint_reduce(tree, psi, opts, hooks);
    else
      dd::hdd_reduce(tree, psi, opts, hooks);
  } catch (const dd::OracleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOracleError;
  }

  // The result must pass the oracle on its own before it is handed over.
  std::string final_text = tree.render();
  bool final_ok = false;
  try {
    if (auto hit = cache.lookup(dd::content_digest(final_text)))
      final_ok = *hit;
    else
      final_ok = script->test(final_text);
  } catch (const dd::OracleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOracleError;
  }
  if (!final_ok) {
    std::cerr << "error: reduced output no longer satisfies the oracle\n";
    return kExitOracleError;
  }

  fs::path out_path =
      cli.out_path.empty() ? fs::path(cli.input + ".min") : fs::path(cli.out_path);
  {
    std::ofstream out(out_path, std::ios::binary);
    out.write(final_text.data(), static_cast<std::streamsize>(final_text.size()));
    if (!out) {
      std::cerr << "error: cannot write " << out_path.string() << '\n';
      return kExitOracleError;
    }
  }
  auto t1 = std::chrono::steady_clock::now();

  dd::ReductionReport report;
  report.input = cli.input;
  report.algorithm = cli.algorithm;
  report.granularity = cli.granularity;
  report.initial_tokens = initial_tokens;
  report.final_tokens = tree.token_count();
  report.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.oracle_invocations = script->spawns();
  report.cache_hits = cache.hits();

  std::cout << dd::report_to_text(report);
  std::cout << "output:             " << out_path.string() << '\n';
  if (cli.verbose) std::cout << "passes:             " << passes << '\n';
  if (!cli.report_path.empty()) {
    std::ofstream rep(cli.report_path, std::ios::binary);
    rep << dd::report_to_json(report) << '\n';
    if (!rep) {
      std::cerr << "error: cannot write " << cli.report_path << '\n';
      return kExitOracleError;
    }
  }
  return kExitOk;
}

struct SimulateCli {
  std::uint64_t count = 5000;
  std::uint64_t seed = 1;
  std::string algorithms = "ddmin,wddmin";
  std::string out;
  double p0 = 0.2;
};

int cmd_simulate(const SimulateCli& cli) {
  std::vector<dd::Algorithm> algs;
  std::stringstream ss(cli.algorithms);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto alg = dd::algorithm_from_name(name);
    if (!alg) {
      std::cerr << "error: unknown algorithm \"" << name << "\"\n";
      return kExitUsage;
    }
    algs.push_back(*alg);
  }
  if (algs.empty()) {
    std::cerr << "error: no algorithms selected\n";
    return kExitUsage;
  }

  dd::SimReport report = dd::run_simulation(cli.count, cli.seed, algs, cli.p0);

  std::cout << "instances:  " << cli.count << '\n';
  char buf[64];
  for (const auto& [alg, mean] : report.mean_tests) {
    std::snprintf(buf, sizeof buf, "%.2f", mean);
    std::cout << "mean tests " << alg << ": " << buf << '\n';
  }
  auto print_savings = [&](const char* from, const char* to) {
    if (report.mean_tests.count(from) && report.mean_tests.count(to)) {
      std::snprintf(buf, sizeof buf, "%.1f", 100.0 * report.savings(from, to));
      std::cout << to << " saves " << buf << "% of " << from << "'s tests\n";
    }
  };
  print_savings("ddmin", "wddmin");
  print_savings("probdd", "wprobdd");
  std::cout << "result mismatches: " << report.mismatches << '\n';

  if (!cli.out.empty()) {
    std::ofstream out(cli.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << cli.out << '\n';
      return kExitUsage;
    }
    dd::write_sim_csv(report, out);
  }
  return report.mismatches == 0 ? kExitOk : 1;
}

struct AnalyzeCli {
  std::string log;
  std::string out;
};

int cmd_analyze(const AnalyzeCli& cli) {
  std::ifstream in(cli.log, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << cli.log << '\n';
    return kExitUsage;
  }
  std::vector<dd::InvocationRecord> records;
  try {
    records = dd::read_invocations(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  dd::CorrelationSummary summary = dd::correlation_analysis(records);

  std::cout << "invocations:          " << summary.invocations << '\n';
  std::cout << "with deletions:       " << summary.with_deletions << '\n';
  std::cout << "defined correlations: " << summary.rhos.size() << '\n';
  if (summary.mean_rho) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", *summary.mean_rho);
    std::cout << "mean weight-deletability rho: " << buf << '\n';
  } else {
    std::cout << "mean weight-deletability rho: undefined\n";
  }

  if (!cli.out.empty()) {
    std::ofstream out(cli.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << cli.out << '\n';
      return kExitUsage;
    }
    out << "invocation,algorithm,depth,rho\n";
    char buf[64];
    for (std::size_t i = 0; i < summary.rhos.size(); ++i) {
      const dd::InvocationRecord& rec = records[summary.rho_sources[i]];
      std::snprintf(buf, sizeof buf, "%.17g", summary.rhos[i]);
      out << summary.rho_sources[i] << ',' << rec.algorithm << ',' << rec.depth
          << ',' << buf << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ddreduce: weighted delta-debugging test input reducer"};
  app.require_subcommand(1);

  ReduceCli rc;
  CLI::App* reduce = app.add_subcommand(
      "reduce", "Minimize an input while an oracle script keeps passing");
  reduce->add_option("--input", rc.input, "File to minimize")->required();
  reduce->add_option("--oracle", rc.oracle,
                     "Property script; exit 0 means the candidate is interesting")
      ->required();
  reduce->add_option("--algorithm", rc.algorithm, "Reduction algorithm")
      ->check(CLI::IsMember({"ddmin", "wddmin", "probdd", "wprobdd"}))
      ->capture_default_str();
  reduce->add_option("--granularity", rc.granularity, "Element granularity")
      ->check(CLI::IsMember({"token", "line", "tree-delimiters", "tree-json"}))
      ->capture_default_str();
  reduce->add_flag("--fixpoint,!--no-fixpoint", rc.fixpoint,
                   "Repeat passes until nothing is deleted (default on)");
  reduce->add_option("--p0", rc.p0,
                     "Initial deletion probability (probdd/wprobdd)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  reduce->add_option("--seed", rc.seed,
                     "Randomize probdd-family tie-breaking with this seed");
  reduce->add_option("--timeout", rc.timeout, "Oracle timeout in seconds")
      ->capture_default_str();
  reduce->add_flag("--timeout-abort", rc.timeout_abort,
                   "Treat oracle timeouts as session errors, not failures");
  reduce->add_option("--cache-dir", rc.cache_dir,
                     "Persistent verdict cache directory");
  reduce->add_option("--log", rc.log_path, "Session log (JSON lines)");
  reduce->add_option("--out", rc.out_path,
                     "Output path (default: <input>.min)");
  reduce->add_option("--report", rc.report_path, "Write the report as JSON");
  reduce->add_flag("--keep-temps", rc.keep_temps,
                   "Keep per-run oracle temp directories");
  reduce->add_flag("-v,--verbose", rc.verbose, "Chattier output");

  SimulateCli sc;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Compare algorithms on synthetic weighted lists");
  simulate->add_option("--count", sc.count, "Number of synthetic instances")
      ->capture_default_str();
  simulate->add_option("--seed", sc.seed, "Base seed")->capture_default_str();
  simulate->add_option("--algorithms", sc.algorithms,
                       "Comma-separated algorithm list")
      ->capture_default_str();
  simulate->add_option("--p0", sc.p0,
                       "Initial deletion probability (probdd/wprobdd)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  simulate->add_option("--out", sc.out, "Write per-run rows as CSV");

  AnalyzeCli ac;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Weight-deletability correlation over a session log");
  analyze->add_option("--log", ac.log, "Session log from reduce --log")
      ->required();
  analyze->add_option("--out", ac.out, "Write per-invocation rho rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (reduce->parsed()) return cmd_reduce(rc);
  if (simulate->parsed()) return cmd_simulate(sc);
  if (analyze->parsed()) return cmd_analyze(ac);
  return kExitUsage;
}
