#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sbvecm/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalError = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian seasonally cointegrated VAR for quarterly data"};
  app.require_subcommand(1);

  std::string config_path, data_path, out_dir, log_list;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool quiet = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--data", data_path, "quarterly CSV (date,<series>...)");
    sub->add_option("--seed", seed, "seed for every random stream of the command");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "parallel model evaluations");
    sub->add_option("--log", log_list, "comma-separated series to log-transform");
    sub->add_flag("-q,--quiet", quiet, "no progress messages");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "simulate the configured process");
  CLI::App* estimate = app.add_subcommand("estimate", "posterior simulation for one model");
  CLI::App* compare = app.add_subcommand("compare", "posterior model probabilities over a grid");
  for (CLI::App* sub : {simulate, estimate, compare}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  using namespace sbvecm;
  using namespace sbvecm::cli;
  const LogSink log = quiet ? LogSink{} : LogSink{[](const std::string& m) { std::cerr << m << '\n'; }};
  try {
    KeyValues kv;
    if (!config_path.empty()) kv = read_key_values(config_path);
    if (!data_path.empty()) kv.emplace_back("data", data_path);
    if (!out_dir.empty()) kv.emplace_back("out", out_dir);
    if (!log_list.empty()) kv.emplace_back("log", log_list);
    if (workers) kv.emplace_back("workers", std::to_string(*workers));
    if (seed) {
      kv.emplace_back("mcmc.seed", std::to_string(*seed));
      kv.emplace_back("mdd.seed", std::to_string(*seed));
      kv.emplace_back("dgp.seed", std::to_string(*seed));
    }
    const RunConfig cfg = config_from_key_values(kv);
    if (simulate->parsed()) cmd_simulate(cfg, log);
    if (estimate->parsed()) cmd_estimate(cfg, log);
    if (compare->parsed()) cmd_compare(cfg, log);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const IterationError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const ChainAbort& e) {
    std::cerr << "chain aborted: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
