#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sbvecm/compare.hpp"
#include "sbvecm/dgp.hpp"
#include "sbvecm/gibbs.hpp"
#include "sbvecm/priors.hpp"

namespace sbvecm::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// `key = value` lines; '#' starts a comment, blank lines are ignored.
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);

struct RunConfig {
  std::string data_path;
  std::vector<std::string> log_series;
  std::filesystem::path output_dir = "out";
  int workers = 1;

  // estimate: one model (n is taken from the data)
  ModelSpec model{2, 5, 4, 0, 1, 1, 1};
  // compare: grid over d, s and ranks 0..r_max (r_max < 0 means n)
  int grid_k = 5;
  std::vector<int> grid_d{1, 2, 3, 4};
  std::vector<int> grid_s{0, 1};
  int grid_r_max = -1;

  HyperSettings hyper;

  long burn_in = 100000;
  long keep = 200000;
  long thin = 1;
  std::uint64_t mcmc_seed = 1;
  long max_attempts = 10000;
  double min_acceptance = 1e-3;
  bool check_stability = true;
  double tol_unit = kTolUnit;
  double tol_explosive = kTolExplosive;

  long mdd_draws = 1500000;
  long trunc_draws = 100000;
  std::uint64_t mdd_seed = 1;

  DgpConfig dgp = DgpConfig::reference();
  // estimate: report distances to the spaces of the dgp section
  bool compare_to_dgp = false;

  ChainConfig chain() const;
  CompareSettings compare_settings() const;
};

// Applies the entries on top of the defaults; unknown keys and malformed
// values raise ConfigError.
RunConfig config_from_key_values(const KeyValues& kv, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path);

// Every setting, in a form config_from_key_values reads back unchanged.
KeyValues to_key_values(const RunConfig& cfg);
void write_config(const RunConfig& cfg, const std::filesystem::path& path);

}  // namespace sbvecm::cli
