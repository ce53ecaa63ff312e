#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"
#include "sbvecm/compare.hpp"
#include "sbvecm/dgp.hpp"
#include "sbvecm/gibbs.hpp"
#include "sbvecm/subspace.hpp"

namespace sbvecm::cli {

using LogSink = std::function<void(const std::string&)>;

// Data file of the config with the configured log transforms applied.
QuarterlySeries load_data(const RunConfig& cfg);

struct SimulateOutcome {
  SimulationResult sim;
  std::filesystem::path csv_path;
};
// Writes simulated.csv and simulate.json into the output directory.
SimulateOutcome cmd_simulate(const RunConfig& cfg, const LogSink& log = {});

struct FrequencyReport {
  Frequency freq = Frequency::Zero;
  std::string name;
  SpaceSummary summary;
  double distance_to_dgp = -1.0;  // negative when not requested
};

struct EstimateOutcome {
  ModelSpec spec;
  ChainOutput chain;
  std::vector<FrequencyReport> spaces;
  Json report;
};
// Writes estimate.json, beta_<freq>.csv and deviations.csv.
EstimateOutcome cmd_estimate(const RunConfig& cfg, const LogSink& log = {});

struct CompareOutcome {
  ModelGrid grid;
  CompareResult result;
};
// Writes models.csv, features.csv, dedup_log.txt and compare.json.
CompareOutcome cmd_compare(const RunConfig& cfg, const LogSink& log = {});

}  // namespace sbvecm::cli
