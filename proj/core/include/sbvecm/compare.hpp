#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sbvecm/linalg.hpp"
#include "sbvecm/pipeline.hpp"
#include "sbvecm/priors.hpp"
#include "sbvecm/random.hpp"

namespace sbvecm {

struct ModelGrid {
  std::vector<ModelSpec> specs;
  std::vector<double> prior_probs;
  std::vector<std::string> dedup_log;
};

// Cross product of d_set x s_set x {0..r_max}^3 with observationally
// equivalent and impossible combinations removed; uniform prior.
ModelGrid enumerate_grid(int n, int k, const std::vector<int>& d_set, const std::vector<int>& s_set,
                         int r_max);

// Representative of the equivalence class of `spec`; `possible` is false
// when the combination cannot be represented at all.
ModelSpec canonical_spec(const ModelSpec& spec, bool* possible = nullptr);

// log p(Z0 | B1, B2, B_R, B_I, nu) with Sigma and the coefficient blocks
// integrated out. Constants that do not depend on the loadings are cached.
class MarginalLikelihood {
 public:
  MarginalLikelihood(const CrossProducts& xp, const ModelSpec& spec, const PriorHyper& hyper);

  // -inf (with a note in last_error()) when an intermediate is not finite or
  // the posterior scale is not positive definite.
  double operator()(const LoadingsDraw& b) const;
  const std::string& last_error() const { return last_error_; }

  // Regressor map W with Z~ = [Z1 Z2 Z31 Z32 Z4] W.
  Matrix regressor_map(const LoadingsDraw& b) const;

 private:
  const CrossProducts& xp_;
  ModelSpec spec_;
  const PriorHyper& hyper_;
  int K_ = 0;
  Matrix omega_inv_, omega_inv_mu_, mu_omega_mu_;
  double log_det_omega_ = 0.0;
  double constant_ = 0.0;
  mutable std::string last_error_;
};

double conditional_log_mdd(const CrossProducts& xp, const ModelSpec& spec, const LoadingsDraw& b,
                           const PriorHyper& hyper);

struct MddEstimate {
  double log_mdd = -std::numeric_limits<double>::infinity();
  double mc_se = 0.0;  // delta-method standard error of log_mdd
  long draws = 0;
  long finite = 0;
};

// Arithmetic mean of the conditional marginal likelihood over prior draws of
// (B1, B2, B_R, B_I, nu), accumulated in log space.
MddEstimate estimate_log_mdd(const CrossProducts& xp, const ModelSpec& spec,
                             const PriorHyper& hyper, long n_draws, Rng& rng);
MddEstimate estimate_log_mdd(const QuarterlySeries& y, const ModelSpec& spec,
                             const PriorHyper& hyper, long n_draws, Rng& rng);

struct TruncationEstimate {
  double fraction = 0.0;  // N / M
  long accepted = 0;      // N
  long draws = 0;         // M
};

// Share of full prior states passing the stability check; throws
// NumericalError when none does.
TruncationEstimate truncation_fraction(const ModelSpec& spec, const PriorHyper& hyper,
                                       long n_draws, Rng& rng, double tol_unit = kTolUnit,
                                       double tol_explosive = kTolExplosive);

// Softmax of log prior + log MDD.
std::vector<double> model_posteriors(const std::vector<double>& log_mdd,
                                     const std::vector<double>& prior_probs);

struct FeatureTable {
  std::string feature;  // "d", "s", "r1", "r2" or "r3"
  std::vector<int> values;
  std::vector<double> posterior;
  std::vector<double> prior;
};

std::vector<FeatureTable> feature_marginals(const ModelGrid& grid,
                                            const std::vector<double>& posteriors);

struct CompareSettings {
  HyperSettings hyper;
  long mdd_draws = 200000;
  long trunc_draws = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double tol_unit = kTolUnit;
  double tol_explosive = kTolExplosive;
};

struct ModelScore {
  ModelSpec spec;
  double log_mdd = -std::numeric_limits<double>::infinity();
  double mc_se = 0.0;
  double trunc_fraction = 0.0;
  long trunc_accepted = 0;
  double corrected_log_mdd = -std::numeric_limits<double>::infinity();
  double prior_prob = 0.0;
  double posterior_prob = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

struct CompareResult {
  std::vector<ModelScore> scores;  // grid order
  std::vector<FeatureTable> features;
  std::vector<std::size_t> ranking;  // indices by descending posterior
};

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

// Scores every model of the grid; workers share nothing but the data and the
// results vector, each model drawing from its own derived seeds.
CompareResult run_comparison(const QuarterlySeries& y, const ModelGrid& grid,
                             const CompareSettings& settings,
                             const ProgressCallback& progress = {});

}  // namespace sbvecm
