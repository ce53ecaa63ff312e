#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbvecm/compare.hpp"
#include "sbvecm/gibbs.hpp"
#include "sbvecm/pipeline.hpp"
#include "sbvecm/priors.hpp"
#include "sbvecm/random.hpp"

namespace sbvecm::testing {

Matrix random_spd(int n, Rng& rng, double ridge = 0.5);
CMatrix random_hpd(int n, Rng& rng, double ridge = 0.5);
Matrix random_orthonormal(int m, int r, Rng& rng);
CMatrix random_semi_unitary(int m, int r, Rng& rng);

// Quarterly random walk with a seasonal component, n columns, `rows` observations.
QuarterlySeries random_series(int n, int rows, Rng& rng);

// One randomized model / data / hyperparameter / state configuration.
struct Instance {
  ModelSpec spec;
  QuarterlySeries y;
  DesignMatrices dm;
  CrossProducts xp;
  PriorHyper hyper;
  ParamState state;
};
Instance random_instance(Rng& rng);
Instance random_instance(const ModelSpec& spec, int T, Rng& rng);

// Z0 - E: the fitted part of the regression, built in complex arithmetic
// straight from the A-B blocks.
Matrix fitted_values(const ParamState& s, const DesignMatrices& dm);

// Gaussian N(precision^{-1} rhs, precision^{-1}) over a vectorized block.
struct VecGaussian {
  Matrix precision;
  Vector rhs;
  Vector mean() const;
  Matrix covariance() const;
};

enum class OracleBlock { Gamma, A1, A2, ARI, B1, B2, BR, BI };

// Full conditional of one block from the T-level Kronecker likelihood
// vec(Z0 - rest) = X theta + vec(E), vec(E) ~ N(0, Sigma (x) I_T), and the
// vectorized prior. ARI is ordered as (vec A_R, vec A_I).
VecGaussian oracle_block(const Instance& inst, OracleBlock block);

struct ScaleShape {
  Matrix scale;
  double dof = 0.0;
};
ScaleShape oracle_sigma(const Instance& inst);
// (scale, shape) of the inverse gamma conditional of nu.
std::pair<double, double> oracle_nu(const Instance& inst);

double relative_error(const Matrix& a, const Matrix& b);

struct ConditionalCheck {
  std::string name;
  double mean_error = 0.0;   // relative, Frobenius
  double scale_error = 0.0;
};
// Every full conditional of the instance against its oracle.
std::vector<ConditionalCheck> check_conditionals(const Instance& inst);

// log p(Z0 | B, nu) for n = 1: coefficients integrated in closed form given
// sigma^2, sigma^2 integrated by quadrature.
double oracle_conditional_log_mdd_n1(const DesignMatrices& dm, const ModelSpec& spec,
                                     const PriorHyper& hyper, const LoadingsDraw& b);

// log p(Z0) for n = 1, rank 0, k = 5: nested quadrature over (gamma, sigma^2).
double oracle_log_mdd_rank0_n1(const DesignMatrices& dm, const PriorHyper& hyper);

struct GewekeFunctional {
  std::string name;
  double mc_mean = 0.0, mc_se = 0.0;
  double sc_mean = 0.0, sc_se = 0.0;
  double z = 0.0;
};

struct GewekeResult {
  std::vector<GewekeFunctional> functionals;
  long cycles = 0;
  double pass_share(double z_max) const;
};

std::vector<std::string> geweke_functional_names(const ModelSpec& spec);
std::vector<double> geweke_functionals(const ParamState& s, const ModelSpec& spec);

// Marginal-conditional vs successive-conditional simulator on the untruncated
// model with T modeled observations behind k zero presample levels.
GewekeResult geweke_test(const ModelSpec& spec, const PriorHyper& hyper, int T, long cycles,
                         std::uint64_t seed, long batches = 50);

// Hyperparameters of the sampler test: q = 12, S = 0.9 I, nu ~ iG(5, 6).
PriorHyper geweke_hyper(const ModelSpec& spec);

}  // namespace sbvecm::testing
