#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sbvecm/linalg.hpp"
#include "sbvecm/pipeline.hpp"
#include "sbvecm/priors.hpp"
#include "sbvecm/random.hpp"
#include "sbvecm/state.hpp"

namespace sbvecm {

// Parameters of each full conditional. Matrix-normal blocks follow
// vec(X) ~ N(vec(mean), col_scale (x) row_scale).
struct InverseWishartParams {
  Matrix scale;
  double dof = 0.0;
};

struct InverseGammaParams {
  double scale = 0.0;
  double shape = 0.0;
};

struct MatrixNormalParams {
  Matrix mean;
  Matrix row_scale;
  Matrix col_scale;
};

// N(precision^{-1} rhs, precision^{-1}) for a vectorized loading block.
struct GaussianParams {
  Matrix precision;
  Vector rhs;

  Vector mean() const;
  Matrix covariance() const;
};

// Prior quadratic form shared by the Sigma and nu conditionals:
// (G-mu)'Og^{-1}(G-mu) + 2 (A*-mu*)(A*-mu*)^H + (A1-mu1)O1^{-1}(A1-mu1)' + (A2-mu2)O2^{-1}(A2-mu2)'.
Matrix prior_quadratic(const ParamState& state, const ModelSpec& spec, const PriorHyper& hyper);

// Residual cross product E'E evaluated from the Gram matrix.
Matrix residual_cross_product(const ParamState& state, const CrossProducts& xp,
                              const ModelSpec& spec);

InverseWishartParams sigma_conditional(const ParamState& state, const CrossProducts& xp,
                                       const ModelSpec& spec, const PriorHyper& hyper);
InverseGammaParams nu_conditional(const ParamState& state, const ModelSpec& spec,
                                  const PriorHyper& hyper);
// Gamma: row scale Omega_bar_Gamma, column scale Sigma.
MatrixNormalParams gamma_conditional(const ParamState& state, const CrossProducts& xp,
                                     const ModelSpec& spec, const PriorHyper& hyper);
// A_1 / A_2 (n x r): row scale Sigma, column scale Omega_bar_j.
MatrixNormalParams adjustment_conditional(Frequency freq, const ParamState& state,
                                          const CrossProducts& xp, const ModelSpec& spec,
                                          const PriorHyper& hyper);
// A_RI = (A_R'; A_I') (2 r3 x n): row scale Omega_bar_RI, column scale Sigma.
MatrixNormalParams complex_adjustment_conditional(const ParamState& state, const CrossProducts& xp,
                                                  const ModelSpec& spec, const PriorHyper& hyper);
// vec(B_1) / vec(B_2).
GaussianParams loadings_conditional(Frequency freq, const ParamState& state,
                                    const CrossProducts& xp, const ModelSpec& spec,
                                    const PriorHyper& hyper);
// vec(B_R) given B_I and vec(B_I) given B_R.
GaussianParams complex_loadings_real_conditional(const ParamState& state, const CrossProducts& xp,
                                                 const ModelSpec& spec, const PriorHyper& hyper);
GaussianParams complex_loadings_imag_conditional(const ParamState& state, const CrossProducts& xp,
                                                 const ModelSpec& spec, const PriorHyper& hyper);

Matrix draw_sigma(const ParamState& state, const CrossProducts& xp, const ModelSpec& spec,
                  const PriorHyper& hyper, Rng& rng);
double draw_nu(const ParamState& state, const ModelSpec& spec, const PriorHyper& hyper, Rng& rng);
Matrix draw_gamma(const ParamState& state, const CrossProducts& xp, const ModelSpec& spec,
                  const PriorHyper& hyper, Rng& rng);
Matrix draw_adjustment_real(Frequency freq, const ParamState& state, const CrossProducts& xp,
                            const ModelSpec& spec, const PriorHyper& hyper, Rng& rng);
std::pair<Matrix, Matrix> draw_adjustment_complex(const ParamState& state, const CrossProducts& xp,
                                                  const ModelSpec& spec, const PriorHyper& hyper,
                                                  Rng& rng);
Matrix draw_loadings_real(Frequency freq, const ParamState& state, const CrossProducts& xp,
                          const ModelSpec& spec, const PriorHyper& hyper, Rng& rng);
Matrix draw_loadings_complex_real_part(const ParamState& state, const CrossProducts& xp,
                                       const ModelSpec& spec, const PriorHyper& hyper, Rng& rng);
Matrix draw_loadings_complex_imag_part(const ParamState& state, const CrossProducts& xp,
                                       const ModelSpec& spec, const PriorHyper& hyper, Rng& rng);

// alpha = A (B'B)^{1/2}, beta = B (B'B)^{-1/2}; throws NumericalError when B
// is rank deficient.
std::pair<Matrix, Matrix> normalize_pair(const Matrix& a, const Matrix& b);
std::pair<CMatrix, CMatrix> normalize_pair(const CMatrix& a, const CMatrix& b);

// Recomputes alpha/beta of every frequency from the A-B blocks.
void refresh_normalized(ParamState& state, const ModelSpec& spec);

// One systematic scan: Sigma, nu, Gamma, A1, B1, A2, B2, A_RI, B_R, B_I.
ParamState gibbs_sweep(const ParamState& state, const CrossProducts& xp, const ModelSpec& spec,
                       const PriorHyper& hyper, Rng& rng);

// Starting point: identity-column loadings, zero adjustments, Sigma from Z0'Z0/T.
ParamState initial_state(const CrossProducts& xp, const ModelSpec& spec, const PriorHyper& hyper);

struct ChainConfig {
  long burn_in = 0;
  long keep = 0;
  long thin = 1;
  std::uint64_t seed = 1;
  long max_attempts = 10000;    // acceptance-rate checkpoint interval
  double min_acceptance = 1e-3;
  double tol_unit = kTolUnit;
  double tol_explosive = kTolExplosive;
  bool check_stability = true;
};

struct ChainOutput {
  std::vector<ParamState> draws;
  long attempted = 0;
  long accepted = 0;
  std::uint64_t seed = 0;

  double acceptance_rate() const {
    return attempted > 0 ? static_cast<double>(accepted) / static_cast<double>(attempted) : 0.0;
  }
};

using DrawVisitor = std::function<void(const ParamState&)>;

// Gibbs chain with stability-gated acceptance. Rejected sweeps are retried
// from the last accepted state; `visit` sees every stored draw. The returned
// output holds counters only (draws left empty).
ChainOutput run_chain(const CrossProducts& xp, const ModelSpec& spec, const PriorHyper& hyper,
                      const ChainConfig& cfg, const DrawVisitor& visit);

// Same chain, storing the draws.
ChainOutput run_chain(const QuarterlySeries& y, const ModelSpec& spec, const PriorHyper& hyper,
                      const ChainConfig& cfg);

// Initial-positive-sequence effective sample size of a scalar trace.
double effective_sample_size(std::span<const double> trace);

}  // namespace sbvecm
