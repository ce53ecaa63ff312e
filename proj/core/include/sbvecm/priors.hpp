#pragma once

#include "sbvecm/random.hpp"
#include "sbvecm/state.hpp"
#include "sbvecm/types.hpp"

namespace sbvecm {

// Prior hyperparameters for one model.
//
//   Sigma ~ iW(S, q)
//   Gamma | Sigma, nu ~ mN(mu_gamma, Sigma, nu Omega_gamma)     (row scale nu Omega_gamma)
//   A_j | Sigma, nu ~ mN(mu_j, nu Omega_j, Sigma)              (column scale nu Omega_j)
//   B_j ~ mN(0, I/m_j, P_j)                          => beta_j ~ MACG(P_j)
//   (A_R; A_I) | Sigma, nu: rows N with covariance Sigma/2, column scale nu I
//   (B_R; B_I) ~ mN(0, I/m3, [[P_R, -P_I], [P_I, P_R]] / 2)  => complex MACG(P*)
//   nu ~ iG(s_nu, n_nu), or fixed.
struct PriorHyper {
  Matrix S;
  double q = 0.0;
  Matrix mu_gamma, omega_gamma;
  Matrix mu1, omega1;
  Matrix mu2, omega2;
  CMatrix mu_star;
  Matrix p1, p2;
  CMatrix p_star;
  bool estimate_nu = true;
  double nu_fixed = 1.0;
  double s_nu = 1.0;
  double n_nu = 1.0;

  void validate(const ModelSpec& spec) const;
};

// Scalar knobs from which identity-shaped hyperparameters are built.
struct HyperSettings {
  double s_scale = 0.1;     // S = s_scale I_n
  double q_offset = 2.0;    // q = n + q_offset
  double p_scale = 0.1;     // P_1, P_2, P* = p_scale I
  double omega_scale = 1.0; // Omega_gamma, Omega_1, Omega_2 = omega_scale I
  bool estimate_nu = true;
  double nu_fixed = 1.0;
  double s_nu = 1.0;
  double n_nu = 1.0;
};

PriorHyper make_hyper(const ModelSpec& spec, const HyperSettings& settings = {});

// One draw from the untruncated joint prior, normalized forms filled in.
ParamState sample_prior_state(const ModelSpec& spec, const PriorHyper& hyper, Rng& rng);

// Draws of the blocks integrated numerically by the marginal-likelihood
// estimator: B1, B2, B_R, B_I and nu.
struct LoadingsDraw {
  Matrix b1, b2, b_r, b_i;
  double nu = 1.0;
};
LoadingsDraw sample_prior_loadings(const ModelSpec& spec, const PriorHyper& hyper, Rng& rng);

// Exact log prior density of (B1, B2, B*, nu); nu is omitted when fixed.
double log_prior_density_B_nu(const ParamState& state, const ModelSpec& spec,
                              const PriorHyper& hyper);

// Covariance of one column of (B_R; B_I): [[P_R, -P_I], [P_I, P_R]] / (2 m3).
Matrix stacked_loading_covariance(const CMatrix& p_star, int m3);

}  // namespace sbvecm
