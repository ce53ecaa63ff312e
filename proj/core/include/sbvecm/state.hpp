#pragma once

#include "sbvecm/types.hpp"

namespace sbvecm {

// One full draw of the model parameters in both parameterizations.
//
// The A-B blocks are what the sampler moves; alpha/beta are the normalized
// forms with beta on the (complex) Stiefel manifold. `gamma` is stacked in
// regression form, so block i (rows i*n .. i*n+n-1) is the transpose of the
// lag matrix Gamma_{i+1}; the trailing l rows hold unrestricted dummies.
struct ParamState {
  Matrix sigma;
  double nu = 1.0;
  Matrix gamma;

  Matrix a1, b1;
  Matrix a2, b2;
  Matrix a_r, a_i, b_r, b_i;

  Matrix alpha1, beta1;
  Matrix alpha2, beta2;
  CMatrix alpha_star, beta_star;

  CMatrix a_star() const;
  CMatrix b_star() const;
};

// Zero-filled state with every block sized for `spec` (Sigma = I, nu = 1).
ParamState zero_state(const ModelSpec& spec);

void check_dimensions(const ParamState& state, const ModelSpec& spec);

// Coefficients C with Z0 = [Z1 Z2 Z31 Z32 Z4] C + E.
Matrix regression_coefficients(const ParamState& state, const ModelSpec& spec);

// Long-run matrices acting on the stochastic parts of the transformed levels.
// pi3 multiplies y(32)_t = y_{t-2} - y_{t-4}; pi4 multiplies y(31)_t = y_{t-1} - y_{t-3}.
struct LongRunMatrices {
  Matrix pi1, pi2, pi3, pi4;
};
LongRunMatrices long_run_matrices(const ParamState& state, const ModelSpec& spec);

}  // namespace sbvecm
