#pragma once

#include <cstdint>
#include <vector>

#include "sbvecm/linalg.hpp"
#include "sbvecm/pipeline.hpp"
#include "sbvecm/random.hpp"
#include "sbvecm/state.hpp"

namespace sbvecm {

// Seasonally cointegrated error-correction process without deterministic terms:
//   D4 y_t = A1 B1' y(1) + A2 B2' y(2) + 2 Re(A* B*^H y(3)) + sum_i Gamma_i D4 y_{t-i} + e_t.
struct DgpConfig {
  Matrix a1, b1, a2, b2;
  CMatrix a_star, b_star;
  std::vector<Matrix> gamma;  // lag matrices Gamma_1, Gamma_2, ...
  Matrix sigma;
  int total = 250;
  int discard = 50;
  std::uint64_t seed = 2026;

  // Bivariate process with one relation at every frequency and one short-run lag.
  static DgpConfig reference();

  void validate() const;
  int n() const { return static_cast<int>(sigma.rows()); }
  // The matching model: k = 4 + lags, d = 4, s = 0, ranks from the loadings.
  ModelSpec spec() const;
  ParamState state() const;
};

struct SimulationResult {
  QuarterlySeries series;
  StabilityReport stability;
  bool explosive = false;  // some companion root outside the unit circle
};

// Zero initial values occupy the first k observations of the `total`
// generated; the first `discard` observations are then dropped.
SimulationResult simulate(const DgpConfig& cfg, Rng& rng);
SimulationResult simulate(const DgpConfig& cfg);  // seeded from cfg.seed

// Runs the regression recursion D4 y_t = x_t' C + e_t forward. `presample`
// holds the first k levels; row j of `innovations` drives observation k+1+j.
Matrix simulate_vecm_path(const ParamState& state, const ModelSpec& spec, const Matrix& presample,
                          const Matrix& innovations);

// The same process through its levels VAR y_t = sum_i A_i y_{t-i} + e_t
// (no deterministic terms).
Matrix simulate_levels_path(const std::vector<Matrix>& lags, const Matrix& presample,
                            const Matrix& innovations);

// Data of T modeled rows drawn from the likelihood at `state`, with k zero
// presample levels in front.
QuarterlySeries simulate_from_state(const ParamState& state, const ModelSpec& spec, int T,
                                    Rng& rng);

}  // namespace sbvecm
