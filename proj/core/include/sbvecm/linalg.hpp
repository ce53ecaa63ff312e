#pragma once

#include <array>
#include <vector>

#include "sbvecm/state.hpp"
#include "sbvecm/types.hpp"

namespace sbvecm {

inline constexpr double kSqrtTol = 1e-12;
inline constexpr int kSqrtMaxIter = 100;
inline constexpr double kTolUnit = 1e-6;
inline constexpr double kTolExplosive = 1e-9;

// Principal square root of a Hermitian positive-definite matrix by the plain
// Newton iteration X <- (X + X^{-1} H) / 2 started at X = H.
// Throws ValidationError for non-Hermitian / indefinite input and
// IterationError when ||XX - H||_F > tol ||H||_F after max_iter steps.
CMatrix hermitian_sqrt(const CMatrix& h, double tol = kSqrtTol, int max_iter = kSqrtMaxIter);

// Square root through the eigendecomposition V diag(sqrt(lambda)) V*.
CMatrix hermitian_sqrt_eigen(const CMatrix& h);

// Newton first, eigendecomposition when Newton does not converge.
CMatrix hermitian_sqrt_robust(const CMatrix& h);

Matrix symmetric_sqrt(const Matrix& s);

Matrix kron(const Matrix& a, const Matrix& b);
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

// Real 2p x 2q representation [[Re, -Im], [Im, Re]] of a complex p x q matrix.
Matrix realify(const CMatrix& c);

// log|A| for SPD A through the Cholesky factor; throws NumericalError otherwise.
double log_det_spd(const Matrix& a);

// VAR(1) form of the levels process: first block row (A_1 .. A_k), identities below.
struct CompanionMatrix {
  Matrix a;
  int n = 0;
  int k = 0;
};

// A_1 .. A_k of the levels VAR implied by the error-correction parameters.
std::vector<Matrix> var_lag_matrices(const ParamState& state, const ModelSpec& spec);

CompanionMatrix companion_from_lags(const std::vector<Matrix>& lags);
CompanionMatrix build_companion(const ParamState& state, const ModelSpec& spec);

// Root bookkeeping at the four seasonal unit points z = 1, -1, i, -i.
struct StabilityReport {
  std::vector<Complex> eigenvalues;
  std::vector<double> eigen_moduli;
  int count_one = 0;
  int count_minus_one = 0;
  int count_plus_i = 0;
  int count_minus_i = 0;
  int count_non_unit_outside = 0;  // unmatched roots with modulus >= 1 - tol_unit
  double max_non_unit_modulus = 0.0;
  double tol_unit = kTolUnit;
  double tol_explosive = kTolExplosive;
  bool is_admissible = false;

  // (at 1, at -1, conjugate pairs at ±i)
  std::array<int, 3> unit_counts() const { return {count_one, count_minus_one, count_plus_i}; }
};

StabilityReport stability_check(const CompanionMatrix& cm, const ModelSpec& spec,
                                double tol_unit = kTolUnit, double tol_explosive = kTolExplosive);

}  // namespace sbvecm
