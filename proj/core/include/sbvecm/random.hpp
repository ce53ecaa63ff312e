#pragma once

#include <cstdint>
#include <random>

#include "sbvecm/types.hpp"

namespace sbvecm {

using Rng = std::mt19937_64;

// Deterministic child seed for stream `index` under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Lower Cholesky factor; throws NumericalError when `a` is not SPD.
Matrix cholesky_lower(const Matrix& a, const char* what);

// X = mean + L_row Z L_col', so vec(X) ~ N(vec(mean), col_cov (x) row_cov).
Matrix sample_matrix_normal(const Matrix& mean, const Matrix& row_chol, const Matrix& col_chol,
                            Rng& rng);

// x ~ N(precision^{-1} rhs, precision^{-1}).
Vector sample_gaussian_canonical(const Matrix& precision, const Vector& rhs, Rng& rng);

// Wishart(scale, dof) via the Bartlett decomposition (density ∝ |W|^{(dof-p-1)/2} e^{-tr(scale^{-1}W)/2}).
Matrix sample_wishart(const Matrix& scale, double dof, Rng& rng);

// Inverse Wishart iW(scale, dof): density ∝ |Σ|^{-(dof+p+1)/2} exp(-tr(scale Σ^{-1})/2).
Matrix sample_inverse_wishart(const Matrix& scale, double dof, Rng& rng);

// Inverse gamma iG(scale, shape): density ∝ x^{-shape-1} exp(-scale/x).
double sample_inverse_gamma(double scale, double shape, Rng& rng);

}  // namespace sbvecm
