#include "sbvecm/random.hpp"

#include <cmath>
#include <string>

#include "sbvecm/errors.hpp"

namespace sbvecm {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) z(i, j) = normal(rng);
  return z;
}

Matrix cholesky_lower(const Matrix& a, const char* what) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + ": matrix is not positive definite");
  return llt.matrixL();
}

Matrix sample_matrix_normal(const Matrix& mean, const Matrix& row_chol, const Matrix& col_chol,
                            Rng& rng) {
  Matrix z = standard_normal(mean.rows(), mean.cols(), rng);
  return mean + row_chol * z * col_chol.transpose();
}

Vector sample_gaussian_canonical(const Matrix& precision, const Vector& rhs, Rng& rng) {
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success)
    throw NumericalError("gaussian draw: precision is not positive definite");
  Vector mean = llt.solve(rhs);
  Vector z = standard_normal(rhs.size(), 1, rng);
  // L L' = precision, so L'^{-1} z has covariance precision^{-1}
  Vector dev = llt.matrixU().solve(z);
  return mean + dev;
}

Matrix sample_wishart(const Matrix& scale, double dof, Rng& rng) {
  const Eigen::Index p = scale.rows();
  if (!(dof > static_cast<double>(p) - 1.0))
    throw ValidationError("wishart: dof must exceed dimension - 1");
  Matrix l = cholesky_lower(scale, "wishart scale");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a = Matrix::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    std::chi_squared_distribution<double> chi(dof - static_cast<double>(i));
    a(i, i) = std::sqrt(chi(rng));
    for (Eigen::Index j = 0; j < i; ++j) a(i, j) = normal(rng);
  }
  Matrix la = l * a;
  return la * la.transpose();
}

Matrix sample_inverse_wishart(const Matrix& scale, double dof, Rng& rng) {
  Matrix scale_inv = scale.llt().solve(Matrix::Identity(scale.rows(), scale.cols()));
  Matrix w = sample_wishart(scale_inv, dof, rng);
  Eigen::LLT<Matrix> llt(w);
  if (llt.info() != Eigen::Success) throw NumericalError("inverse wishart: singular draw");
  Matrix out = llt.solve(Matrix::Identity(w.rows(), w.cols()));
  return 0.5 * (out + out.transpose());
}

double sample_inverse_gamma(double scale, double shape, Rng& rng) {
  if (!(scale > 0.0) || !(shape > 0.0))
    throw ValidationError("inverse gamma: scale and shape must be positive");
  std::gamma_distribution<double> gamma(shape, 1.0 / scale);
  return 1.0 / gamma(rng);
}

}  // namespace sbvecm
