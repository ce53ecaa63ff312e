#include "sbvecm/linalg.hpp"

#include <cmath>
#include <sstream>

#include "sbvecm/errors.hpp"

namespace sbvecm {

namespace {

constexpr double kHermitianTol = 1e-10;

void check_hermitian_pd(const CMatrix& h) {
  require(h.rows() == h.cols() && h.rows() > 0, "hermitian_sqrt: matrix must be square");
  const double scale = std::max(h.norm(), 1e-300);
  const double asym = (h - h.adjoint()).norm() / scale;
  if (asym > kHermitianTol) {
    std::ostringstream os;
    os << "hermitian_sqrt: matrix is not Hermitian (relative asymmetry " << asym << ")";
    throw ValidationError(os.str());
  }
  Eigen::LLT<CMatrix> llt(0.5 * (h + h.adjoint()));
  if (llt.info() != Eigen::Success)
    throw ValidationError("hermitian_sqrt: matrix is not positive definite");
}

}  // namespace

CMatrix hermitian_sqrt(const CMatrix& h, double tol, int max_iter) {
  check_hermitian_pd(h);
  const double h_norm = h.norm();
  CMatrix x = h;
  double residual = (x * x - h).norm() / h_norm;
  for (int it = 0; it < max_iter && residual > tol; ++it) {
    Eigen::PartialPivLU<CMatrix> lu(x);
    x = 0.5 * (x + lu.solve(h));
    residual = (x * x - h).norm() / h_norm;
    if (!std::isfinite(residual)) break;
  }
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "hermitian_sqrt: Newton iteration did not converge, residual " << residual;
    throw IterationError(os.str(), residual);
  }
  return 0.5 * (x + x.adjoint());
}

CMatrix hermitian_sqrt_eigen(const CMatrix& h) {
  check_hermitian_pd(h);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix hermitian_sqrt_robust(const CMatrix& h) {
  try {
    return hermitian_sqrt(h);
  } catch (const IterationError&) {
    return hermitian_sqrt_eigen(h);
  }
}

Matrix symmetric_sqrt(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.transpose()));
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw NumericalError("symmetric_sqrt: matrix is not positive definite");
  return es.operatorSqrt();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  require(v.size() == rows * cols, "unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix realify(const CMatrix& c) {
  const Eigen::Index p = c.rows(), q = c.cols();
  Matrix out(2 * p, 2 * q);
  out.topLeftCorner(p, q) = c.real();
  out.topRightCorner(p, q) = -c.imag();
  out.bottomLeftCorner(p, q) = c.imag();
  out.bottomRightCorner(p, q) = c.real();
  return out;
}

double log_det_spd(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw NumericalError("log_det_spd: matrix is not SPD");
  Matrix l = llt.matrixL();
  return 2.0 * l.diagonal().array().log().sum();
}

std::vector<Matrix> var_lag_matrices(const ParamState& state, const ModelSpec& spec) {
  spec.validate();
  check_dimensions(state, spec);
  const int n = spec.n, k = spec.k;
  const LongRunMatrices pi = long_run_matrices(state, spec);

  auto lag_gamma = [&](int i) -> Matrix {
    if (i < 1 || i > spec.lag_blocks()) return Matrix::Zero(n, n);
    return state.gamma.middleRows((i - 1) * n, n).transpose();
  };

  // Δ4 y_t = Π1 y(1) + Π2 y(2) + Π3 y(32) + Π4 y(31) + Σ Γ_i Δ4 y_{t-i} + ...
  std::vector<Matrix> lags(k, Matrix::Zero(n, n));
  lags[0] = pi.pi1 + pi.pi2 + pi.pi4;
  lags[1] = pi.pi1 - pi.pi2 + pi.pi3;
  lags[2] = pi.pi1 + pi.pi2 - pi.pi4;
  lags[3] = Matrix::Identity(n, n) + pi.pi1 - pi.pi2 - pi.pi3;
  for (int i = 1; i <= k; ++i) lags[i - 1] += lag_gamma(i) - lag_gamma(i - 4);
  return lags;
}

CompanionMatrix companion_from_lags(const std::vector<Matrix>& lags) {
  require(!lags.empty(), "companion: need at least one lag");
  const int n = static_cast<int>(lags.front().rows());
  const int k = static_cast<int>(lags.size());
  CompanionMatrix cm;
  cm.n = n;
  cm.k = k;
  cm.a = Matrix::Zero(n * k, n * k);
  for (int i = 0; i < k; ++i) {
    require(lags[i].rows() == n && lags[i].cols() == n, "companion: lag matrices must be n x n");
    cm.a.block(0, i * n, n, n) = lags[i];
  }
  if (k > 1) cm.a.block(n, 0, n * (k - 1), n * (k - 1)).setIdentity();
  return cm;
}

CompanionMatrix build_companion(const ParamState& state, const ModelSpec& spec) {
  return companion_from_lags(var_lag_matrices(state, spec));
}

StabilityReport stability_check(const CompanionMatrix& cm, const ModelSpec& spec, double tol_unit,
                                double tol_explosive) {
  StabilityReport rep;
  rep.tol_unit = tol_unit;
  rep.tol_explosive = tol_explosive;

  Eigen::EigenSolver<Matrix> es(cm.a, /*computeEigenvectors=*/false);
  const CVector ev = es.eigenvalues();
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());

  const Complex one(1.0, 0.0), minus_one(-1.0, 0.0), plus_i(0.0, 1.0), minus_i(0.0, -1.0);
  for (const Complex& lambda : rep.eigenvalues) {
    const double modulus = std::abs(lambda);
    rep.eigen_moduli.push_back(modulus);
    if (std::abs(lambda - one) <= tol_unit) {
      ++rep.count_one;
    } else if (std::abs(lambda - minus_one) <= tol_unit) {
      ++rep.count_minus_one;
    } else if (std::abs(lambda - plus_i) <= tol_unit) {
      ++rep.count_plus_i;
    } else if (std::abs(lambda - minus_i) <= tol_unit) {
      ++rep.count_minus_i;
    } else {
      rep.max_non_unit_modulus = std::max(rep.max_non_unit_modulus, modulus);
      if (!(modulus < 1.0 - tol_unit) || !(modulus < 1.0 + tol_explosive))
        ++rep.count_non_unit_outside;
    }
  }

  const int n = cm.n;
  rep.is_admissible = rep.count_one == n - spec.r1 && rep.count_minus_one == n - spec.r2 &&
                      rep.count_plus_i == n - spec.r3 && rep.count_minus_i == n - spec.r3 &&
                      rep.count_non_unit_outside == 0;
  return rep;
}

}  // namespace sbvecm
