#include "sbvecm/priors.hpp"

#include <cmath>
#include <numbers>

#include "sbvecm/errors.hpp"
#include "sbvecm/gibbs.hpp"
#include "sbvecm/linalg.hpp"

namespace sbvecm {

namespace {

constexpr double kSymTol = 1e-10;

void check_spd(const Matrix& m, Eigen::Index dim, const char* name) {
  require(m.rows() == dim && m.cols() == dim,
          std::string("prior: ") + name + " has wrong dimension");
  if (dim == 0) return;
  require((m - m.transpose()).norm() <= kSymTol * std::max(1.0, m.norm()),
          std::string("prior: ") + name + " is not symmetric");
  Eigen::LLT<Matrix> llt(m);
  require(llt.info() == Eigen::Success, std::string("prior: ") + name + " is not positive definite");
}

void check_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
  require(m.rows() == rows && m.cols() == cols,
          std::string("prior: ") + name + " has wrong dimension");
}

Matrix matrix_normal_cols(const Matrix& mean, const Matrix& row_cov, const Matrix& col_cov,
                          Rng& rng) {
  if (mean.size() == 0) return mean;
  return sample_matrix_normal(mean, cholesky_lower(row_cov, "prior row scale"),
                              cholesky_lower(col_cov, "prior column scale"), rng);
}

double matrix_normal_log_density(const Matrix& x, const Matrix& row_cov, const Matrix& col_cov) {
  // vec(X) ~ N(0, col_cov (x) row_cov)
  const double p = static_cast<double>(x.rows()), q = static_cast<double>(x.cols());
  if (x.size() == 0) return 0.0;
  const Matrix quad = col_cov.llt().solve(x.transpose() * row_cov.llt().solve(x));
  return -0.5 * p * q * std::log(2.0 * std::numbers::pi) - 0.5 * q * log_det_spd(row_cov) -
         0.5 * p * log_det_spd(col_cov) - 0.5 * quad.trace();
}

}  // namespace

Matrix stacked_loading_covariance(const CMatrix& p_star, int m3) {
  return realify(p_star) / (2.0 * m3);
}

void PriorHyper::validate(const ModelSpec& spec) const {
  spec.validate();
  const int n = spec.n;
  check_spd(S, n, "S");
  require(q > n - 1, "prior: q must exceed n - 1");
  check_shape(mu_gamma, spec.gamma_rows(), n, "mu_gamma");
  check_spd(omega_gamma, spec.gamma_rows(), "Omega_gamma");
  check_shape(mu1, n, spec.r1, "mu1");
  check_spd(omega1, spec.r1, "Omega1");
  check_shape(mu2, n, spec.r2, "mu2");
  check_spd(omega2, spec.r2, "Omega2");
  require(mu_star.rows() == n && mu_star.cols() == spec.r3, "prior: mu_star has wrong dimension");
  check_spd(p1, spec.m1(), "P1");
  check_spd(p2, spec.m2(), "P2");
  require(p_star.rows() == spec.m3() && p_star.cols() == spec.m3(),
          "prior: P_star has wrong dimension");
  require((p_star - p_star.adjoint()).norm() <= kSymTol * std::max(1.0, p_star.norm()),
          "prior: P_star is not Hermitian");
  if (spec.m3() > 0) {
    Eigen::LLT<CMatrix> llt(p_star);
    require(llt.info() == Eigen::Success, "prior: P_star is not positive definite");
  }
  if (estimate_nu) {
    require(s_nu > 0.0 && n_nu > 0.0, "prior: s_nu and n_nu must be positive");
  } else {
    require(nu_fixed > 0.0, "prior: fixed nu must be positive");
  }
}

PriorHyper make_hyper(const ModelSpec& spec, const HyperSettings& st) {
  spec.validate();
  const int n = spec.n;
  PriorHyper h;
  h.S = st.s_scale * Matrix::Identity(n, n);
  h.q = n + st.q_offset;
  h.mu_gamma = Matrix::Zero(spec.gamma_rows(), n);
  h.omega_gamma = st.omega_scale * Matrix::Identity(spec.gamma_rows(), spec.gamma_rows());
  h.mu1 = Matrix::Zero(n, spec.r1);
  h.omega1 = st.omega_scale * Matrix::Identity(spec.r1, spec.r1);
  h.mu2 = Matrix::Zero(n, spec.r2);
  h.omega2 = st.omega_scale * Matrix::Identity(spec.r2, spec.r2);
  h.mu_star = CMatrix::Zero(n, spec.r3);
  h.p1 = st.p_scale * Matrix::Identity(spec.m1(), spec.m1());
  h.p2 = st.p_scale * Matrix::Identity(spec.m2(), spec.m2());
  h.p_star = st.p_scale * CMatrix::Identity(spec.m3(), spec.m3());
  h.estimate_nu = st.estimate_nu;
  h.nu_fixed = st.nu_fixed;
  h.s_nu = st.s_nu;
  h.n_nu = st.n_nu;
  return h;
}

LoadingsDraw sample_prior_loadings(const ModelSpec& spec, const PriorHyper& hyper, Rng& rng) {
  LoadingsDraw out;
  out.nu = hyper.estimate_nu ? sample_inverse_gamma(hyper.s_nu, hyper.n_nu, rng) : hyper.nu_fixed;
  const int m1 = spec.m1(), m2 = spec.m2(), m3 = spec.m3();
  out.b1 = spec.r1 > 0 ? matrix_normal_cols(Matrix::Zero(m1, spec.r1), hyper.p1,
                                            Matrix::Identity(spec.r1, spec.r1) / m1, rng)
                       : Matrix::Zero(m1, 0);
  out.b2 = spec.r2 > 0 ? matrix_normal_cols(Matrix::Zero(m2, spec.r2), hyper.p2,
                                            Matrix::Identity(spec.r2, spec.r2) / m2, rng)
                       : Matrix::Zero(m2, 0);
  if (spec.r3 > 0) {
    const Matrix cov = stacked_loading_covariance(hyper.p_star, m3);
    const Matrix stacked = matrix_normal_cols(Matrix::Zero(2 * m3, spec.r3), cov,
                                              Matrix::Identity(spec.r3, spec.r3), rng);
    out.b_r = stacked.topRows(m3);
    out.b_i = stacked.bottomRows(m3);
  } else {
    out.b_r = Matrix::Zero(m3, 0);
    out.b_i = Matrix::Zero(m3, 0);
  }
  return out;
}

ParamState sample_prior_state(const ModelSpec& spec, const PriorHyper& hyper, Rng& rng) {
  hyper.validate(spec);
  ParamState s = zero_state(spec);
  s.sigma = sample_inverse_wishart(hyper.S, hyper.q, rng);
  LoadingsDraw b = sample_prior_loadings(spec, hyper, rng);
  s.nu = b.nu;
  s.b1 = std::move(b.b1);
  s.b2 = std::move(b.b2);
  s.b_r = std::move(b.b_r);
  s.b_i = std::move(b.b_i);

  if (spec.gamma_rows() > 0)
    s.gamma = matrix_normal_cols(hyper.mu_gamma, s.nu * hyper.omega_gamma, s.sigma, rng);
  if (spec.r1 > 0) s.a1 = matrix_normal_cols(hyper.mu1, s.sigma, s.nu * hyper.omega1, rng);
  if (spec.r2 > 0) s.a2 = matrix_normal_cols(hyper.mu2, s.sigma, s.nu * hyper.omega2, rng);
  if (spec.r3 > 0) {
    const Matrix half_sigma = 0.5 * s.sigma;
    const Matrix col = s.nu * Matrix::Identity(spec.r3, spec.r3);
    s.a_r = matrix_normal_cols(hyper.mu_star.real(), half_sigma, col, rng);
    s.a_i = matrix_normal_cols(hyper.mu_star.imag(), half_sigma, col, rng);
  }
  refresh_normalized(s, spec);
  return s;
}

double log_prior_density_B_nu(const ParamState& state, const ModelSpec& spec,
                              const PriorHyper& hyper) {
  check_dimensions(state, spec);
  double out = 0.0;
  if (spec.r1 > 0)
    out += matrix_normal_log_density(state.b1, hyper.p1,
                                     Matrix::Identity(spec.r1, spec.r1) / spec.m1());
  if (spec.r2 > 0)
    out += matrix_normal_log_density(state.b2, hyper.p2,
                                     Matrix::Identity(spec.r2, spec.r2) / spec.m2());
  if (spec.r3 > 0) {
    const int m3 = spec.m3();
    Matrix stacked(2 * m3, spec.r3);
    stacked << state.b_r, state.b_i;
    out += matrix_normal_log_density(stacked, stacked_loading_covariance(hyper.p_star, m3),
                                     Matrix::Identity(spec.r3, spec.r3));
  }
  if (hyper.estimate_nu) {
    require(state.nu > 0.0, "log prior: nu must be positive");
    out += hyper.n_nu * std::log(hyper.s_nu) - std::lgamma(hyper.n_nu) -
           (hyper.n_nu + 1.0) * std::log(state.nu) - hyper.s_nu / state.nu;
  }
  return out;
}

}  // namespace sbvecm
