#include "sbvecm/gibbs.hpp"

#include <cmath>
#include <sstream>

#include "sbvecm/errors.hpp"

namespace sbvecm {

namespace {

enum class Block { Gamma, Zero, Pi, Annual, AnnualReal, AnnualImag };

Matrix inverse_spd(const Matrix& a, const char* what) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + ": matrix is not positive definite");
  Matrix inv = llt.solve(Matrix::Identity(a.rows(), a.cols()));
  return 0.5 * (inv + inv.transpose());
}

// Coefficients with one block's contribution removed.
Matrix coefficients_without(const ParamState& state, const ModelSpec& spec, Block block) {
  ParamState s = state;
  switch (block) {
    case Block::Gamma: s.gamma.setZero(); break;
    case Block::Zero: s.a1.setZero(); break;
    case Block::Pi: s.a2.setZero(); break;
    case Block::Annual:
      s.a_r.setZero();
      s.a_i.setZero();
      break;
    case Block::AnnualReal: s.b_r.setZero(); break;
    case Block::AnnualImag: s.b_i.setZero(); break;
  }
  return regression_coefficients(s, spec);
}

// Z_block' (Z0 - Z_all C) for the rows [offset, offset + count).
Matrix residual_product(const CrossProducts& xp, const Matrix& c, int offset, int count) {
  return xp.gram.block(offset, xp.o0, count, xp.n) -
         xp.gram.block(offset, 0, count, xp.o0) * c;
}

Matrix draw_matrix_normal(const MatrixNormalParams& p, Rng& rng) {
  return sample_matrix_normal(p.mean, cholesky_lower(p.row_scale, "conditional row scale"),
                              cholesky_lower(p.col_scale, "conditional column scale"), rng);
}

// (P*)^{-1} = Q_R + i Q_I.
std::pair<Matrix, Matrix> complex_prior_precision(const CMatrix& p_star) {
  CMatrix q = p_star.llt().solve(CMatrix::Identity(p_star.rows(), p_star.cols()));
  q = 0.5 * (q + q.adjoint());
  return {q.real(), q.imag()};
}

void check_xp(const CrossProducts& xp, const ModelSpec& spec) {
  require(xp.n == spec.n && xp.m1 == spec.m1() && xp.m2 == spec.m2() && xp.m3 == spec.m3() &&
              xp.p4 == spec.gamma_rows(),
          "design dimensions do not match the model spec");
}

}  // namespace

Vector GaussianParams::mean() const { return precision.llt().solve(rhs); }

Matrix GaussianParams::covariance() const { return inverse_spd(precision, "gaussian covariance"); }

Matrix prior_quadratic(const ParamState& state, const ModelSpec& spec, const PriorHyper& hyper) {
  const int n = spec.n;
  Matrix q = Matrix::Zero(n, n);
  if (spec.gamma_rows() > 0) {
    const Matrix dg = state.gamma - hyper.mu_gamma;
    q += dg.transpose() * hyper.omega_gamma.llt().solve(dg);
  }
  if (spec.r1 > 0) {
    const Matrix da = state.a1 - hyper.mu1;
    q += da * hyper.omega1.llt().solve(da.transpose());
  }
  if (spec.r2 > 0) {
    const Matrix da = state.a2 - hyper.mu2;
    q += da * hyper.omega2.llt().solve(da.transpose());
  }
  if (spec.r3 > 0) {
    const Matrix dr = state.a_r - hyper.mu_star.real();
    const Matrix di = state.a_i - hyper.mu_star.imag();
    q += 2.0 * (dr * dr.transpose() + di * di.transpose());
  }
  return 0.5 * (q + q.transpose());
}

Matrix residual_cross_product(const ParamState& state, const CrossProducts& xp,
                              const ModelSpec& spec) {
  const Matrix c = regression_coefficients(state, spec);
  const Matrix zy = xp.z_y();
  Matrix e = Matrix(xp.yy()) - c.transpose() * zy - zy.transpose() * c +
             c.transpose() * xp.zz() * c;
  return 0.5 * (e + e.transpose());
}

InverseWishartParams sigma_conditional(const ParamState& state, const CrossProducts& xp,
                                       const ModelSpec& spec, const PriorHyper& hyper) {
  check_xp(xp, spec);
  InverseWishartParams p;
  p.scale = hyper.S + prior_quadratic(state, spec, hyper) / state.nu +
            residual_cross_product(state, xp, spec);
  p.scale = 0.5 * (p.scale + p.scale.transpose());
  p.dof = hyper.q + spec.scaled_rows() + xp.T;
  return p;
}

InverseGammaParams nu_conditional(const ParamState& state, const ModelSpec& spec,
                                  const PriorHyper& hyper) {
  if (!hyper.estimate_nu) throw std::logic_error("nu_conditional: nu is fixed in this prior");
  InverseGammaParams p;
  p.shape = hyper.n_nu + 0.5 * spec.n * spec.scaled_rows();
  const Matrix q = prior_quadratic(state, spec, hyper);
  p.scale = hyper.s_nu + 0.5 * state.sigma.llt().solve(q).trace();
  return p;
}

MatrixNormalParams gamma_conditional(const ParamState& state, const CrossProducts& xp,
                                     const ModelSpec& spec, const PriorHyper& hyper) {
  check_xp(xp, spec);
  const int p4 = spec.gamma_rows();
  const Matrix prior_prec = inverse_spd(hyper.omega_gamma, "Omega_gamma") / state.nu;
  MatrixNormalParams p;
  p.row_scale = inverse_spd(prior_prec + xp.gram.block(xp.o4, xp.o4, p4, p4), "Omega_bar_gamma");
  const Matrix c = coefficients_without(state, spec, Block::Gamma);
  p.mean = p.row_scale * (prior_prec * hyper.mu_gamma + residual_product(xp, c, xp.o4, p4));
  p.col_scale = state.sigma;
  return p;
}

MatrixNormalParams adjustment_conditional(Frequency freq, const ParamState& state,
                                          const CrossProducts& xp, const ModelSpec& spec,
                                          const PriorHyper& hyper) {
  check_xp(xp, spec);
  require(freq != Frequency::Annual, "adjustment_conditional: use the complex variant");
  const bool zero = freq == Frequency::Zero;
  const Matrix& b = zero ? state.b1 : state.b2;
  const Matrix& mu = zero ? hyper.mu1 : hyper.mu2;
  const Matrix& omega = zero ? hyper.omega1 : hyper.omega2;
  const int off = zero ? xp.o1 : xp.o2;
  const int m = zero ? xp.m1 : xp.m2;

  const Matrix prior_prec = inverse_spd(omega, "Omega_j") / state.nu;
  const Matrix gjj = xp.gram.block(off, off, m, m);
  MatrixNormalParams p;
  p.col_scale = inverse_spd(prior_prec + b.transpose() * gjj * b, "Omega_bar_j");
  const Matrix c = coefficients_without(state, spec, zero ? Block::Zero : Block::Pi);
  const Matrix zy = residual_product(xp, c, off, m);  // Z_j' Y
  p.mean = (mu * prior_prec + zy.transpose() * b) * p.col_scale;
  p.row_scale = state.sigma;
  return p;
}

namespace {

// X* = [Z31 Z32] W with the columns of A_R' then A_I'.
Matrix annual_weight(const ParamState& s, int m3, int r3) {
  Matrix w(2 * m3, 2 * r3);
  w.block(0, 0, m3, r3) = -2.0 * s.b_i;
  w.block(0, r3, m3, r3) = 2.0 * s.b_r;
  w.block(m3, 0, m3, r3) = -2.0 * s.b_r;
  w.block(m3, r3, m3, r3) = -2.0 * s.b_i;
  return w;
}

}  // namespace

MatrixNormalParams complex_adjustment_conditional(const ParamState& state, const CrossProducts& xp,
                                                  const ModelSpec& spec, const PriorHyper& hyper) {
  check_xp(xp, spec);
  const int r3 = spec.r3, m3 = xp.m3;
  const Matrix w = annual_weight(state, m3, r3);
  const Matrix gcc = xp.gram.block(xp.o31, xp.o31, 2 * m3, 2 * m3);
  const Matrix c = coefficients_without(state, spec, Block::Annual);
  const Matrix xy = w.transpose() * residual_product(xp, c, xp.o31, 2 * m3);

  Matrix mu_ri(2 * r3, spec.n);
  mu_ri << hyper.mu_star.real().transpose(), hyper.mu_star.imag().transpose();
  const double prior_prec = 2.0 / state.nu;

  MatrixNormalParams p;
  p.row_scale = inverse_spd(prior_prec * Matrix::Identity(2 * r3, 2 * r3) + w.transpose() * gcc * w,
                            "Omega_bar_RI");
  p.mean = p.row_scale * (prior_prec * mu_ri + xy);
  p.col_scale = state.sigma;
  return p;
}

GaussianParams loadings_conditional(Frequency freq, const ParamState& state,
                                    const CrossProducts& xp, const ModelSpec& spec,
                                    const PriorHyper& hyper) {
  check_xp(xp, spec);
  require(freq != Frequency::Annual, "loadings_conditional: use the complex variants");
  const bool zero = freq == Frequency::Zero;
  const Matrix& a = zero ? state.a1 : state.a2;
  const Matrix& pj = zero ? hyper.p1 : hyper.p2;
  const int off = zero ? xp.o1 : xp.o2;
  const int m = zero ? xp.m1 : xp.m2;
  const int r = static_cast<int>(a.cols());

  const Eigen::LLT<Matrix> sigma_llt(state.sigma);
  const Matrix sia = sigma_llt.solve(a);  // Sigma^{-1} A
  const Matrix gjj = xp.gram.block(off, off, m, m);
  GaussianParams p;
  p.precision = kron(static_cast<double>(m) * Matrix::Identity(r, r), inverse_spd(pj, "P_j")) +
                kron(a.transpose() * sia, gjj);
  const Matrix c = coefficients_without(state, spec, zero ? Block::Zero : Block::Pi);
  p.rhs = vec(residual_product(xp, c, off, m) * sia);
  return p;
}

GaussianParams complex_loadings_real_conditional(const ParamState& state, const CrossProducts& xp,
                                                 const ModelSpec& spec, const PriorHyper& hyper) {
  check_xp(xp, spec);
  const int m3 = xp.m3, r3 = spec.r3;
  const auto [qr, qi] = complex_prior_precision(hyper.p_star);
  const Eigen::LLT<Matrix> sigma_llt(state.sigma);
  const Matrix si_ar = sigma_llt.solve(state.a_r);
  const Matrix si_ai = sigma_llt.solve(state.a_i);
  const Matrix g11 = xp.gram.block(xp.o31, xp.o31, m3, m3);
  const Matrix g12 = xp.gram.block(xp.o31, xp.o32, m3, m3);
  const Matrix g21 = xp.gram.block(xp.o32, xp.o31, m3, m3);
  const Matrix g22 = xp.gram.block(xp.o32, xp.o32, m3, m3);

  GaussianParams p;
  p.precision = 4.0 * (kron(state.a_i.transpose() * si_ai, g11) -
                       kron(state.a_i.transpose() * si_ar, g12) -
                       kron(state.a_r.transpose() * si_ai, g21) +
                       kron(state.a_r.transpose() * si_ar, g22)) +
                kron(Matrix::Identity(r3, r3), 2.0 * m3 * qr);
  const Matrix c = coefficients_without(state, spec, Block::AnnualReal);
  const Matrix z31y = residual_product(xp, c, xp.o31, m3);
  const Matrix z32y = residual_product(xp, c, xp.o32, m3);
  p.rhs = vec(2.0 * (z31y * si_ai - z32y * si_ar) + 2.0 * m3 * qi * state.b_i);
  return p;
}

GaussianParams complex_loadings_imag_conditional(const ParamState& state, const CrossProducts& xp,
                                                 const ModelSpec& spec, const PriorHyper& hyper) {
  check_xp(xp, spec);
  const int m3 = xp.m3, r3 = spec.r3;
  const auto [qr, qi] = complex_prior_precision(hyper.p_star);
  const Eigen::LLT<Matrix> sigma_llt(state.sigma);
  const Matrix si_ar = sigma_llt.solve(state.a_r);
  const Matrix si_ai = sigma_llt.solve(state.a_i);
  const Matrix g11 = xp.gram.block(xp.o31, xp.o31, m3, m3);
  const Matrix g12 = xp.gram.block(xp.o31, xp.o32, m3, m3);
  const Matrix g21 = xp.gram.block(xp.o32, xp.o31, m3, m3);
  const Matrix g22 = xp.gram.block(xp.o32, xp.o32, m3, m3);

  GaussianParams p;
  p.precision = 4.0 * (kron(state.a_r.transpose() * si_ar, g11) +
                       kron(state.a_r.transpose() * si_ai, g12) +
                       kron(state.a_i.transpose() * si_ar, g21) +
                       kron(state.a_i.transpose() * si_ai, g22)) +
                kron(Matrix::Identity(r3, r3), 2.0 * m3 * qr);
  const Matrix c = coefficients_without(state, spec, Block::AnnualImag);
  const Matrix z31y = residual_product(xp, c, xp.o31, m3);
  const Matrix z32y = residual_product(xp, c, xp.o32, m3);
  p.rhs = vec(-2.0 * (z31y * si_ar + z32y * si_ai) - 2.0 * m3 * qi * state.b_r);
  return p;
}

Matrix draw_sigma(const ParamState& state, const CrossProducts& xp, const ModelSpec& spec,
                  const PriorHyper& hyper, Rng& rng) {
  const InverseWishartParams p = sigma_conditional(state, xp, spec, hyper);
  Eigen::LLT<Matrix> llt(p.scale);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.scale);
    std::ostringstream os;
    os << "draw_sigma: posterior scale is not positive definite (eigenvalues "
       << es.eigenvalues().transpose() << ")";
    throw NumericalError(os.str());
  }
  return sample_inverse_wishart(p.scale, p.dof, rng);
}

double draw_nu(const ParamState& state, const ModelSpec& spec, const PriorHyper& hyper, Rng& rng) {
  const InverseGammaParams p = nu_conditional(state, spec, hyper);
  return sample_inverse_gamma(p.scale, p.shape, rng);
}

Matrix draw_gamma(const ParamState& state, const CrossProducts& xp, const ModelSpec& spec,
                  const PriorHyper& hyper, Rng& rng) {
  if (spec.gamma_rows() == 0) return Matrix::Zero(0, spec.n);
  return draw_matrix_normal(gamma_conditional(state, xp, spec, hyper), rng);
}

Matrix draw_adjustment_real(Frequency freq, const ParamState& state, const CrossProducts& xp,
                            const ModelSpec& spec, const PriorHyper& hyper, Rng& rng) {
  if (spec.rank(freq) == 0) return Matrix::Zero(spec.n, 0);
  return draw_matrix_normal(adjustment_conditional(freq, state, xp, spec, hyper), rng);
}

std::pair<Matrix, Matrix> draw_adjustment_complex(const ParamState& state, const CrossProducts& xp,
                                                  const ModelSpec& spec, const PriorHyper& hyper,
                                                  Rng& rng) {
  const int r3 = spec.r3;
  if (r3 == 0) return {Matrix::Zero(spec.n, 0), Matrix::Zero(spec.n, 0)};
  const Matrix ari = draw_matrix_normal(complex_adjustment_conditional(state, xp, spec, hyper), rng);
  return {ari.topRows(r3).transpose(), ari.bottomRows(r3).transpose()};
}

Matrix draw_loadings_real(Frequency freq, const ParamState& state, const CrossProducts& xp,
                          const ModelSpec& spec, const PriorHyper& hyper, Rng& rng) {
  const int r = spec.rank(freq), m = spec.dim(freq);
  if (r == 0) return Matrix::Zero(m, 0);
  const GaussianParams p = loadings_conditional(freq, state, xp, spec, hyper);
  return unvec(sample_gaussian_canonical(p.precision, p.rhs, rng), m, r);
}

Matrix draw_loadings_complex_real_part(const ParamState& state, const CrossProducts& xp,
                                       const ModelSpec& spec, const PriorHyper& hyper, Rng& rng) {
  if (spec.r3 == 0) return Matrix::Zero(spec.m3(), 0);
  const GaussianParams p = complex_loadings_real_conditional(state, xp, spec, hyper);
  return unvec(sample_gaussian_canonical(p.precision, p.rhs, rng), spec.m3(), spec.r3);
}

Matrix draw_loadings_complex_imag_part(const ParamState& state, const CrossProducts& xp,
                                       const ModelSpec& spec, const PriorHyper& hyper, Rng& rng) {
  if (spec.r3 == 0) return Matrix::Zero(spec.m3(), 0);
  const GaussianParams p = complex_loadings_imag_conditional(state, xp, spec, hyper);
  return unvec(sample_gaussian_canonical(p.precision, p.rhs, rng), spec.m3(), spec.r3);
}

std::pair<Matrix, Matrix> normalize_pair(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "normalize_pair: A and B must have the same column count");
  if (b.cols() == 0) return {a, b};
  const Matrix btb = b.transpose() * b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(btb);
  if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 1e-14 * es.eigenvalues().maxCoeff()))
    throw NumericalError("normalize_pair: B is rank deficient");
  const Vector root = es.eigenvalues().cwiseSqrt();
  const Matrix& v = es.eigenvectors();
  const Matrix sqrt_m = v * root.asDiagonal() * v.transpose();
  const Matrix inv_sqrt_m = v * root.cwiseInverse().asDiagonal() * v.transpose();
  return {a * sqrt_m, b * inv_sqrt_m};
}

std::pair<CMatrix, CMatrix> normalize_pair(const CMatrix& a, const CMatrix& b) {
  require(a.cols() == b.cols(), "normalize_pair: A and B must have the same column count");
  if (b.cols() == 0) return {a, b};
  CMatrix bhb = b.adjoint() * b;
  bhb = 0.5 * (bhb + bhb.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(bhb, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 1e-14 * es.eigenvalues().maxCoeff()))
    throw NumericalError("normalize_pair: B is rank deficient");
  const CMatrix root = hermitian_sqrt_robust(bhb);
  return {a * root, b * root.partialPivLu().inverse()};
}

void refresh_normalized(ParamState& state, const ModelSpec& spec) {
  if (spec.r1 > 0) std::tie(state.alpha1, state.beta1) = normalize_pair(state.a1, state.b1);
  else {
    state.alpha1 = state.a1;
    state.beta1 = state.b1;
  }
  if (spec.r2 > 0) std::tie(state.alpha2, state.beta2) = normalize_pair(state.a2, state.b2);
  else {
    state.alpha2 = state.a2;
    state.beta2 = state.b2;
  }
  if (spec.r3 > 0) {
    std::tie(state.alpha_star, state.beta_star) = normalize_pair(state.a_star(), state.b_star());
  } else {
    state.alpha_star = CMatrix::Zero(spec.n, 0);
    state.beta_star = CMatrix::Zero(spec.m3(), 0);
  }
}

ParamState gibbs_sweep(const ParamState& state, const CrossProducts& xp, const ModelSpec& spec,
                       const PriorHyper& hyper, Rng& rng) {
  ParamState s = state;
  s.sigma = draw_sigma(s, xp, spec, hyper, rng);
  if (hyper.estimate_nu) s.nu = draw_nu(s, spec, hyper, rng);
  else s.nu = hyper.nu_fixed;
  if (spec.gamma_rows() > 0) s.gamma = draw_gamma(s, xp, spec, hyper, rng);
  if (spec.r1 > 0) {
    s.a1 = draw_adjustment_real(Frequency::Zero, s, xp, spec, hyper, rng);
    s.b1 = draw_loadings_real(Frequency::Zero, s, xp, spec, hyper, rng);
    std::tie(s.alpha1, s.beta1) = normalize_pair(s.a1, s.b1);
  }
  if (spec.r2 > 0) {
    s.a2 = draw_adjustment_real(Frequency::Pi, s, xp, spec, hyper, rng);
    s.b2 = draw_loadings_real(Frequency::Pi, s, xp, spec, hyper, rng);
    std::tie(s.alpha2, s.beta2) = normalize_pair(s.a2, s.b2);
  }
  if (spec.r3 > 0) {
    std::tie(s.a_r, s.a_i) = draw_adjustment_complex(s, xp, spec, hyper, rng);
    s.b_r = draw_loadings_complex_real_part(s, xp, spec, hyper, rng);
    s.b_i = draw_loadings_complex_imag_part(s, xp, spec, hyper, rng);
    std::tie(s.alpha_star, s.beta_star) = normalize_pair(s.a_star(), s.b_star());
  }
  return s;
}

ParamState initial_state(const CrossProducts& xp, const ModelSpec& spec, const PriorHyper& hyper) {
  check_xp(xp, spec);
  hyper.validate(spec);
  ParamState s = zero_state(spec);
  s.sigma = (Matrix(xp.yy()) + hyper.S) / std::max(1, xp.T);
  s.nu = hyper.estimate_nu ? hyper.s_nu / (hyper.n_nu + 1.0) : hyper.nu_fixed;
  s.b1 = Matrix::Identity(spec.m1(), spec.r1);
  s.b2 = Matrix::Identity(spec.m2(), spec.r2);
  s.b_r = Matrix::Identity(spec.m3(), spec.r3);
  refresh_normalized(s, spec);
  return s;
}

ChainOutput run_chain(const CrossProducts& xp, const ModelSpec& spec, const PriorHyper& hyper,
                      const ChainConfig& cfg, const DrawVisitor& visit) {
  require(cfg.burn_in >= 0 && cfg.keep >= 0 && cfg.thin >= 1, "run_chain: invalid chain lengths");
  require(cfg.max_attempts >= 1, "run_chain: max_attempts must be positive");
  Rng rng(cfg.seed);
  ChainOutput out;
  out.seed = cfg.seed;

  ParamState current = initial_state(xp, spec, hyper);
  const long needed = cfg.burn_in + cfg.keep * cfg.thin;
  long accepted_total = 0;
  while (accepted_total < needed) {
    ParamState candidate = gibbs_sweep(current, xp, spec, hyper, rng);
    ++out.attempted;
    bool ok = true;
    if (cfg.check_stability) {
      const StabilityReport rep = stability_check(build_companion(candidate, spec), spec,
                                                  cfg.tol_unit, cfg.tol_explosive);
      ok = rep.is_admissible;
    }
    if (ok) {
      current = std::move(candidate);
      ++accepted_total;
      if (accepted_total > cfg.burn_in && (accepted_total - cfg.burn_in) % cfg.thin == 0) {
        if (visit) visit(current);
      }
    }
    if (out.attempted % cfg.max_attempts == 0) {
      const double rate = static_cast<double>(accepted_total) / static_cast<double>(out.attempted);
      if (rate < cfg.min_acceptance) {
        std::ostringstream os;
        os << "run_chain: acceptance rate " << rate << " below " << cfg.min_acceptance << " after "
           << out.attempted << " sweeps (" << accepted_total << " accepted) for " << spec.label();
        throw ChainAbort(os.str(), out.attempted, accepted_total);
      }
    }
  }
  out.accepted = accepted_total;
  return out;
}

ChainOutput run_chain(const QuarterlySeries& y, const ModelSpec& spec, const PriorHyper& hyper,
                      const ChainConfig& cfg) {
  const CrossProducts xp = cross_products(build_design(y, spec));
  std::vector<ParamState> draws;
  draws.reserve(static_cast<std::size_t>(cfg.keep));
  ChainOutput out = run_chain(xp, spec, hyper, cfg,
                              [&](const ParamState& s) { draws.push_back(s); });
  out.draws = std::move(draws);
  return out;
}

double effective_sample_size(std::span<const double> trace) {
  const std::size_t n = trace.size();
  if (n < 4) return static_cast<double>(n);
  double mean = 0.0;
  for (double v : trace) mean += v;
  mean /= static_cast<double>(n);
  auto autocov = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += (trace[i] - mean) * (trace[i + lag] - mean);
    return acc / static_cast<double>(n);
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return static_cast<double>(n);
  // Geyer: sum consecutive pairs while they stay positive and non-increasing
  double tau = -1.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (std::size_t lag = 0; lag + 1 < n; lag += 2) {
    double pair = (autocov(lag) + autocov(lag + 1)) / c0;
    if (pair <= 0.0) break;
    pair = std::min(pair, prev_pair);
    tau += 2.0 * pair;
    prev_pair = pair;
  }
  return static_cast<double>(n) / std::max(tau, 1e-12);
}

}  // namespace sbvecm
