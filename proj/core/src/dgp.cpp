#include "sbvecm/dgp.hpp"

#include <cmath>

#include "sbvecm/errors.hpp"
#include "sbvecm/gibbs.hpp"

namespace sbvecm {

namespace {

// Lower Cholesky factor, or the symmetric root for a singular covariance.
Matrix innovation_factor(const Matrix& sigma) {
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

DgpConfig DgpConfig::reference() {
  DgpConfig c;
  c.b1 = (Matrix(2, 1) << 1.0, -1.0).finished();
  c.a1 = (Matrix(2, 1) << -0.2, 0.0).finished();
  c.b2 = (Matrix(2, 1) << 1.0, -1.0).finished();
  c.a2 = (Matrix(2, 1) << 0.2, 0.0).finished();
  c.b_star = CMatrix(2, 1);
  c.b_star << Complex(1.0, 0.0), Complex(0.0, 1.0);
  c.a_star = CMatrix(2, 1);
  c.a_star << Complex(0.0, 0.1), Complex(0.0, 0.0);
  c.gamma = {(Matrix(2, 2) << 0.1, -0.1, -0.2, 0.17).finished()};
  const double off = -std::sqrt(2.0) / 4.0;
  c.sigma = (Matrix(2, 2) << 1.0, off, off, 0.5).finished();
  return c;
}

void DgpConfig::validate() const {
  const int nn = n();
  require(nn >= 1 && sigma.cols() == nn, "dgp: sigma must be square");
  require((sigma - sigma.transpose()).norm() <= 1e-12 * std::max(1.0, sigma.norm()),
          "dgp: sigma must be symmetric");
  require(Eigen::SelfAdjointEigenSolver<Matrix>(sigma, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() >=
              -1e-12 * std::max(1.0, sigma.norm()),
          "dgp: sigma must be positive semidefinite");
  require(a1.rows() == nn && b1.rows() == nn && a1.cols() == b1.cols(),
          "dgp: A1 and B1 must be n x r1");
  require(a2.rows() == nn && b2.rows() == nn && a2.cols() == b2.cols(),
          "dgp: A2 and B2 must be n x r2");
  require(a_star.rows() == nn && b_star.rows() == nn && a_star.cols() == b_star.cols(),
          "dgp: A* and B* must be n x r3");
  for (const auto& g : gamma)
    require(g.rows() == nn && g.cols() == nn, "dgp: short-run matrices must be n x n");
  require(total >= 1 && discard >= 0 && discard < total, "dgp: need 0 <= discard < total");
  require(total >= 4 + static_cast<int>(gamma.size()), "dgp: total must cover the initial values");
}

ModelSpec DgpConfig::spec() const {
  ModelSpec s;
  s.n = n();
  s.k = 4 + static_cast<int>(gamma.size());
  s.d = 4;
  s.s = 0;
  s.r1 = static_cast<int>(b1.cols());
  s.r2 = static_cast<int>(b2.cols());
  s.r3 = static_cast<int>(b_star.cols());
  return s;
}

ParamState DgpConfig::state() const {
  const ModelSpec sp = spec();
  ParamState st = zero_state(sp);
  st.sigma = sigma;
  st.a1 = a1;
  st.b1 = b1;
  st.a2 = a2;
  st.b2 = b2;
  st.a_r = a_star.real();
  st.a_i = a_star.imag();
  st.b_r = b_star.real();
  st.b_i = b_star.imag();
  for (std::size_t i = 0; i < gamma.size(); ++i)
    st.gamma.middleRows(static_cast<Eigen::Index>(i) * sp.n, sp.n) = gamma[i].transpose();
  refresh_normalized(st, sp);
  return st;
}

Matrix simulate_vecm_path(const ParamState& state, const ModelSpec& spec, const Matrix& presample,
                          const Matrix& innovations) {
  const int n = spec.n, k = spec.k;
  require(presample.rows() == k && presample.cols() == n, "simulate: presample must be k x n");
  require(innovations.cols() == n, "simulate: innovations must have n columns");
  const Matrix c = regression_coefficients(state, spec);
  const Eigen::Index steps = innovations.rows();
  Matrix y = Matrix::Zero(k + steps, n);
  y.topRows(k) = presample;
  for (Eigen::Index j = 0; j < steps; ++j) {
    const int t = k + 1 + static_cast<int>(j);
    const Vector x = regressor_row(y, spec, t);
    const Vector d4 = c.transpose() * x + innovations.row(j).transpose();
    y.row(t - 1) = y.row(t - 5) + d4.transpose();
  }
  return y;
}

Matrix simulate_levels_path(const std::vector<Matrix>& lags, const Matrix& presample,
                            const Matrix& innovations) {
  require(!lags.empty(), "simulate: need lag matrices");
  const Eigen::Index k = static_cast<Eigen::Index>(lags.size());
  const Eigen::Index n = lags.front().rows();
  require(presample.rows() == k && presample.cols() == n, "simulate: presample must be k x n");
  const Eigen::Index steps = innovations.rows();
  Matrix y = Matrix::Zero(k + steps, n);
  y.topRows(k) = presample;
  for (Eigen::Index j = 0; j < steps; ++j) {
    const Eigen::Index row = k + j;
    Vector yt = innovations.row(j).transpose();
    for (Eigen::Index i = 1; i <= k; ++i) yt += lags[i - 1] * y.row(row - i).transpose();
    y.row(row) = yt.transpose();
  }
  return y;
}

SimulationResult simulate(const DgpConfig& cfg, Rng& rng) {
  cfg.validate();
  const ModelSpec spec = cfg.spec();
  const ParamState st = cfg.state();
  SimulationResult out;
  out.stability = stability_check(build_companion(st, spec), spec);
  out.explosive = out.stability.max_non_unit_modulus > 1.0 + kTolExplosive;
  for (double m : out.stability.eigen_moduli)
    if (m > 1.0 + kTolUnit) out.explosive = true;

  const int steps = std::max(0, cfg.total - spec.k);
  const Matrix l = innovation_factor(cfg.sigma);
  const Matrix innovations = standard_normal(steps, spec.n, rng) * l.transpose();
  const Matrix path =
      simulate_vecm_path(st, spec, Matrix::Zero(spec.k, spec.n), innovations);

  out.series.values = path.bottomRows(cfg.total - cfg.discard);
  for (int i = 0; i < spec.n; ++i) out.series.names.push_back("y" + std::to_string(i + 1));
  // keep calendar labels aligned with the discarded prefix
  const int offset = cfg.discard + out.series.start_quarter - 1;
  out.series.start_year += offset / 4;
  out.series.start_quarter = offset % 4 + 1;
  return out;
}

SimulationResult simulate(const DgpConfig& cfg) {
  Rng rng(cfg.seed);
  return simulate(cfg, rng);
}

QuarterlySeries simulate_from_state(const ParamState& state, const ModelSpec& spec, int T,
                                    Rng& rng) {
  require(T >= 1, "simulate_from_state: T must be positive");
  const Matrix l = cholesky_lower(state.sigma, "simulation sigma");
  const Matrix innovations = standard_normal(T, spec.n, rng) * l.transpose();
  QuarterlySeries y;
  y.values = simulate_vecm_path(state, spec, Matrix::Zero(spec.k, spec.n), innovations);
  for (int i = 0; i < spec.n; ++i) y.names.push_back("y" + std::to_string(i + 1));
  return y;
}

}  // namespace sbvecm
