#include "sbvecm/subspace.hpp"

#include <cmath>
#include <limits>

#include "sbvecm/errors.hpp"

namespace sbvecm {

namespace {

constexpr double kOrthoTol = 1e-8;
constexpr double kTieTol = 1e-12;
constexpr double kDegenerateTol = 1e-12;

void check_orthonormal(const CMatrix& b) {
  const CMatrix g = b.adjoint() * b;
  const double off = (g - CMatrix::Identity(b.cols(), b.cols())).norm();
  require(off <= kOrthoTol * std::max<double>(1.0, static_cast<double>(b.cols())),
          "subspace: draw does not have orthonormal columns");
}

CMatrix projector(const CMatrix& b) { return b * b.adjoint(); }

}  // namespace

ProjectorAccumulator::ProjectorAccumulator(int m, int r)
    : m_(m), r_(r), sum_(CMatrix::Zero(m, m)) {
  require(m >= 0 && r >= 0 && r <= m, "ProjectorAccumulator: need 0 <= r <= m");
}

void ProjectorAccumulator::add(const Matrix& beta) { add(CMatrix(beta.cast<Complex>())); }

void ProjectorAccumulator::add(const CMatrix& beta) {
  require(beta.rows() == m_ && beta.cols() == r_, "ProjectorAccumulator: mixed draw dimensions");
  check_orthonormal(beta);
  sum_ += projector(beta);
  ++count_;
}

CMatrix ProjectorAccumulator::mean() const {
  require(count_ > 0, "mean_projector: no draws");
  CMatrix p = sum_ / static_cast<double>(count_);
  return 0.5 * (p + p.adjoint());
}

CMatrix mean_projector(std::span<const CMatrix> draws) {
  require(!draws.empty(), "mean_projector: no draws");
  ProjectorAccumulator acc(static_cast<int>(draws[0].rows()), static_cast<int>(draws[0].cols()));
  for (const auto& b : draws) acc.add(b);
  return acc.mean();
}

CMatrix mean_projector(std::span<const Matrix> draws) {
  require(!draws.empty(), "mean_projector: no draws");
  ProjectorAccumulator acc(static_cast<int>(draws[0].rows()), static_cast<int>(draws[0].cols()));
  for (const auto& b : draws) acc.add(b);
  return acc.mean();
}

PointEstimate point_estimate(const CMatrix& mean_proj, int r) {
  const int m = static_cast<int>(mean_proj.rows());
  require(mean_proj.cols() == m, "point_estimate: mean projector must be square");
  require(r >= 0 && r <= m, "point_estimate: need 0 <= r <= m");
  PointEstimate out;
  const CMatrix h = 0.5 * (mean_proj + mean_proj.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  out.eigenvalues = es.eigenvalues().reverse();
  out.beta = es.eigenvectors().rowwise().reverse().leftCols(r);
  for (int j = 0; j < r; ++j) {
    Eigen::Index idx = 0;
    out.beta.col(j).cwiseAbs().maxCoeff(&idx);
    const Complex pivot = out.beta(idx, j);
    out.beta.col(j) *= std::conj(pivot) / std::abs(pivot);
    out.beta(idx, j) = std::abs(out.beta(idx, j));
  }
  if (r > 0 && r < m) out.tie_at_rank = out.eigenvalues(r - 1) - out.eigenvalues(r) <= kTieTol;
  return out;
}

double span_variation(const Vector& eigenvalues, int r, int m) {
  require(r > 0 && r < m, "span_variation: undefined unless 0 < r < m");
  require(eigenvalues.size() >= r, "span_variation: too few eigenvalues");
  const double top = eigenvalues.head(r).sum();
  const double tau2 = (r - top) / (static_cast<double>(r) * (m - r) / m);
  return std::abs(tau2) <= kDegenerateTol ? 0.0 : tau2;
}

double space_distance(const CMatrix& a, const CMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "space_distance: dimension mismatch");
  return (projector(a) - projector(b)).norm();
}

double space_distance(const Matrix& a, const Matrix& b) {
  return space_distance(CMatrix(a.cast<Complex>()), CMatrix(b.cast<Complex>()));
}

double space_distance_trace(const CMatrix& a, const CMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "space_distance: dimension mismatch");
  const double tr = (a.adjoint() * b).squaredNorm();  // tr(P_a P_b)
  return std::sqrt(std::max(0.0, 2.0 * (static_cast<double>(a.cols()) - tr)));
}

SpaceSummary summarize_space(const ProjectorAccumulator& acc) {
  SpaceSummary s;
  const PointEstimate pe = point_estimate(acc.mean(), acc.rank());
  s.beta_hat = pe.beta;
  s.eigenvalues = pe.eigenvalues;
  s.tie_at_rank = pe.tie_at_rank;
  s.draws = acc.count();
  s.tau2 = (acc.rank() > 0 && acc.rank() < acc.dim())
               ? span_variation(pe.eigenvalues, acc.rank(), acc.dim())
               : std::numeric_limits<double>::quiet_NaN();
  return s;
}

}  // namespace sbvecm
