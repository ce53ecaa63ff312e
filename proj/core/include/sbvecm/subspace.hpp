#pragma once

#include <span>
#include <vector>

#include "sbvecm/types.hpp"

namespace sbvecm {

// Running average of the projectors beta beta^H over posterior draws.
class ProjectorAccumulator {
 public:
  explicit ProjectorAccumulator(int m = 0, int r = 0);

  void add(const Matrix& beta);
  void add(const CMatrix& beta);

  long count() const { return count_; }
  int rank() const { return r_; }
  int dim() const { return m_; }
  CMatrix mean() const;

 private:
  int m_ = 0;
  int r_ = 0;
  long count_ = 0;
  CMatrix sum_;
};

CMatrix mean_projector(std::span<const CMatrix> draws);
CMatrix mean_projector(std::span<const Matrix> draws);

struct PointEstimate {
  CMatrix beta;
  Vector eigenvalues;  // descending
  bool tie_at_rank = false;
};

// Eigenvectors of the r largest eigenvalues, each column rotated so its
// largest-modulus entry is real and positive.
PointEstimate point_estimate(const CMatrix& mean_proj, int r);

// (r - sum of the top r eigenvalues) / (r (m - r) / m); round-off below 1e-12
// is reported as exactly 0.
double span_variation(const Vector& eigenvalues, int r, int m);

// ||P_a - P_b||_F for the orthogonal projectors onto span(a), span(b).
double space_distance(const CMatrix& a, const CMatrix& b);
double space_distance(const Matrix& a, const Matrix& b);
// sqrt(2 (r - tr(P_a P_b))), the trace form of the same quantity.
double space_distance_trace(const CMatrix& a, const CMatrix& b);

struct SpaceSummary {
  CMatrix beta_hat;
  double tau2 = 0.0;
  Vector eigenvalues;
  bool tie_at_rank = false;
  long draws = 0;
};

SpaceSummary summarize_space(const ProjectorAccumulator& acc);

}  // namespace sbvecm
