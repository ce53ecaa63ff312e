#include "sbvecm/state.hpp"

#include <string>

#include "sbvecm/errors.hpp"

namespace sbvecm {

CMatrix ParamState::a_star() const {
  CMatrix out(a_r.rows(), a_r.cols());
  out.real() = a_r;
  out.imag() = a_i;
  return out;
}

CMatrix ParamState::b_star() const {
  CMatrix out(b_r.rows(), b_r.cols());
  out.real() = b_r;
  out.imag() = b_i;
  return out;
}

ParamState zero_state(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.n;
  ParamState s;
  s.sigma = Matrix::Identity(n, n);
  s.nu = 1.0;
  s.gamma = Matrix::Zero(spec.gamma_rows(), n);
  s.a1 = Matrix::Zero(n, spec.r1);
  s.b1 = Matrix::Zero(spec.m1(), spec.r1);
  s.a2 = Matrix::Zero(n, spec.r2);
  s.b2 = Matrix::Zero(spec.m2(), spec.r2);
  s.a_r = Matrix::Zero(n, spec.r3);
  s.a_i = Matrix::Zero(n, spec.r3);
  s.b_r = Matrix::Zero(spec.m3(), spec.r3);
  s.b_i = Matrix::Zero(spec.m3(), spec.r3);
  s.alpha1 = s.a1;
  s.beta1 = s.b1;
  s.alpha2 = s.a2;
  s.beta2 = s.b2;
  s.alpha_star = CMatrix::Zero(n, spec.r3);
  s.beta_star = CMatrix::Zero(spec.m3(), spec.r3);
  return s;
}

namespace {

void expect_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols)
    throw ValidationError(std::string("state block ") + name + " has shape " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

void check_dimensions(const ParamState& state, const ModelSpec& spec) {
  const int n = spec.n;
  expect_shape(state.sigma, n, n, "Sigma");
  expect_shape(state.gamma, spec.gamma_rows(), n, "Gamma");
  expect_shape(state.a1, n, spec.r1, "A1");
  expect_shape(state.b1, spec.m1(), spec.r1, "B1");
  expect_shape(state.a2, n, spec.r2, "A2");
  expect_shape(state.b2, spec.m2(), spec.r2, "B2");
  expect_shape(state.a_r, n, spec.r3, "A_R");
  expect_shape(state.a_i, n, spec.r3, "A_I");
  expect_shape(state.b_r, spec.m3(), spec.r3, "B_R");
  expect_shape(state.b_i, spec.m3(), spec.r3, "B_I");
}

Matrix regression_coefficients(const ParamState& state, const ModelSpec& spec) {
  const int n = spec.n;
  const int m1 = spec.m1(), m2 = spec.m2(), m3 = spec.m3();
  const int p4 = spec.gamma_rows();
  Matrix c = Matrix::Zero(m1 + m2 + 2 * m3 + p4, n);
  if (spec.r1 > 0) c.middleRows(0, m1) = state.b1 * state.a1.transpose();
  if (spec.r2 > 0) c.middleRows(m1, m2) = state.b2 * state.a2.transpose();
  if (spec.r3 > 0) {
    // 2 Re(Z3 conj(B*) A*') with Z3 = -Z32 - i Z31
    c.middleRows(m1 + m2, m3) =
        2.0 * (state.b_r * state.a_i.transpose() - state.b_i * state.a_r.transpose());
    c.middleRows(m1 + m2 + m3, m3) =
        -2.0 * (state.b_r * state.a_r.transpose() + state.b_i * state.a_i.transpose());
  }
  if (p4 > 0) c.bottomRows(p4) = state.gamma;
  return c;
}

LongRunMatrices long_run_matrices(const ParamState& state, const ModelSpec& spec) {
  const int n = spec.n;
  LongRunMatrices pi{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n),
                     Matrix::Zero(n, n)};
  if (spec.r1 > 0) pi.pi1 = state.a1 * state.b1.topRows(n).transpose();
  if (spec.r2 > 0) pi.pi2 = state.a2 * state.b2.topRows(n).transpose();
  if (spec.r3 > 0) {
    const auto br = state.b_r.topRows(n);
    const auto bi = state.b_i.topRows(n);
    pi.pi3 = -2.0 * (state.a_r * br.transpose() + state.a_i * bi.transpose());
    pi.pi4 = 2.0 * (state.a_i * br.transpose() - state.a_r * bi.transpose());
  }
  return pi;
}

}  // namespace sbvecm
