#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace sbvecm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Spectral frequencies at which quarterly data can be cointegrated.
enum class Frequency { Zero, Pi, Annual };

// Deterministic-term codes of the model grid.
enum class Deterministic : int {
  RestrictedTrend = 1,       // trend in the zero-frequency space, free constant
  UnrestrictedConstant = 2,
  RestrictedConstant = 3,    // constant in the zero-frequency space
  None = 4,
};

// One model of the comparison grid: M_{d,s,r1,r2,r3} with n series and k lags.
struct ModelSpec {
  int n = 2;
  int k = 5;
  int d = 4;
  int s = 0;
  int r1 = 0;
  int r2 = 0;
  int r3 = 0;

  void validate() const;

  Deterministic deterministic() const { return static_cast<Deterministic>(d); }
  bool restricted_zero_term() const { return d == 1 || d == 3; }
  bool unrestricted_constant() const { return d == 1 || d == 2; }
  bool seasonal_dummies() const { return s == 1; }

  int m1() const { return n + (restricted_zero_term() ? 1 : 0); }
  int m2() const { return n + s; }
  int m3() const { return n + s; }
  int l() const { return unrestricted_constant() ? 1 : 0; }
  int lag_blocks() const { return k - 4; }
  // Rows of the stacked short-run coefficient matrix.
  int gamma_rows() const { return n * lag_blocks() + l(); }
  // Number of Gaussian coefficient rows scaled by nu: n(k-4)+l+r1+r2+2r3.
  int scaled_rows() const { return gamma_rows() + r1 + r2 + 2 * r3; }
  int rank(Frequency f) const;
  int dim(Frequency f) const;

  std::string label() const;
  bool operator==(const ModelSpec&) const = default;
};

}  // namespace sbvecm
