#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sbvecm/types.hpp"

namespace sbvecm {

// Raw T_raw x n quarterly panel. Row r (0-based) is observation t = r + 1.
struct QuarterlySeries {
  Matrix values;
  int start_year = 2000;
  int start_quarter = 1;
  std::vector<std::string> names;

  int rows() const { return static_cast<int>(values.rows()); }
  int dims() const { return static_cast<int>(values.cols()); }
  std::string date_label(int row) const;
};

// CSV with header `date,<name>...`, first column YYYYQn; lines starting
// with '#' are comments.
QuarterlySeries read_series_csv(const std::filesystem::path& path);
void write_series_csv(const QuarterlySeries& series, const std::filesystem::path& path,
                      const std::vector<std::string>& comments = {});

// Natural log of the named series; throws on non-positive values.
void apply_log_transform(QuarterlySeries& series, const std::vector<std::string>& names);

// Frequency transforms at 1-based observation t (t >= 5).
Vector delta4(const QuarterlySeries& y, int t);
Vector transform_zero(const QuarterlySeries& y, int t);  // y_{t-1}+y_{t-2}+y_{t-3}+y_{t-4}
Vector transform_pi(const QuarterlySeries& y, int t);    // y_{t-1}-y_{t-2}+y_{t-3}-y_{t-4}
// (y(31)_t, y(32)_t) = (y_{t-1} - y_{t-3}, y_{t-2} - y_{t-4}).
std::pair<Vector, Vector> transform_annual(const QuarterlySeries& y, int t);

struct DeterministicTerms {
  Vector restricted_zero;     // appended to y(1)
  Vector restricted_pi;       // appended to y(2)
  CVector restricted_annual;  // appended to y(3) = -y(32) - i y(31)
  Vector annual_31;           // sin(pi t / 2), appended to y(31)
  Vector annual_32;           // cos(pi t / 2), appended to y(32)
  Vector unrestricted;        // appended to the short-run regressors
};
DeterministicTerms deterministic_terms(const ModelSpec& spec, int t);

// Stacked regression blocks Z0 = Z1 B1 A1' + Z2 B2 A2' + 2 Re(Z3 conj(B*) A*') + Z4 Gamma + E.
struct DesignMatrices {
  Matrix z0, z1, z2, z31, z32, z4;
  int T = 0;
  int m1 = 0, m2 = 0, m3 = 0, l = 0;
  int first_t = 0;  // raw 1-based index of the first modeled observation

  CMatrix z3() const;  // -Z32 - i Z31
  int n() const { return static_cast<int>(z0.cols()); }
};

DesignMatrices build_design(const QuarterlySeries& y, const ModelSpec& spec);

// One row [y~(1)', y~(2)', y~(31)', y~(32)', z_t'] built from raw levels
// `levels` (rows = observations) at 1-based t > k.
Vector regressor_row(const Matrix& levels, const ModelSpec& spec, int t);

// Gram matrix of [Z1 Z2 Z31 Z32 Z4 Z0] with block offsets; every conditional
// posterior and marginal likelihood computation runs on these cross products.
struct CrossProducts {
  Matrix gram;
  int o1 = 0, o2 = 0, o31 = 0, o32 = 0, o4 = 0, o0 = 0;
  int m1 = 0, m2 = 0, m3 = 0, p4 = 0, n = 0, T = 0;

  int regressors() const { return o0; }
  auto block(int r0, int rn, int c0, int cn) const { return gram.block(r0, c0, rn, cn); }
  // Z_all' Z_all and Z_all' Z0.
  auto zz() const { return gram.topLeftCorner(o0, o0); }
  auto z_y() const { return gram.block(0, o0, o0, n); }
  auto yy() const { return gram.block(o0, o0, n, n); }
};
CrossProducts cross_products(const DesignMatrices& dm);

}  // namespace sbvecm
