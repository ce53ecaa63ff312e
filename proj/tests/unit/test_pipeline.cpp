#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "sbvecm/errors.hpp"
#include "sbvecm/pipeline.hpp"

using namespace sbvecm;
using namespace sbvecm::testing;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sbvecm_pipeline_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

QuarterlySeries ramp(int rows, int n) {
  QuarterlySeries y;
  y.values.resize(rows, n);
  for (int t = 0; t < rows; ++t)
    for (int j = 0; j < n; ++j) y.values(t, j) = (t + 1) * (t + 1) + 10.0 * j;
  for (int j = 0; j < n; ++j) y.names.push_back("v" + std::to_string(j));
  return y;
}

}  // namespace

TEST(SeriesCsv, RoundTripWithComments) {
  Rng rng(1);
  QuarterlySeries y = random_series(3, 17, rng);
  y.start_year = 1995;
  y.start_quarter = 3;
  const auto path = temp_file("roundtrip.csv");
  write_series_csv(y, path, {"seed = 4", "note"});
  const QuarterlySeries back = read_series_csv(path);
  EXPECT_EQ(back.start_year, 1995);
  EXPECT_EQ(back.start_quarter, 3);
  EXPECT_EQ(back.names, y.names);
  EXPECT_EQ(back.values, y.values);
  EXPECT_EQ(back.date_label(2), "1996Q1");
}

TEST(SeriesCsv, RejectsMalformedInput) {
  const auto path = temp_file("bad.csv");
  write_text(path, "date,a\n2000Q1,1\n2000Q3,2\n");
  EXPECT_THROW(read_series_csv(path), ValidationError);
  write_text(path, "date,a\n2000Q1,1\n2000Q2,x\n");
  EXPECT_THROW(read_series_csv(path), ValidationError);
  write_text(path, "date,a,b\n2000Q1,1\n");
  EXPECT_THROW(read_series_csv(path), ValidationError);
  write_text(path, "when,a\n2000Q1,1\n");
  EXPECT_THROW(read_series_csv(path), ValidationError);
  write_text(path, "date,a\n2000Q5,1\n");
  EXPECT_THROW(read_series_csv(path), ValidationError);
  EXPECT_THROW(read_series_csv(temp_file("missing.csv")), std::runtime_error);
}

TEST(SeriesCsv, LogTransform) {
  QuarterlySeries y = ramp(8, 2);
  const Matrix before = y.values;
  apply_log_transform(y, {"v1"});
  EXPECT_EQ(y.values.col(0), before.col(0));
  EXPECT_LE((y.values.col(1) - before.col(1).array().log().matrix()).norm(), 1e-15);
  EXPECT_THROW(apply_log_transform(y, {"nope"}), ValidationError);
  y.values(0, 0) = 0.0;
  EXPECT_THROW(apply_log_transform(y, {"v0"}), ValidationError);
}

TEST(Transforms, MatchLagPolynomials) {
  const QuarterlySeries y = ramp(10, 2);
  auto lv = [&](int t) -> Vector { return y.values.row(t - 1).transpose(); };
  const int t = 7;
  EXPECT_EQ(delta4(y, t), lv(t) - lv(t - 4));
  EXPECT_EQ(transform_zero(y, t), lv(t - 1) + lv(t - 2) + lv(t - 3) + lv(t - 4));
  EXPECT_EQ(transform_pi(y, t), lv(t - 1) - lv(t - 2) + lv(t - 3) - lv(t - 4));
  const auto [y31, y32] = transform_annual(y, t);
  EXPECT_EQ(y31, lv(t - 1) - lv(t - 3));
  EXPECT_EQ(y32, lv(t - 2) - lv(t - 4));
  EXPECT_THROW(delta4(y, 4), std::out_of_range);
}

TEST(Transforms, FiltersRemoveOtherSeasonalUnitRoots) {
  // cos(pi t) has a root at -1 only, cos(pi t / 2) at +-i only, a constant at 1 only.
  QuarterlySeries y;
  y.values.resize(12, 3);
  for (int t = 1; t <= 12; ++t) {
    y.values(t - 1, 0) = 3.0;
    y.values(t - 1, 1) = (t % 2 == 0) ? 1.0 : -1.0;
    y.values(t - 1, 2) = (t % 4 == 0) ? 1.0 : (t % 4 == 2 ? -1.0 : 0.0);
  }
  for (int t = 5; t <= 12; ++t) {
    EXPECT_EQ(delta4(y, t), Vector::Zero(3));
    const Vector z = transform_zero(y, t), p = transform_pi(y, t);
    const auto [a31, a32] = transform_annual(y, t);
    EXPECT_EQ(z(1), 0.0);
    EXPECT_EQ(z(2), 0.0);
    EXPECT_EQ(p(0), 0.0);
    EXPECT_EQ(p(2), 0.0);
    EXPECT_EQ(a31(0), 0.0);
    EXPECT_EQ(a32(0), 0.0);
    EXPECT_EQ(a31(1), 0.0);
    EXPECT_EQ(a32(1), 0.0);
  }
}

TEST(Design, ShapesAndComplexBlock) {
  Rng rng(2);
  const QuarterlySeries y = random_series(2, 30, rng);
  for (int d = 1; d <= 4; ++d) {
    for (int s = 0; s <= 1; ++s) {
      ModelSpec spec{2, 6, d, s, 1, 1, 1};
      const DesignMatrices dm = build_design(y, spec);
      EXPECT_EQ(dm.T, 24);
      EXPECT_EQ(dm.first_t, 7);
      EXPECT_EQ(dm.z1.cols(), spec.m1());
      EXPECT_EQ(dm.z2.cols(), spec.m2());
      EXPECT_EQ(dm.z31.cols(), spec.m3());
      EXPECT_EQ(dm.z4.cols(), spec.gamma_rows());
      const CMatrix z3 = dm.z3();
      EXPECT_EQ(z3.real(), -dm.z32);
      EXPECT_EQ(z3.imag(), -dm.z31);
      const CrossProducts xp = cross_products(dm);
      Matrix all(dm.T, xp.o0 + 2);
      all << dm.z1, dm.z2, dm.z31, dm.z32, dm.z4, dm.z0;
      EXPECT_LE((xp.gram - all.transpose() * all).norm(), 1e-10 * xp.gram.norm());
      for (int row = 0; row < dm.T; ++row) {
        const Vector x = regressor_row(y.values, spec, dm.first_t + row);
        EXPECT_EQ(x.transpose(), all.row(row).head(xp.o0));
      }
    }
  }
}

TEST(Design, DeterministicTerms) {
  ModelSpec spec{1, 5, 1, 1, 1, 1, 1};
  for (int t = 5; t <= 12; ++t) {
    const DeterministicTerms dt = deterministic_terms(spec, t);
    ASSERT_EQ(dt.restricted_zero.size(), 1);
    EXPECT_DOUBLE_EQ(dt.restricted_zero(0), t - 2.5);
    ASSERT_EQ(dt.unrestricted.size(), 1);
    EXPECT_EQ(dt.restricted_pi(0), (t % 2 == 0) ? 1.0 : -1.0);
    const double sin_t[] = {0.0, 1.0, 0.0, -1.0}, cos_t[] = {1.0, 0.0, -1.0, 0.0};
    EXPECT_EQ(dt.annual_31(0), sin_t[t % 4]);
    EXPECT_EQ(dt.annual_32(0), cos_t[t % 4]);
  }
  ModelSpec none{1, 5, 4, 0, 1, 1, 1};
  const DeterministicTerms dt = deterministic_terms(none, 6);
  EXPECT_EQ(dt.restricted_zero.size(), 0);
  EXPECT_EQ(dt.unrestricted.size(), 0);
}

TEST(Design, RejectsShortOrMismatchedData) {
  Rng rng(3);
  const QuarterlySeries y = random_series(2, 5, rng);
  EXPECT_THROW(build_design(y, ModelSpec{2, 5, 4, 0, 1, 1, 1}), ValidationError);
  EXPECT_THROW(build_design(y, ModelSpec{3, 4, 4, 0, 1, 1, 1}), ValidationError);
}

TEST(ModelSpecTest, DimensionsAndLabel) {
  ModelSpec spec{4, 5, 1, 1, 2, 1, 3};
  EXPECT_EQ(spec.m1(), 5);
  EXPECT_EQ(spec.m2(), 5);
  EXPECT_EQ(spec.m3(), 5);
  EXPECT_EQ(spec.l(), 1);
  EXPECT_EQ(spec.gamma_rows(), 5);
  EXPECT_EQ(spec.scaled_rows(), 5 + 2 + 1 + 6);
  EXPECT_EQ(spec.label(), "M_{1,1,2,1,3}");
  EXPECT_THROW((ModelSpec{2, 3, 4, 0, 0, 0, 0}.validate()), ValidationError);
  EXPECT_THROW((ModelSpec{2, 5, 4, 0, 3, 0, 0}.validate()), ValidationError);
}
