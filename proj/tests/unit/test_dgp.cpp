#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sbvecm/dgp.hpp"
#include "sbvecm/errors.hpp"
#include "sbvecm/linalg.hpp"

using namespace sbvecm;
using namespace sbvecm::testing;

TEST(Reference, ShapesAndStability) {
  const DgpConfig cfg = DgpConfig::reference();
  EXPECT_NO_THROW(cfg.validate());
  const ModelSpec spec = cfg.spec();
  EXPECT_EQ(spec, (ModelSpec{2, 5, 4, 0, 1, 1, 1}));
  const SimulationResult sim = simulate(cfg);
  EXPECT_EQ(sim.series.rows(), 200);
  EXPECT_EQ(sim.series.dims(), 2);
  EXPECT_FALSE(sim.explosive);
  EXPECT_TRUE(sim.stability.is_admissible);
  EXPECT_TRUE(sim.series.values.allFinite());
}

TEST(Reference, SeededAndReproducible) {
  DgpConfig cfg = DgpConfig::reference();
  const SimulationResult a = simulate(cfg), b = simulate(cfg);
  EXPECT_EQ(a.series.values, b.series.values);
  cfg.seed += 1;
  EXPECT_NE(simulate(cfg).series.values, a.series.values);
}

TEST(Reference, TrueLongRunMatrices) {
  const DgpConfig cfg = DgpConfig::reference();
  const LongRunMatrices lr = long_run_matrices(cfg.state(), cfg.spec());
  EXPECT_LE((lr.pi1 - cfg.a1 * cfg.b1.transpose()).norm(), 1e-15);
  EXPECT_LE((lr.pi2 - cfg.a2 * cfg.b2.transpose()).norm(), 1e-15);
  const CMatrix pstar = cfg.a_star * cfg.b_star.adjoint();
  // 2 Re(Pi* y(3)) with y(3) = -y(32) - i y(31)
  EXPECT_LE((lr.pi3 + 2.0 * pstar.real()).norm(), 1e-15);
  EXPECT_LE((lr.pi4 - 2.0 * pstar.imag()).norm(), 1e-15);
}

TEST(Paths, ErrorCorrectionAndLevelsAgree) {
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + rep % 3;
    ModelSpec spec{n, 4 + rep % 3, 4, 0, rep % (n + 1), (rep + 1) % (n + 1), (rep + 2) % (n + 1)};
    ParamState s = zero_state(spec);
    s.sigma = Matrix::Identity(n, n);
    s.gamma = standard_normal(spec.gamma_rows(), n, rng) * 0.2;
    s.a1 = standard_normal(n, spec.r1, rng) * 0.2;
    s.b1 = standard_normal(n, spec.r1, rng);
    s.a2 = standard_normal(n, spec.r2, rng) * 0.2;
    s.b2 = standard_normal(n, spec.r2, rng);
    s.a_r = standard_normal(n, spec.r3, rng) * 0.1;
    s.a_i = standard_normal(n, spec.r3, rng) * 0.1;
    s.b_r = standard_normal(n, spec.r3, rng);
    s.b_i = standard_normal(n, spec.r3, rng);
    const Matrix pre = standard_normal(spec.k, n, rng);
    const Matrix e = standard_normal(40, n, rng);
    const Matrix v = simulate_vecm_path(s, spec, pre, e);
    const Matrix l = simulate_levels_path(var_lag_matrices(s, spec), pre, e);
    EXPECT_LE((v - l).norm(), 1e-9 * std::max(1.0, l.norm())) << spec.label();
  }
}

TEST(Paths, ReproducesRegressionRecursion) {
  Rng rng(2);
  const DgpConfig cfg = DgpConfig::reference();
  const ModelSpec spec = cfg.spec();
  const ParamState s = cfg.state();
  const QuarterlySeries y = simulate_from_state(s, spec, 25, rng);
  ASSERT_EQ(y.rows(), spec.k + 25);
  EXPECT_EQ(y.values.topRows(spec.k), Matrix::Zero(spec.k, 2));
  const DesignMatrices dm = build_design(y, spec);
  const Matrix e = dm.z0 - fitted_values(s, dm);
  // regenerating with the implied innovations returns the same path
  const Matrix again = simulate_vecm_path(s, spec, y.values.topRows(spec.k), e);
  EXPECT_LE((again - y.values).norm(), 1e-10 * y.values.norm());
}

TEST(Config, RejectsInconsistentShapes) {
  DgpConfig cfg = DgpConfig::reference();
  cfg.b1 = Matrix::Ones(3, 1);
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = DgpConfig::reference();
  cfg.sigma(0, 1) = 5.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = DgpConfig::reference();
  cfg.discard = cfg.total;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = DgpConfig::reference();
  cfg.sigma = Matrix::Zero(2, 2);
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(simulate(cfg).series.values, Matrix::Zero(200, 2));
}
