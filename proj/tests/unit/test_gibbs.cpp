#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sbvecm/errors.hpp"
#include "sbvecm/gibbs.hpp"
#include "sbvecm/linalg.hpp"

using namespace sbvecm;
using namespace sbvecm::testing;

namespace {

constexpr double kTol = 1e-10;

}  // namespace

TEST(GibbsConditionals, MatchKroneckerOracle) {
  Rng rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = random_instance(rng);
    SCOPED_TRACE(inst.spec.label() + " n=" + std::to_string(inst.spec.n) +
                 " k=" + std::to_string(inst.spec.k));
    for (const auto& c : check_conditionals(inst)) {
      EXPECT_LT(c.mean_error, kTol) << c.name;
      EXPECT_LT(c.scale_error, kTol) << c.name;
    }
  }
}

TEST(GibbsConditionals, OracleDetectsAPerturbedState) {
  Rng rng(14);
  ModelSpec spec{2, 5, 1, 1, 1, 1, 1};
  Instance inst = random_instance(spec, 30, rng);
  const GaussianParams br = complex_loadings_real_conditional(inst.state, inst.xp, spec, inst.hyper);
  inst.state.b_i *= -1.0;
  EXPECT_GT(relative_error(br.mean(), oracle_block(inst, OracleBlock::BR).mean()), 1e-3);
}

TEST(GibbsConditionals, ResidualCrossProductMatchesExplicitResiduals) {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const Instance inst = random_instance(rng);
    const Matrix e = inst.dm.z0 - fitted_values(inst.state, inst.dm);
    EXPECT_LT(relative_error(residual_cross_product(inst.state, inst.xp, inst.spec), e.transpose() * e),
              kTol);
  }
}

TEST(GibbsConditionals, FixedNuHasNoConditional) {
  Rng rng(13);
  Instance inst = random_instance(rng);
  inst.hyper.estimate_nu = false;
  EXPECT_THROW(nu_conditional(inst.state, inst.spec, inst.hyper), std::logic_error);
}

TEST(Normalization, RealPairReconstructsProduct) {
  Rng rng(21);
  const Matrix a = standard_normal(3, 2, rng), b = standard_normal(4, 2, rng);
  const auto [alpha, beta] = normalize_pair(a, b);
  EXPECT_LT((beta.transpose() * beta - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((alpha * beta.transpose() - a * b.transpose()).norm(), 1e-12);
}

TEST(Normalization, ComplexPairReconstructsProduct) {
  Rng rng(22);
  const CMatrix a = random_semi_unitary(3, 2, rng) * Complex(2.0, -1.0);
  const CMatrix b = random_hpd(4, rng).leftCols(2);
  const auto [alpha, beta] = normalize_pair(a, b);
  EXPECT_LT((beta.adjoint() * beta - CMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((alpha * beta.adjoint() - a * b.adjoint()).norm(), 1e-12);
}

TEST(Normalization, RankDeficientLoadingsThrow) {
  Matrix b(3, 2);
  b << 1, 2, 2, 4, 3, 6;
  EXPECT_THROW(normalize_pair(Matrix(Matrix::Ones(2, 2)), b), NumericalError);
}

TEST(Chain, SameSeedSameDraws) {
  Rng rng(31);
  ModelSpec spec{2, 5, 4, 0, 1, 1, 1};
  const Instance inst = random_instance(spec, 60, rng);
  const PriorHyper hyper = make_hyper(spec);
  ChainConfig cfg;
  cfg.burn_in = 20;
  cfg.keep = 30;
  cfg.seed = 5;
  cfg.check_stability = false;
  const ChainOutput a = run_chain(inst.y, spec, hyper, cfg);
  const ChainOutput b = run_chain(inst.y, spec, hyper, cfg);
  ASSERT_EQ(a.draws.size(), 30u);
  for (std::size_t i = 0; i < a.draws.size(); ++i) {
    EXPECT_EQ(a.draws[i].sigma, b.draws[i].sigma);
    EXPECT_EQ(a.draws[i].beta_star, b.draws[i].beta_star);
  }
  EXPECT_EQ(a.accepted, a.attempted);
}

TEST(Chain, StabilityGateKeepsOnlyAdmissibleDraws) {
  Rng rng(32);
  ModelSpec spec{2, 5, 4, 0, 1, 1, 1};
  const Instance inst = random_instance(spec, 80, rng);
  const PriorHyper hyper = make_hyper(spec);
  ChainConfig cfg;
  cfg.burn_in = 50;
  cfg.keep = 100;
  const ChainOutput out = run_chain(inst.y, spec, hyper, cfg);
  ASSERT_EQ(out.draws.size(), 100u);
  for (const auto& d : out.draws)
    EXPECT_TRUE(stability_check(build_companion(d, spec), spec).is_admissible);
  EXPECT_GE(out.attempted, out.accepted);
  EXPECT_EQ(out.accepted, 150);
}

TEST(Chain, ThinningKeepsEveryThirdDraw) {
  Rng rng(33);
  ModelSpec spec{2, 4, 2, 0, 1, 0, 0};
  const Instance inst = random_instance(spec, 40, rng);
  const PriorHyper hyper = make_hyper(spec);
  ChainConfig cfg;
  cfg.keep = 10;
  cfg.thin = 3;
  cfg.check_stability = false;
  const ChainOutput out = run_chain(inst.y, spec, hyper, cfg);
  EXPECT_EQ(out.draws.size(), 10u);
  EXPECT_EQ(out.accepted, 30);
}

TEST(Chain, AbortsBelowAcceptanceFloor) {
  Rng rng(34);
  ModelSpec spec{2, 5, 4, 0, 1, 1, 1};
  const Instance inst = random_instance(spec, 40, rng);
  const PriorHyper hyper = make_hyper(spec);
  ChainConfig cfg;
  cfg.keep = 10;
  cfg.max_attempts = 20;
  cfg.min_acceptance = 1.01;
  try {
    run_chain(inst.y, spec, hyper, cfg);
    FAIL() << "expected ChainAbort";
  } catch (const ChainAbort& e) {
    EXPECT_EQ(e.attempted(), 20);
  }
}

TEST(Chain, EffectiveSampleSizeOfIndependentTrace) {
  Rng rng(35);
  std::normal_distribution<double> nd;
  std::vector<double> iid(20000), ar(20000);
  double x = 0.0;
  for (std::size_t i = 0; i < iid.size(); ++i) {
    iid[i] = nd(rng);
    x = 0.9 * x + nd(rng);
    ar[i] = x;
  }
  EXPECT_NEAR(effective_sample_size(iid) / 20000.0, 1.0, 0.1);
  // AR(1) with phi = 0.9: ESS / N = (1 - phi) / (1 + phi)
  EXPECT_NEAR(effective_sample_size(ar) / 20000.0, 0.1 / 1.9, 0.015);
}

TEST(Geweke, ShortRunAgreesWithPrior) {
  ModelSpec spec{2, 4, 2, 0, 1, 1, 1};
  const GewekeResult r = geweke_test(spec, geweke_hyper(spec), 30, 10000, 7);
  for (const auto& f : r.functionals)
    EXPECT_LT(std::abs(f.z), 5.0) << f.name << " mc " << f.mc_mean << " sc " << f.sc_mean;
  EXPECT_GE(r.pass_share(4.0), 0.9);
}
