#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "sbvecm/compare.hpp"
#include "sbvecm/errors.hpp"

using namespace sbvecm;
using namespace sbvecm::testing;

namespace {

QuarterlySeries short_series(int n, int rows, std::uint64_t seed) {
  Rng rng(seed);
  return random_series(n, rows, rng);
}

}  // namespace

TEST(Grid, CountsAfterDeduplication) {
  const ModelGrid g2 = enumerate_grid(2, 5, {1, 2, 3, 4}, {0, 1}, 2);
  EXPECT_EQ(g2.specs.size(), 136u);
  const ModelGrid g4 = enumerate_grid(4, 5, {1, 2, 3, 4}, {0, 1}, 4);
  EXPECT_EQ(g4.specs.size(), 784u);
  EXPECT_NEAR(std::accumulate(g4.prior_probs.begin(), g4.prior_probs.end(), 0.0), 1.0, 1e-12);
  EXPECT_FALSE(g4.dedup_log.empty());

  std::set<std::tuple<int, int, int, int, int>> seen;
  for (const auto& s : g2.specs) {
    EXPECT_TRUE(seen.insert({s.d, s.s, s.r1, s.r2, s.r3}).second);
    EXPECT_EQ(canonical_spec(s), s);
  }
}

TEST(Grid, CanonicalRepresentatives) {
  bool possible = true;
  EXPECT_EQ(canonical_spec(ModelSpec{2, 5, 1, 0, 0, 1, 1}).d, 2);
  EXPECT_EQ(canonical_spec(ModelSpec{2, 5, 3, 0, 0, 1, 1}).d, 4);
  EXPECT_EQ(canonical_spec(ModelSpec{2, 5, 3, 0, 2, 1, 1}).d, 2);
  EXPECT_EQ(canonical_spec(ModelSpec{2, 5, 4, 1, 1, 0, 0}).s, 0);
  EXPECT_EQ(canonical_spec(ModelSpec{2, 5, 4, 1, 1, 1, 0}).s, 1);
  canonical_spec(ModelSpec{2, 5, 1, 0, 2, 1, 1}, &possible);
  EXPECT_FALSE(possible);
  canonical_spec(ModelSpec{2, 5, 1, 0, 1, 1, 1}, &possible);
  EXPECT_TRUE(possible);
}

TEST(Grid, PriorFeatureMarginalsOfFourVariableGrid) {
  const ModelGrid g = enumerate_grid(4, 5, {1, 2, 3, 4}, {0, 1}, 4);
  const auto tables = feature_marginals(g, g.prior_probs);
  for (const auto& t : tables) {
    if (t.feature == "d") {
      const auto it = std::find(t.values.begin(), t.values.end(), 2);
      EXPECT_NEAR(t.prior[it - t.values.begin()], 0.312, 5e-4);
    }
    if (t.feature == "s") {
      EXPECT_NEAR(t.prior[0], 0.510, 5e-4);
    }
    EXPECT_NEAR(std::accumulate(t.posterior.begin(), t.posterior.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(MarginalLikelihood, MatchesQuadratureForOneSeries) {
  Rng rng(7);
  int checked = 0;
  for (int d = 1; d <= 4; ++d) {
    for (int s = 0; s <= 1; ++s) {
      for (int r = 0; r <= 1; ++r) {
        ModelSpec spec{1, 5, d, s, r, 1 - r, 1};
        const QuarterlySeries y = random_series(1, 5 + 14, rng);
        const DesignMatrices dm = build_design(y, spec);
        const CrossProducts xp = cross_products(dm);
        HyperSettings hs;
        hs.estimate_nu = false;
        hs.nu_fixed = 1.7;
        hs.s_scale = 0.6;
        PriorHyper h = make_hyper(spec, hs);
        h.mu1 = Matrix::Constant(1, spec.r1, 0.2);
        h.mu_star = CMatrix::Constant(1, 1, Complex(0.1, -0.3));
        h.mu_gamma = Matrix::Constant(spec.gamma_rows(), 1, -0.1);
        for (int rep = 0; rep < 3; ++rep) {
          const LoadingsDraw b = sample_prior_loadings(spec, h, rng);
          const double got = MarginalLikelihood(xp, spec, h)(b);
          const double want = oracle_conditional_log_mdd_n1(dm, spec, h, b);
          EXPECT_NEAR(got, want, 1e-8 * std::abs(want)) << spec.label();
          EXPECT_DOUBLE_EQ(conditional_log_mdd(xp, spec, b, h), got);
          ++checked;
        }
      }
    }
  }
  EXPECT_EQ(checked, 48);
}

TEST(MddEstimate, RankZeroIsExactAndMatchesBruteForce) {
  ModelSpec spec{1, 5, 4, 0, 0, 0, 0};
  const QuarterlySeries y = short_series(1, 5 + 8, 3);
  const DesignMatrices dm = build_design(y, spec);
  ASSERT_EQ(dm.T, 8);
  HyperSettings hs;
  hs.estimate_nu = false;
  hs.nu_fixed = 1.0;
  const PriorHyper h = make_hyper(spec, hs);
  Rng rng(1);
  const MddEstimate est = estimate_log_mdd(cross_products(dm), spec, h, 500, rng);
  EXPECT_EQ(est.mc_se, 0.0);
  EXPECT_EQ(est.finite, 500);
  const double oracle = oracle_log_mdd_rank0_n1(dm, h);
  EXPECT_NEAR(est.log_mdd, oracle, 1e-4 * std::abs(oracle));
}

TEST(MddEstimate, ReproducibleFromSeed) {
  ModelSpec spec{2, 5, 2, 0, 1, 1, 1};
  const QuarterlySeries y = short_series(2, 40, 4);
  const PriorHyper h = make_hyper(spec);
  Rng a(9), b(9);
  const MddEstimate ea = estimate_log_mdd(y, spec, h, 300, a);
  const MddEstimate eb = estimate_log_mdd(y, spec, h, 300, b);
  EXPECT_EQ(ea.log_mdd, eb.log_mdd);
  EXPECT_GT(ea.mc_se, 0.0);
  EXPECT_TRUE(std::isfinite(ea.log_mdd));
}

TEST(Truncation, UnrestrictedPureDifferenceIsAlwaysAdmissible) {
  ModelSpec spec{2, 4, 4, 0, 0, 0, 0};
  Rng rng(2);
  const TruncationEstimate t = truncation_fraction(spec, make_hyper(spec), 200, rng);
  EXPECT_EQ(t.accepted, 200);
  EXPECT_EQ(t.fraction, 1.0);
}

TEST(Truncation, FractionBetweenZeroAndOne) {
  ModelSpec spec{2, 5, 4, 0, 1, 1, 1};
  Rng rng(3);
  const TruncationEstimate t = truncation_fraction(spec, make_hyper(spec), 500, rng);
  EXPECT_GT(t.fraction, 0.0);
  EXPECT_LT(t.fraction, 1.0);
  EXPECT_EQ(t.draws, 500);
}

TEST(Posteriors, SoftmaxWithPriors) {
  const std::vector<double> lm{-10.0, -11.0, -std::numeric_limits<double>::infinity()};
  const std::vector<double> pr{0.25, 0.5, 0.25};
  const std::vector<double> p = model_posteriors(lm, pr);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-15);
  EXPECT_NEAR(p[0] / p[1], 0.5 * std::exp(1.0), 1e-12);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Comparison, ScoresDoNotDependOnGridOrWorkers) {
  const QuarterlySeries y = short_series(2, 40, 5);
  CompareSettings st;
  st.mdd_draws = 200;
  st.trunc_draws = 100;
  st.seed = 3;
  const ModelGrid grid = enumerate_grid(2, 5, {2, 4}, {0}, 1);
  const CompareResult one = run_comparison(y, grid, st);
  st.workers = 3;
  const CompareResult three = run_comparison(y, grid, st);
  ASSERT_EQ(one.scores.size(), three.scores.size());
  for (std::size_t i = 0; i < one.scores.size(); ++i) {
    EXPECT_EQ(one.scores[i].log_mdd, three.scores[i].log_mdd);
    EXPECT_EQ(one.scores[i].posterior_prob, three.scores[i].posterior_prob);
  }
  ModelGrid single;
  single.specs = {grid.specs[2]};
  single.prior_probs = {1.0};
  const CompareResult alone = run_comparison(y, single, st);
  EXPECT_EQ(alone.scores[0].log_mdd, one.scores[2].log_mdd);
  EXPECT_EQ(alone.scores[0].trunc_fraction, one.scores[2].trunc_fraction);
  EXPECT_DOUBLE_EQ(alone.scores[0].posterior_prob, 1.0);

  double total = 0.0;
  for (const auto& s : one.scores) total += s.posterior_prob;
  EXPECT_NEAR(total, 1.0, 1e-12);
  for (std::size_t i = 1; i < one.ranking.size(); ++i)
    EXPECT_GE(one.scores[one.ranking[i - 1]].posterior_prob,
              one.scores[one.ranking[i]].posterior_prob);
}
