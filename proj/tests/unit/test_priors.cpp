#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "sbvecm/errors.hpp"
#include "sbvecm/linalg.hpp"
#include "sbvecm/priors.hpp"

using namespace sbvecm;
using namespace sbvecm::testing;

namespace {

double gaussian_log_density(const Vector& x, const Matrix& cov) {
  const double k = static_cast<double>(x.size());
  return -0.5 * k * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(cov.determinant()) -
         0.5 * x.dot(cov.fullPivLu().solve(x));
}

}  // namespace

TEST(Hyper, DefaultShapes) {
  ModelSpec spec{3, 6, 1, 1, 2, 1, 1};
  const PriorHyper h = make_hyper(spec);
  EXPECT_EQ(h.mu_gamma.rows(), spec.gamma_rows());
  EXPECT_EQ(h.p1.rows(), spec.m1());
  EXPECT_EQ(h.p_star.rows(), spec.m3());
  EXPECT_DOUBLE_EQ(h.q, 5.0);
  EXPECT_NO_THROW(h.validate(spec));
}

TEST(Hyper, ValidationCatchesBadInput) {
  ModelSpec spec{2, 5, 4, 0, 1, 1, 1};
  PriorHyper h = make_hyper(spec);
  h.q = 0.5;
  EXPECT_THROW(h.validate(spec), ValidationError);
  h = make_hyper(spec);
  h.p_star(0, 1) = Complex(0.1, 0.1);
  EXPECT_THROW(h.validate(spec), ValidationError);
  h = make_hyper(spec);
  h.omega1(0, 0) = -1.0;
  EXPECT_THROW(h.validate(spec), ValidationError);
  h = make_hyper(spec);
  h.mu1 = Matrix::Zero(3, 1);
  EXPECT_THROW(h.validate(spec), ValidationError);
}

TEST(StackedCovariance, MatchesComplexNormal) {
  Rng rng(1);
  const CMatrix p = random_hpd(3, rng);
  const Matrix c = stacked_loading_covariance(p, 3);
  EXPECT_LE((c.topLeftCorner(3, 3) - p.real() / 6.0).norm(), 1e-15);
  EXPECT_LE((c.bottomLeftCorner(3, 3) - p.imag() / 6.0).norm(), 1e-15);
  EXPECT_LE((c.topRightCorner(3, 3) + p.imag() / 6.0).norm(), 1e-15);
}

TEST(PriorDraws, MomentsOfSigmaAndLoadings) {
  ModelSpec spec{2, 4, 4, 0, 1, 0, 1};
  HyperSettings hs;
  hs.s_scale = 0.5;
  hs.q_offset = 6.0;
  PriorHyper h = make_hyper(spec, hs);
  h.p_star(0, 1) = Complex(0.02, 0.03);
  h.p_star(1, 0) = std::conj(h.p_star(0, 1));
  Rng rng(2);
  const int draws = 40000;
  Matrix sigma_mean = Matrix::Zero(2, 2), b1_cov = Matrix::Zero(2, 2);
  CMatrix bstar_cov = CMatrix::Zero(2, 2);
  for (int i = 0; i < draws; ++i) {
    const ParamState s = sample_prior_state(spec, h, rng);
    sigma_mean += s.sigma / draws;
    b1_cov += s.b1 * s.b1.transpose() / draws;
    bstar_cov += s.b_star() * s.b_star().adjoint() / static_cast<double>(draws);
  }
  // iW(S, q): E[Sigma] = S / (q - n - 1)
  EXPECT_LE((sigma_mean - h.S / (h.q - 3.0)).norm(), 0.01);
  EXPECT_LE((b1_cov - h.p1 / spec.m1()).norm(), 0.003);
  EXPECT_LE((bstar_cov - h.p_star / double(spec.m3())).norm(), 0.003);
}

TEST(PriorDraws, NormalizedFormsAreConsistent) {
  ModelSpec spec{3, 5, 1, 1, 2, 1, 2};
  const PriorHyper h = make_hyper(spec);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const ParamState s = sample_prior_state(spec, h, rng);
    EXPECT_LE((s.alpha1 * s.beta1.transpose() - s.a1 * s.b1.transpose()).norm(), 1e-10);
    EXPECT_LE((s.beta1.transpose() * s.beta1 - Matrix::Identity(2, 2)).norm(), 1e-10);
    EXPECT_LE((s.alpha_star * s.beta_star.adjoint() - s.a_star() * s.b_star().adjoint()).norm(),
              1e-10);
  }
}

TEST(PriorDensity, MatchesExplicitGaussians) {
  ModelSpec spec{2, 5, 2, 1, 1, 2, 1};
  Rng rng(4);
  PriorHyper h = make_hyper(spec);
  h.p1 = random_spd(spec.m1(), rng);
  h.p2 = random_spd(spec.m2(), rng);
  h.p_star = random_hpd(spec.m3(), rng);
  h.s_nu = 2.0;
  h.n_nu = 3.0;
  const ParamState s = sample_prior_state(spec, h, rng);
  double expected = 0.0;
  expected += gaussian_log_density(s.b1.col(0), h.p1 / spec.m1());
  for (int j = 0; j < 2; ++j) expected += gaussian_log_density(s.b2.col(j), h.p2 / spec.m2());
  Vector stacked(2 * spec.m3());
  stacked << s.b_r.col(0), s.b_i.col(0);
  Matrix c(2 * spec.m3(), 2 * spec.m3());
  c << h.p_star.real(), -h.p_star.imag(), h.p_star.imag(), h.p_star.real();
  expected += gaussian_log_density(stacked, c / (2.0 * spec.m3()));
  expected += 3.0 * std::log(2.0) - std::lgamma(3.0) - 4.0 * std::log(s.nu) - 2.0 / s.nu;
  EXPECT_NEAR(log_prior_density_B_nu(s, spec, h), expected, 1e-10 * std::abs(expected));
}

TEST(PriorDraws, FixedNu) {
  ModelSpec spec{1, 4, 4, 0, 1, 0, 0};
  HyperSettings hs;
  hs.estimate_nu = false;
  hs.nu_fixed = 2.5;
  Rng rng(5);
  EXPECT_DOUBLE_EQ(sample_prior_loadings(spec, make_hyper(spec, hs), rng).nu, 2.5);
}
