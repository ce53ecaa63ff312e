#include "sbvecm/compare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

#include "sbvecm/errors.hpp"
#include "sbvecm/gibbs.hpp"

namespace sbvecm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

auto spec_key(const ModelSpec& s) { return std::tuple(s.d, s.s, s.r1, s.r2, s.r3); }

// Prior sampler for the loadings with the Cholesky factors computed once.
class LoadingsSampler {
 public:
  LoadingsSampler(const ModelSpec& spec, const PriorHyper& hyper) : spec_(spec), hyper_(hyper) {
    if (spec.r1 > 0) l1_ = cholesky_lower(hyper.p1 / spec.m1(), "P1");
    if (spec.r2 > 0) l2_ = cholesky_lower(hyper.p2 / spec.m2(), "P2");
    if (spec.r3 > 0)
      l3_ = cholesky_lower(stacked_loading_covariance(hyper.p_star, spec.m3()), "P_star");
  }

  void draw(LoadingsDraw& out, Rng& rng) const {
    out.nu = hyper_.estimate_nu ? sample_inverse_gamma(hyper_.s_nu, hyper_.n_nu, rng)
                                : hyper_.nu_fixed;
    const int m3 = spec_.m3();
    out.b1 = spec_.r1 > 0 ? Matrix(l1_ * standard_normal(spec_.m1(), spec_.r1, rng))
                          : Matrix::Zero(spec_.m1(), 0);
    out.b2 = spec_.r2 > 0 ? Matrix(l2_ * standard_normal(spec_.m2(), spec_.r2, rng))
                          : Matrix::Zero(spec_.m2(), 0);
    if (spec_.r3 > 0) {
      const Matrix stacked = l3_ * standard_normal(2 * m3, spec_.r3, rng);
      out.b_r = stacked.topRows(m3);
      out.b_i = stacked.bottomRows(m3);
    } else {
      out.b_r = Matrix::Zero(m3, 0);
      out.b_i = Matrix::Zero(m3, 0);
    }
  }

 private:
  ModelSpec spec_;
  const PriorHyper& hyper_;
  Matrix l1_, l2_, l3_;
};

double log_det_chol(const Eigen::LLT<Matrix>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

ModelSpec canonical_spec(const ModelSpec& spec, bool* possible) {
  ModelSpec c = spec;
  bool ok = true;
  if (c.r1 == 0) {
    if (c.d == 1) c.d = 2;
    if (c.d == 3) c.d = 4;
  } else if (c.r1 == c.n) {
    if (c.d == 3) c.d = 2;
    if (c.d == 1) ok = false;
  }
  if (c.s == 1 && c.r2 == 0 && c.r3 == 0) c.s = 0;
  if (possible) *possible = ok;
  return c;
}

ModelGrid enumerate_grid(int n, int k, const std::vector<int>& d_set, const std::vector<int>& s_set,
                         int r_max) {
  require(n >= 1, "enumerate_grid: n must be positive");
  require(r_max >= 0 && r_max <= n, "enumerate_grid: need 0 <= r_max <= n");
  ModelGrid grid;
  std::map<std::tuple<int, int, int, int, int>, ModelSpec> kept;
  for (int d : d_set)
    for (int s : s_set)
      for (int r1 = 0; r1 <= r_max; ++r1)
        for (int r2 = 0; r2 <= r_max; ++r2)
          for (int r3 = 0; r3 <= r_max; ++r3) {
            ModelSpec spec{n, k, d, s, r1, r2, r3};
            spec.validate();
            bool possible = true;
            const ModelSpec c = canonical_spec(spec, &possible);
            if (!possible) {
              grid.dedup_log.push_back(spec.label() +
                                       " removed: restricted trend in a full-rank zero-frequency "
                                       "space is not representable");
              continue;
            }
            if (!(c == spec)) grid.dedup_log.push_back(spec.label() + " equivalent to " + c.label());
            kept.emplace(spec_key(c), c);
          }
  require(!kept.empty(), "enumerate_grid: empty grid");
  for (const auto& [key, spec] : kept) grid.specs.push_back(spec);
  grid.prior_probs.assign(grid.specs.size(), 1.0 / static_cast<double>(grid.specs.size()));
  return grid;
}

MarginalLikelihood::MarginalLikelihood(const CrossProducts& xp, const ModelSpec& spec,
                                       const PriorHyper& hyper)
    : xp_(xp), spec_(spec), hyper_(hyper) {
  hyper.validate(spec);
  require(xp.n == spec.n && xp.m1 == spec.m1() && xp.m2 == spec.m2() && xp.m3 == spec.m3() &&
              xp.p4 == spec.gamma_rows(),
          "marginal likelihood: design does not match the model spec");
  const int n = spec.n, r1 = spec.r1, r2 = spec.r2, r3 = spec.r3, p4 = spec.gamma_rows();
  K_ = r1 + r2 + 2 * r3 + p4;

  omega_inv_ = Matrix::Zero(K_, K_);
  Matrix mu(K_, n);
  log_det_omega_ = 0.0;
  int o = 0;
  auto put = [&](const Matrix& omega, const Matrix& mean_rows) {
    const Eigen::Index m = omega.rows();
    if (m == 0) return;
    Eigen::LLT<Matrix> llt(omega);
    omega_inv_.block(o, o, m, m) = llt.solve(Matrix::Identity(m, m));
    log_det_omega_ += log_det_chol(llt);
    mu.middleRows(o, m) = mean_rows;
    o += static_cast<int>(m);
  };
  put(hyper.omega1, hyper.mu1.transpose());
  put(hyper.omega2, hyper.mu2.transpose());
  put(0.5 * Matrix::Identity(r3, r3), hyper.mu_star.real().transpose());
  put(0.5 * Matrix::Identity(r3, r3), hyper.mu_star.imag().transpose());
  put(hyper.omega_gamma, hyper.mu_gamma);
  omega_inv_mu_ = omega_inv_ * mu;
  mu_omega_mu_ = mu.transpose() * omega_inv_mu_;

  const double q = hyper.q, T = xp.T;
  constant_ = -0.5 * n * T * std::log(std::numbers::pi) + 0.5 * q * log_det_spd(hyper.S);
  for (int i = 1; i <= n; ++i)
    constant_ += std::lgamma(0.5 * (q + T + 1 - i)) - std::lgamma(0.5 * (q + 1 - i));
}

Matrix MarginalLikelihood::regressor_map(const LoadingsDraw& b) const {
  const int r1 = spec_.r1, r2 = spec_.r2, r3 = spec_.r3, m3 = xp_.m3, p4 = xp_.p4;
  Matrix w = Matrix::Zero(xp_.o0, K_);
  int c = 0;
  w.block(xp_.o1, c, xp_.m1, r1) = b.b1;
  c += r1;
  w.block(xp_.o2, c, xp_.m2, r2) = b.b2;
  c += r2;
  w.block(xp_.o31, c, m3, r3) = -2.0 * b.b_i;
  w.block(xp_.o32, c, m3, r3) = -2.0 * b.b_r;
  c += r3;
  w.block(xp_.o31, c, m3, r3) = 2.0 * b.b_r;
  w.block(xp_.o32, c, m3, r3) = -2.0 * b.b_i;
  c += r3;
  w.block(xp_.o4, c, p4, p4).setIdentity();
  return w;
}

double MarginalLikelihood::operator()(const LoadingsDraw& b) const {
  const int n = spec_.n;
  const double nu = b.nu;
  const double dof = hyper_.q + xp_.T;
  Matrix s_bar = hyper_.S + xp_.yy();
  double value = constant_;
  if (K_ > 0) {
    const Matrix w = regressor_map(b);
    const Matrix gw = xp_.zz() * w;
    Matrix a = omega_inv_ / nu + w.transpose() * gw;
    a = 0.5 * (a + a.transpose());
    const Matrix rhs = omega_inv_mu_ / nu + w.transpose() * xp_.z_y();
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) {
      last_error_ = "posterior coefficient precision is not positive definite";
      return kNegInf;
    }
    s_bar += mu_omega_mu_ / nu - rhs.transpose() * llt.solve(rhs);
    value += -0.5 * n * (K_ * std::log(nu) + log_det_omega_) - 0.5 * n * log_det_chol(llt);
  }
  s_bar = 0.5 * (s_bar + s_bar.transpose());
  Eigen::LLT<Matrix> s_llt(s_bar);
  if (s_llt.info() != Eigen::Success) {
    last_error_ = "posterior scale matrix is not positive definite";
    return kNegInf;
  }
  value -= 0.5 * dof * log_det_chol(s_llt);
  if (!std::isfinite(value)) {
    last_error_ = "non-finite marginal likelihood";
    return kNegInf;
  }
  return value;
}

double conditional_log_mdd(const CrossProducts& xp, const ModelSpec& spec, const LoadingsDraw& b,
                           const PriorHyper& hyper) {
  return MarginalLikelihood(xp, spec, hyper)(b);
}

MddEstimate estimate_log_mdd(const CrossProducts& xp, const ModelSpec& spec,
                             const PriorHyper& hyper, long n_draws, Rng& rng) {
  require(n_draws >= 1, "estimate_log_mdd: n_draws must be positive");
  const MarginalLikelihood ml(xp, spec, hyper);
  const LoadingsSampler sampler(spec, hyper);
  LoadingsDraw b;
  double top = kNegInf, s1 = 0.0, s2 = 0.0;
  MddEstimate out;
  for (long i = 0; i < n_draws; ++i) {
    sampler.draw(b, rng);
    const double v = ml(b);
    ++out.draws;
    if (v == kNegInf) continue;
    ++out.finite;
    if (v > top) {
      if (top != kNegInf) {
        const double f = std::exp(top - v);
        s1 *= f;
        s2 *= f * f;
      }
      top = v;
    }
    const double e = std::exp(v - top);
    s1 += e;
    s2 += e * e;
  }
  if (out.finite == 0)
    throw NumericalError("estimate_log_mdd: every draw gave a zero likelihood for " +
                         spec.label() + " (" + ml.last_error() + ")");
  const double N = static_cast<double>(out.draws);
  const double mean = s1 / N;
  const double var = std::max(0.0, s2 / N - mean * mean);
  out.log_mdd = top + std::log(mean);
  out.mc_se = std::sqrt(var / N) / mean;
  return out;
}

MddEstimate estimate_log_mdd(const QuarterlySeries& y, const ModelSpec& spec,
                             const PriorHyper& hyper, long n_draws, Rng& rng) {
  const CrossProducts xp = cross_products(build_design(y, spec));
  return estimate_log_mdd(xp, spec, hyper, n_draws, rng);
}

TruncationEstimate truncation_fraction(const ModelSpec& spec, const PriorHyper& hyper,
                                       long n_draws, Rng& rng, double tol_unit,
                                       double tol_explosive) {
  require(n_draws >= 1, "truncation_fraction: n_draws must be positive");
  TruncationEstimate out;
  for (long i = 0; i < n_draws; ++i) {
    const ParamState s = sample_prior_state(spec, hyper, rng);
    ++out.draws;
    if (stability_check(build_companion(s, spec), spec, tol_unit, tol_explosive).is_admissible)
      ++out.accepted;
  }
  if (out.accepted == 0)
    throw NumericalError("truncation_fraction: no admissible prior draw in " +
                         std::to_string(n_draws) + " for " + spec.label());
  out.fraction = static_cast<double>(out.accepted) / static_cast<double>(out.draws);
  return out;
}

std::vector<double> model_posteriors(const std::vector<double>& log_mdd,
                                     const std::vector<double>& prior_probs) {
  require(log_mdd.size() == prior_probs.size(), "model_posteriors: misaligned inputs");
  std::vector<double> w(log_mdd.size(), kNegInf);
  double top = kNegInf;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (prior_probs[i] > 0.0) w[i] = std::log(prior_probs[i]) + log_mdd[i];
    if (std::isnan(w[i])) w[i] = kNegInf;
    top = std::max(top, w[i]);
  }
  require(top > kNegInf, "model_posteriors: no model with positive evidence");
  double total = 0.0;
  for (double& v : w) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

std::vector<FeatureTable> feature_marginals(const ModelGrid& grid,
                                            const std::vector<double>& posteriors) {
  require(posteriors.size() == grid.specs.size(), "feature_marginals: misaligned inputs");
  const std::vector<std::pair<std::string, int ModelSpec::*>> features = {
      {"d", &ModelSpec::d}, {"s", &ModelSpec::s}, {"r1", &ModelSpec::r1},
      {"r2", &ModelSpec::r2}, {"r3", &ModelSpec::r3}};
  std::vector<FeatureTable> out;
  for (const auto& [name, member] : features) {
    std::map<int, std::pair<double, double>> acc;
    for (std::size_t i = 0; i < grid.specs.size(); ++i) {
      auto& cell = acc[grid.specs[i].*member];
      cell.first += posteriors[i];
      cell.second += grid.prior_probs[i];
    }
    FeatureTable t;
    t.feature = name;
    for (const auto& [value, probs] : acc) {
      t.values.push_back(value);
      t.posterior.push_back(probs.first);
      t.prior.push_back(probs.second);
    }
    out.push_back(std::move(t));
  }
  return out;
}

CompareResult run_comparison(const QuarterlySeries& y, const ModelGrid& grid,
                             const CompareSettings& settings, const ProgressCallback& progress) {
  require(!grid.specs.empty(), "run_comparison: empty grid");
  require(grid.prior_probs.size() == grid.specs.size(), "run_comparison: misaligned priors");
  require(settings.mdd_draws >= 1 && settings.trunc_draws >= 1,
          "run_comparison: draw counts must be positive");
  const std::size_t total = grid.specs.size();
  CompareResult result;
  result.scores.resize(total);

  auto score_model = [&](std::size_t i) {
    ModelScore& sc = result.scores[i];
    sc.spec = grid.specs[i];
    sc.prior_prob = grid.prior_probs[i];
    const auto [d, s, r1, r2, r3] = spec_key(sc.spec);
    sc.seed = derive_seed(settings.seed,
                          static_cast<std::uint64_t>(((((d * 8 + s) * 16 + r1) * 16 + r2) * 16) + r3));
    try {
      const PriorHyper hyper = make_hyper(sc.spec, settings.hyper);
      const CrossProducts xp = cross_products(build_design(y, sc.spec));
      Rng mdd_rng(derive_seed(sc.seed, 0));
      const MddEstimate mdd = estimate_log_mdd(xp, sc.spec, hyper, settings.mdd_draws, mdd_rng);
      sc.log_mdd = mdd.log_mdd;
      sc.mc_se = mdd.mc_se;
      Rng trunc_rng(derive_seed(sc.seed, 1));
      const TruncationEstimate tr = truncation_fraction(sc.spec, hyper, settings.trunc_draws,
                                                        trunc_rng, settings.tol_unit,
                                                        settings.tol_explosive);
      sc.trunc_fraction = tr.fraction;
      sc.trunc_accepted = tr.accepted;
      sc.corrected_log_mdd = sc.log_mdd - std::log(tr.fraction);
    } catch (const NumericalError& e) {
      sc.status = e.what();
      sc.corrected_log_mdd = kNegInf;
    }
  };

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      score_model(i);
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, total);
      }
    }
  };
  const int nworkers = std::max(1, std::min<int>(settings.workers, static_cast<int>(total)));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  }

  std::vector<double> log_mdd(total);
  for (std::size_t i = 0; i < total; ++i) log_mdd[i] = result.scores[i].corrected_log_mdd;
  const std::vector<double> post = model_posteriors(log_mdd, grid.prior_probs);
  for (std::size_t i = 0; i < total; ++i) result.scores[i].posterior_prob = post[i];
  result.features = feature_marginals(grid, post);
  result.ranking.resize(total);
  for (std::size_t i = 0; i < total; ++i) result.ranking[i] = i;
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [&](std::size_t a, std::size_t b) { return post[a] > post[b]; });
  return result;
}

}  // namespace sbvecm
