#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "sbvecm/errors.hpp"

namespace sbvecm::cli {

namespace {

const char* frequency_name(Frequency f) {
  switch (f) {
    case Frequency::Zero: return "zero";
    case Frequency::Pi: return "pi";
    case Frequency::Annual: return "annual";
  }
  return "";
}

void prepare_output(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.output_dir.string());
  write_config(cfg, cfg.output_dir / "resolved.conf");
}

// Pads beta with zero rows so it lives in the m-dimensional space of the model.
CMatrix pad_rows(const CMatrix& beta, Eigen::Index m) {
  CMatrix out = CMatrix::Zero(m, beta.cols());
  out.topRows(std::min(m, beta.rows())) = beta.topRows(std::min(m, beta.rows()));
  return out;
}

// Running mean of a matrix-valued functional.
struct MeanAccumulator {
  Matrix sum;
  long count = 0;
  void add(const Matrix& m) {
    if (count == 0) sum = Matrix::Zero(m.rows(), m.cols());
    sum += m;
    ++count;
  }
  Matrix mean() const { return count ? Matrix(sum / static_cast<double>(count)) : sum; }
};

}  // namespace

QuarterlySeries load_data(const RunConfig& cfg) {
  if (cfg.data_path.empty()) throw ConfigError("no data file given (--data or data = ...)");
  if (!std::filesystem::exists(cfg.data_path))
    throw ConfigError("data file does not exist: " + cfg.data_path);
  QuarterlySeries y = read_series_csv(cfg.data_path);
  apply_log_transform(y, cfg.log_series);
  return y;
}

SimulateOutcome cmd_simulate(const RunConfig& cfg, const LogSink& log) {
  prepare_output(cfg);
  SimulateOutcome out;
  out.sim = simulate(cfg.dgp);
  out.csv_path = cfg.output_dir / "simulated.csv";
  write_series_csv(out.sim.series, out.csv_path, config_comments(cfg, "simulate"));

  Json j;
  j["command"] = "simulate";
  j["config"] = config_json(cfg);
  j["seed"] = cfg.dgp.seed;
  j["rows"] = out.sim.series.rows();
  j["explosive"] = out.sim.explosive;
  j["companion_moduli"] = out.sim.stability.eigen_moduli;
  j["unit_roots"] = {{"one", out.sim.stability.count_one},
                     {"minus_one", out.sim.stability.count_minus_one},
                     {"plus_i", out.sim.stability.count_plus_i},
                     {"minus_i", out.sim.stability.count_minus_i}};
  write_json(j, cfg.output_dir / "simulate.json");
  if (log) {
    log("simulated " + std::to_string(out.sim.series.rows()) + " observations to " +
        out.csv_path.string());
    if (out.sim.explosive) log("warning: the configured process is explosive");
  }
  return out;
}

EstimateOutcome cmd_estimate(const RunConfig& cfg, const LogSink& log) {
  const QuarterlySeries y = load_data(cfg);
  prepare_output(cfg);
  EstimateOutcome out;
  out.spec = cfg.model;
  out.spec.n = y.dims();
  out.spec.validate();
  const ModelSpec& spec = out.spec;
  const PriorHyper hyper = make_hyper(spec, cfg.hyper);
  const DesignMatrices dm = build_design(y, spec);
  const CrossProducts xp = cross_products(dm);

  const std::vector<Frequency> freqs{Frequency::Zero, Frequency::Pi, Frequency::Annual};
  std::vector<ProjectorAccumulator> acc;
  for (Frequency f : freqs) acc.emplace_back(spec.dim(f), spec.rank(f));
  std::vector<double> nu_trace, sigma_trace;
  std::vector<std::vector<double>> proj_trace(freqs.size());
  MeanAccumulator sigma_mean, gamma_mean, pi1, pi2, pi3, pi4;
  double nu_sum = 0.0;

  const ChainConfig chain_cfg = cfg.chain();
  if (log)
    log("running " + spec.label() + ": " + std::to_string(chain_cfg.burn_in) + " burn-in, " +
        std::to_string(chain_cfg.keep) + " kept draws");
  out.chain = run_chain(xp, spec, hyper, chain_cfg, [&](const ParamState& s) {
    if (spec.r1 > 0) acc[0].add(s.beta1);
    if (spec.r2 > 0) acc[1].add(s.beta2);
    if (spec.r3 > 0) acc[2].add(s.beta_star);
    nu_trace.push_back(s.nu);
    nu_sum += s.nu;
    sigma_trace.push_back(s.sigma(0, 0));
    sigma_mean.add(s.sigma);
    if (spec.gamma_rows() > 0) gamma_mean.add(s.gamma);
    const LongRunMatrices lr = long_run_matrices(s, spec);
    pi1.add(lr.pi1);
    pi2.add(lr.pi2);
    pi3.add(lr.pi3);
    pi4.add(lr.pi4);
    if (spec.r1 > 0) proj_trace[0].push_back((s.beta1 * s.beta1.transpose())(0, 0));
    if (spec.r2 > 0) proj_trace[1].push_back((s.beta2 * s.beta2.transpose())(0, 0));
    if (spec.r3 > 0) proj_trace[2].push_back((s.beta_star * s.beta_star.adjoint())(0, 0).real());
  });

  const ParamState truth = cfg.compare_to_dgp ? cfg.dgp.state() : ParamState{};
  Json spaces = Json::object();
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (spec.rank(freqs[i]) == 0) continue;
    FrequencyReport fr;
    fr.freq = freqs[i];
    fr.name = frequency_name(freqs[i]);
    fr.summary = summarize_space(acc[i]);
    Json j = to_json(fr.summary);
    if (cfg.compare_to_dgp) {
      CMatrix true_beta;
      switch (freqs[i]) {
        case Frequency::Zero: true_beta = truth.beta1.cast<Complex>(); break;
        case Frequency::Pi: true_beta = truth.beta2.cast<Complex>(); break;
        case Frequency::Annual: true_beta = truth.beta_star; break;
      }
      if (true_beta.cols() == fr.summary.beta_hat.cols()) {
        fr.distance_to_dgp = space_distance(pad_rows(true_beta, spec.dim(freqs[i])),
                                            fr.summary.beta_hat);
        j["distance_to_dgp"] = fr.distance_to_dgp;
      } else {
        j["distance_to_dgp"] = nullptr;
      }
    }
    spaces[fr.name] = j;
    out.spaces.push_back(std::move(fr));
  }

  Json ess = Json::object();
  if (hyper.estimate_nu) ess["nu"] = effective_sample_size(nu_trace);
  ess["sigma_11"] = effective_sample_size(sigma_trace);
  for (std::size_t i = 0; i < freqs.size(); ++i)
    if (!proj_trace[i].empty())
      ess[std::string("projector_11_") + frequency_name(freqs[i])] =
          effective_sample_size(proj_trace[i]);

  Json& r = out.report;
  r["command"] = "estimate";
  r["config"] = config_json(cfg);
  r["model"] = to_json(spec);
  r["chain"] = {{"seed", out.chain.seed},
                {"burn_in", chain_cfg.burn_in},
                {"keep", chain_cfg.keep},
                {"thin", chain_cfg.thin},
                {"attempted", out.chain.attempted},
                {"accepted", out.chain.accepted},
                {"acceptance_rate", out.chain.acceptance_rate()}};
  r["ess"] = ess;
  r["posterior_mean"] = {{"sigma", to_json(sigma_mean.mean())},
                         {"nu", nu_sum / static_cast<double>(std::max<std::size_t>(1, nu_trace.size()))},
                         {"gamma", to_json(gamma_mean.mean())},
                         {"pi1", to_json(pi1.mean())},
                         {"pi2", to_json(pi2.mean())},
                         {"pi3", to_json(pi3.mean())},
                         {"pi4", to_json(pi4.mean())}};
  r["spaces"] = spaces;
  write_json(r, cfg.output_dir / "estimate.json");

  const auto comments = config_comments(cfg, "estimate");
  for (const auto& fr : out.spaces) {
    const CMatrix& b = fr.summary.beta_hat;
    std::vector<std::string> header{"row"};
    const bool cplx = fr.freq == Frequency::Annual;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (cplx) {
        header.push_back("re_" + std::to_string(j + 1));
        header.push_back("im_" + std::to_string(j + 1));
      } else {
        header.push_back("beta_" + std::to_string(j + 1));
      }
    }
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      std::vector<std::string> row{std::to_string(i + 1)};
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        row.push_back(format_double(b(i, j).real()));
        if (cplx) row.push_back(format_double(b(i, j).imag()));
      }
      rows.push_back(std::move(row));
    }
    write_table_csv(cfg.output_dir / ("beta_" + fr.name + ".csv"), comments, header, rows);
  }

  // beta_hat' y~_t paths; the annual one is conj(beta*)' y~(3)_t
  std::vector<std::string> header{"date"};
  std::vector<Matrix> columns;
  for (const auto& fr : out.spaces) {
    const CMatrix& b = fr.summary.beta_hat;
    CMatrix dev;
    switch (fr.freq) {
      case Frequency::Zero: dev = dm.z1.cast<Complex>() * b; break;
      case Frequency::Pi: dev = dm.z2.cast<Complex>() * b; break;
      case Frequency::Annual: dev = dm.z3() * b.conjugate(); break;
    }
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (fr.freq == Frequency::Annual) {
        header.push_back("annual_re_" + std::to_string(j + 1));
        header.push_back("annual_im_" + std::to_string(j + 1));
        columns.push_back(dev.col(j).real());
        columns.push_back(dev.col(j).imag());
      } else {
        header.push_back(fr.name + "_" + std::to_string(j + 1));
        columns.push_back(dev.col(j).real());
      }
    }
  }
  std::vector<std::vector<std::string>> rows;
  for (int t = 0; t < dm.T; ++t) {
    std::vector<std::string> row{y.date_label(dm.first_t - 1 + t)};
    for (const auto& c : columns) row.push_back(format_double(c(t)));
    rows.push_back(std::move(row));
  }
  write_table_csv(cfg.output_dir / "deviations.csv", comments, header, rows);
  if (log)
    log("acceptance rate " + format_double(out.chain.acceptance_rate()) + "; report in " +
        (cfg.output_dir / "estimate.json").string());
  return out;
}

CompareOutcome cmd_compare(const RunConfig& cfg, const LogSink& log) {
  const QuarterlySeries y = load_data(cfg);
  prepare_output(cfg);
  CompareOutcome out;
  const int n = y.dims();
  const int r_max = cfg.grid_r_max < 0 ? n : cfg.grid_r_max;
  if (r_max > n) throw ConfigError("grid.r_max exceeds the number of series");
  out.grid = enumerate_grid(n, cfg.grid_k, cfg.grid_d, cfg.grid_s, r_max);
  if (log)
    log("comparing " + std::to_string(out.grid.specs.size()) + " models with " +
        std::to_string(cfg.mdd_draws) + " prior draws each");
  ProgressCallback progress;
  if (log) {
    progress = [&](std::size_t done, std::size_t total) {
      if (done == total || done % std::max<std::size_t>(1, total / 10) == 0)
        log("  " + std::to_string(done) + "/" + std::to_string(total) + " models scored");
    };
  }
  out.result = run_comparison(y, out.grid, cfg.compare_settings(), progress);

  const auto comments = config_comments(cfg, "compare");
  std::vector<std::vector<std::string>> rows;
  Json models = Json::array();
  for (std::size_t rank = 0; rank < out.result.ranking.size(); ++rank) {
    const ModelScore& sc = out.result.scores[out.result.ranking[rank]];
    rows.push_back({std::to_string(rank + 1), std::to_string(sc.spec.d), std::to_string(sc.spec.s),
                    std::to_string(sc.spec.r1), std::to_string(sc.spec.r2),
                    std::to_string(sc.spec.r3), format_double(sc.log_mdd),
                    format_double(sc.mc_se), format_double(sc.trunc_fraction),
                    format_double(sc.corrected_log_mdd), format_double(sc.prior_prob),
                    format_double(sc.posterior_prob), std::to_string(sc.seed),
                    "\"" + sc.status + "\""});
    Json m = to_json(sc.spec);
    m["rank"] = rank + 1;
    m["log_mdd"] = std::isfinite(sc.log_mdd) ? Json(sc.log_mdd) : Json(nullptr);
    m["mc_se"] = sc.mc_se;
    m["trunc_fraction"] = sc.trunc_fraction;
    m["trunc_accepted"] = sc.trunc_accepted;
    m["corrected_log_mdd"] =
        std::isfinite(sc.corrected_log_mdd) ? Json(sc.corrected_log_mdd) : Json(nullptr);
    m["prior_prob"] = sc.prior_prob;
    m["posterior_prob"] = sc.posterior_prob;
    m["seed"] = sc.seed;
    m["status"] = sc.status;
    models.push_back(std::move(m));
  }
  write_table_csv(cfg.output_dir / "models.csv", comments,
                  {"rank", "d", "s", "r1", "r2", "r3", "log_mdd", "mc_se", "trunc_fraction",
                   "corrected_log_mdd", "prior_prob", "posterior_prob", "seed", "status"},
                  rows);

  std::vector<std::vector<std::string>> frows;
  Json features = Json::object();
  for (const auto& t : out.result.features) {
    Json ft = Json::array();
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      frows.push_back({t.feature, std::to_string(t.values[i]), format_double(t.posterior[i]),
                       format_double(t.prior[i])});
      ft.push_back({{"value", t.values[i]}, {"posterior", t.posterior[i]}, {"prior", t.prior[i]}});
    }
    features[t.feature] = ft;
  }
  write_table_csv(cfg.output_dir / "features.csv", comments,
                  {"feature", "value", "posterior", "prior"}, frows);

  {
    std::ofstream dl(cfg.output_dir / "dedup_log.txt");
    if (!dl) throw std::runtime_error("cannot write dedup_log.txt");
    for (const auto& c : comments) dl << "# " << c << '\n';
    for (const auto& line : out.grid.dedup_log) dl << line << '\n';
  }

  Json j;
  j["command"] = "compare";
  j["config"] = config_json(cfg);
  j["grid_size"] = out.grid.specs.size();
  j["models"] = models;
  j["features"] = features;
  j["dedup_log"] = out.grid.dedup_log;
  write_json(j, cfg.output_dir / "compare.json");
  if (log && !out.result.ranking.empty()) {
    const ModelScore& top = out.result.scores[out.result.ranking.front()];
    log("most probable model " + top.spec.label() + " with p = " +
        format_double(top.posterior_prob));
  }
  return out;
}

}  // namespace sbvecm::cli
