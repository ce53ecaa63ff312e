#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sbvecm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const std::string t = trim(text);
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size() || t.empty())
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("config: '" + key + "' expects true/false, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ','))
    if (!item.empty()) out.push_back(parse_number<int>(key, item));
  if (out.empty()) throw ConfigError("config: '" + key + "' must not be empty");
  return out;
}

std::string int_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

// Rows separated by ';', entries by ','.
Matrix parse_matrix(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return Matrix(0, 0);
  std::vector<std::vector<double>> rows;
  for (const auto& row : split(t, ';')) {
    std::vector<double> r;
    for (const auto& item : split(row, ',')) r.push_back(parse_number<double>(key, item));
    rows.push_back(std::move(r));
  }
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw ConfigError("config: '" + key + "' has ragged rows");
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

std::string matrix_text(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + fmt(m(i, j));
  }
  return out;
}

std::vector<Matrix> parse_matrix_list(const std::string& key, const std::string& text) {
  std::vector<Matrix> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, '|')) out.push_back(parse_matrix(key, item));
  return out;
}

std::string matrix_list_text(const std::vector<Matrix>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " | " : "") + matrix_text(v[i]);
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& k, auto member) {
      t[k] = [member](RunConfig& c, const std::string& key, const std::string& v) {
        using M = std::remove_reference_t<decltype(c.*member)>;
        c.*member = parse_number<M>(key, v);
      };
    };
    auto spec_num = [&t](const std::string& k, int ModelSpec::*member) {
      t[k] = [member](RunConfig& c, const std::string& key, const std::string& v) {
        c.model.*member = parse_number<int>(key, v);
      };
    };
    auto hyper_num = [&t](const std::string& k, double HyperSettings::*member) {
      t[k] = [member](RunConfig& c, const std::string& key, const std::string& v) {
        c.hyper.*member = parse_number<double>(key, v);
      };
    };
    auto dgp_matrix = [&t](const std::string& k, Matrix DgpConfig::*member) {
      t[k] = [member](RunConfig& c, const std::string& key, const std::string& v) {
        c.dgp.*member = parse_matrix(key, v);
      };
    };

    t["data"] = [](RunConfig& c, const std::string&, const std::string& v) { c.data_path = v; };
    t["log"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.log_series.clear();
      for (const auto& s : split(v, ','))
        if (!s.empty()) c.log_series.push_back(s);
    };
    t["out"] = [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; };
    num("workers", &RunConfig::workers);

    spec_num("model.k", &ModelSpec::k);
    spec_num("model.d", &ModelSpec::d);
    spec_num("model.s", &ModelSpec::s);
    spec_num("model.r1", &ModelSpec::r1);
    spec_num("model.r2", &ModelSpec::r2);
    spec_num("model.r3", &ModelSpec::r3);

    num("grid.k", &RunConfig::grid_k);
    t["grid.d"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.grid_d = parse_int_list(key, v);
    };
    t["grid.s"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.grid_s = parse_int_list(key, v);
    };
    num("grid.r_max", &RunConfig::grid_r_max);

    hyper_num("prior.s_scale", &HyperSettings::s_scale);
    hyper_num("prior.q_offset", &HyperSettings::q_offset);
    hyper_num("prior.p_scale", &HyperSettings::p_scale);
    hyper_num("prior.omega_scale", &HyperSettings::omega_scale);
    t["prior.estimate_nu"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.hyper.estimate_nu = parse_bool(key, v);
    };
    hyper_num("prior.nu", &HyperSettings::nu_fixed);
    hyper_num("prior.s_nu", &HyperSettings::s_nu);
    hyper_num("prior.n_nu", &HyperSettings::n_nu);

    num("mcmc.burn_in", &RunConfig::burn_in);
    num("mcmc.keep", &RunConfig::keep);
    num("mcmc.thin", &RunConfig::thin);
    num("mcmc.seed", &RunConfig::mcmc_seed);
    num("mcmc.max_attempts", &RunConfig::max_attempts);
    num("mcmc.min_acceptance", &RunConfig::min_acceptance);
    t["mcmc.check_stability"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.check_stability = parse_bool(key, v);
    };
    num("stability.tol_unit", &RunConfig::tol_unit);
    num("stability.tol_explosive", &RunConfig::tol_explosive);

    num("mdd.draws", &RunConfig::mdd_draws);
    num("mdd.trunc_draws", &RunConfig::trunc_draws);
    num("mdd.seed", &RunConfig::mdd_seed);

    dgp_matrix("dgp.a1", &DgpConfig::a1);
    dgp_matrix("dgp.b1", &DgpConfig::b1);
    dgp_matrix("dgp.a2", &DgpConfig::a2);
    dgp_matrix("dgp.b2", &DgpConfig::b2);
    dgp_matrix("dgp.sigma", &DgpConfig::sigma);
    auto complex_part = [&t](const std::string& k, CMatrix DgpConfig::*member, bool imag) {
      t[k] = [member, imag](RunConfig& c, const std::string& key, const std::string& v) {
        const Matrix part = parse_matrix(key, v);
        CMatrix& z = c.dgp.*member;
        if (z.rows() != part.rows() || z.cols() != part.cols()) {
          const Matrix keep = imag ? Matrix(z.real()) : Matrix(z.imag());
          z = CMatrix::Zero(part.rows(), part.cols());
          if (keep.rows() == part.rows() && keep.cols() == part.cols()) {
            if (imag) z.real() = keep;
            else z.imag() = keep;
          }
        }
        if (imag) z.imag() = part;
        else z.real() = part;
      };
    };
    complex_part("dgp.a_star_re", &DgpConfig::a_star, false);
    complex_part("dgp.a_star_im", &DgpConfig::a_star, true);
    complex_part("dgp.b_star_re", &DgpConfig::b_star, false);
    complex_part("dgp.b_star_im", &DgpConfig::b_star, true);
    t["dgp.gamma"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.dgp.gamma = parse_matrix_list(key, v);
    };
    t["dgp.total"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.dgp.total = parse_number<int>(key, v);
    };
    t["dgp.discard"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.dgp.discard = parse_number<int>(key, v);
    };
    t["dgp.seed"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.dgp.seed = parse_number<std::uint64_t>(key, v);
    };
    t["estimate.compare_to_dgp"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.compare_to_dgp = parse_bool(key, v);
    };
    return t;
  }();
  return table;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  return parse_key_values(in);
}

RunConfig config_from_key_values(const KeyValues& kv, RunConfig base) {
  const auto& table = setters();
  for (const auto& [key, value] : kv) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("config: unknown key '" + key + "'");
    it->second(base, key, value);
  }
  if (base.workers < 1) throw ConfigError("config: workers must be positive");
  if (base.burn_in < 0 || base.keep < 1 || base.thin < 1)
    throw ConfigError("config: need burn_in >= 0, keep >= 1, thin >= 1");
  if (base.max_attempts < 1) throw ConfigError("config: mcmc.max_attempts must be positive");
  if (base.mdd_draws < 1 || base.trunc_draws < 1)
    throw ConfigError("config: mdd draw counts must be positive");
  if (!(base.tol_unit >= 0.0) || !(base.tol_explosive >= 0.0))
    throw ConfigError("config: stability tolerances must be nonnegative");
  return base;
}

RunConfig load_config(const std::filesystem::path& path) {
  return config_from_key_values(read_key_values(path));
}

KeyValues to_key_values(const RunConfig& c) {
  KeyValues kv;
  auto add = [&kv](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
  add("data", c.data_path);
  std::string logs;
  for (std::size_t i = 0; i < c.log_series.size(); ++i) logs += (i ? "," : "") + c.log_series[i];
  add("log", logs);
  add("out", c.output_dir.string());
  add("workers", std::to_string(c.workers));
  add("model.k", std::to_string(c.model.k));
  add("model.d", std::to_string(c.model.d));
  add("model.s", std::to_string(c.model.s));
  add("model.r1", std::to_string(c.model.r1));
  add("model.r2", std::to_string(c.model.r2));
  add("model.r3", std::to_string(c.model.r3));
  add("grid.k", std::to_string(c.grid_k));
  add("grid.d", int_list(c.grid_d));
  add("grid.s", int_list(c.grid_s));
  add("grid.r_max", std::to_string(c.grid_r_max));
  add("prior.s_scale", fmt(c.hyper.s_scale));
  add("prior.q_offset", fmt(c.hyper.q_offset));
  add("prior.p_scale", fmt(c.hyper.p_scale));
  add("prior.omega_scale", fmt(c.hyper.omega_scale));
  add("prior.estimate_nu", c.hyper.estimate_nu ? "true" : "false");
  add("prior.nu", fmt(c.hyper.nu_fixed));
  add("prior.s_nu", fmt(c.hyper.s_nu));
  add("prior.n_nu", fmt(c.hyper.n_nu));
  add("mcmc.burn_in", std::to_string(c.burn_in));
  add("mcmc.keep", std::to_string(c.keep));
  add("mcmc.thin", std::to_string(c.thin));
  add("mcmc.seed", std::to_string(c.mcmc_seed));
  add("mcmc.max_attempts", std::to_string(c.max_attempts));
  add("mcmc.min_acceptance", fmt(c.min_acceptance));
  add("mcmc.check_stability", c.check_stability ? "true" : "false");
  add("stability.tol_unit", fmt(c.tol_unit));
  add("stability.tol_explosive", fmt(c.tol_explosive));
  add("mdd.draws", std::to_string(c.mdd_draws));
  add("mdd.trunc_draws", std::to_string(c.trunc_draws));
  add("mdd.seed", std::to_string(c.mdd_seed));
  add("dgp.a1", matrix_text(c.dgp.a1));
  add("dgp.b1", matrix_text(c.dgp.b1));
  add("dgp.a2", matrix_text(c.dgp.a2));
  add("dgp.b2", matrix_text(c.dgp.b2));
  add("dgp.a_star_re", matrix_text(c.dgp.a_star.real()));
  add("dgp.a_star_im", matrix_text(c.dgp.a_star.imag()));
  add("dgp.b_star_re", matrix_text(c.dgp.b_star.real()));
  add("dgp.b_star_im", matrix_text(c.dgp.b_star.imag()));
  add("dgp.gamma", matrix_list_text(c.dgp.gamma));
  add("dgp.sigma", matrix_text(c.dgp.sigma));
  add("dgp.total", std::to_string(c.dgp.total));
  add("dgp.discard", std::to_string(c.dgp.discard));
  add("dgp.seed", std::to_string(c.dgp.seed));
  add("estimate.compare_to_dgp", c.compare_to_dgp ? "true" : "false");
  return kv;
}

void write_config(const RunConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path.string());
  for (const auto& [k, v] : to_key_values(cfg)) out << k << " = " << v << '\n';
}

ChainConfig RunConfig::chain() const {
  ChainConfig c;
  c.burn_in = burn_in;
  c.keep = keep;
  c.thin = thin;
  c.seed = mcmc_seed;
  c.max_attempts = max_attempts;
  c.min_acceptance = min_acceptance;
  c.tol_unit = tol_unit;
  c.tol_explosive = tol_explosive;
  c.check_stability = check_stability;
  return c;
}

CompareSettings RunConfig::compare_settings() const {
  CompareSettings s;
  s.hyper = hyper;
  s.mdd_draws = mdd_draws;
  s.trunc_draws = trunc_draws;
  s.seed = mdd_seed;
  s.workers = workers;
  s.tol_unit = tol_unit;
  s.tol_explosive = tol_explosive;
  return s;
}

}  // namespace sbvecm::cli
