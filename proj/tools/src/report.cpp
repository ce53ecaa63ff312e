#include "report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace sbvecm::cli {

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CMatrix& m) {
  return Json{{"re", to_json(Matrix(m.real()))}, {"im", to_json(Matrix(m.imag()))}};
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const ModelSpec& s) {
  return Json{{"label", s.label()}, {"n", s.n},   {"k", s.k},   {"d", s.d},
              {"s", s.s},           {"r1", s.r1}, {"r2", s.r2}, {"r3", s.r3}};
}

Json to_json(const SpaceSummary& s) {
  Json j;
  j["rank"] = s.beta_hat.cols();
  j["dim"] = s.beta_hat.rows();
  j["draws"] = s.draws;
  j["tau2"] = std::isfinite(s.tau2) ? Json(s.tau2) : Json(nullptr);
  j["eigenvalues"] = to_json(s.eigenvalues);
  j["tie_at_rank"] = s.tie_at_rank;
  j["beta_hat"] = to_json(s.beta_hat);
  return j;
}

Json config_json(const RunConfig& cfg) {
  Json j = Json::object();
  for (const auto& [k, v] : to_key_values(cfg)) j[k] = v;
  return j;
}

std::vector<std::string> config_comments(const RunConfig& cfg, const std::string& command) {
  std::vector<std::string> out{"command = " + command};
  for (const auto& [k, v] : to_key_values(cfg)) out.push_back(k + " = " + v);
  return out;
}

void write_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace sbvecm::cli
