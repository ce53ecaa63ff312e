#include "sbvecm/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sbvecm/errors.hpp"

namespace sbvecm {

void ModelSpec::validate() const {
  require(n >= 1, "model spec: n must be positive");
  require(k >= 4, "model spec: lag order k must be at least 4");
  require(d >= 1 && d <= 4, "model spec: deterministic code d must be in 1..4");
  require(s == 0 || s == 1, "model spec: seasonal flag s must be 0 or 1");
  require(r1 >= 0 && r1 <= n && r2 >= 0 && r2 <= n && r3 >= 0 && r3 <= n,
          "model spec: ranks must lie in [0, n]");
}

int ModelSpec::rank(Frequency f) const {
  switch (f) {
    case Frequency::Zero: return r1;
    case Frequency::Pi: return r2;
    case Frequency::Annual: return r3;
  }
  return 0;
}

int ModelSpec::dim(Frequency f) const {
  switch (f) {
    case Frequency::Zero: return m1();
    case Frequency::Pi: return m2();
    case Frequency::Annual: return m3();
  }
  return 0;
}

std::string ModelSpec::label() const {
  std::ostringstream os;
  os << "M_{" << d << "," << s << "," << r1 << "," << r2 << "," << r3 << "}";
  return os.str();
}

std::string QuarterlySeries::date_label(int row) const {
  const int q0 = (start_year * 4 + (start_quarter - 1)) + row;
  std::ostringstream os;
  os << (q0 / 4) << 'Q' << (q0 % 4 + 1);
  return os.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r\"");
    const auto e = cell.find_last_not_of(" \t\r\"");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::pair<int, int> parse_quarter(const std::string& label) {
  const auto q = label.find_first_of("Qq");
  require(q != std::string::npos && q > 0 && q + 1 < label.size(),
          "series csv: date '" + label + "' is not of the form YYYYQn");
  const int year = std::stoi(label.substr(0, q));
  const int quarter = std::stoi(label.substr(q + 1));
  require(quarter >= 1 && quarter <= 4, "series csv: quarter out of range in '" + label + "'");
  return {year, quarter};
}

void check_t(const QuarterlySeries& y, int t) {
  if (t < 5 || t > y.rows())
    throw std::out_of_range("transform: observation " + std::to_string(t) +
                            " needs four presample points within 1.." +
                            std::to_string(y.rows()));
}

Vector lag(const Matrix& levels, int t, int j) {
  return levels.row(t - j - 1).transpose();
}

}  // namespace

QuarterlySeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series csv: " + path.string());
  std::string line;
  auto is_comment = [](const std::string& l) {
    const auto b = l.find_first_not_of(" \t\r");
    return b != std::string::npos && l[b] == '#';
  };
  bool have_header = false;
  while (std::getline(in, line))
    if (!is_comment(line)) {
      have_header = true;
      break;
    }
  require(have_header, "series csv: empty file");
  auto header = split_csv_line(line);
  require(header.size() >= 2, "series csv: need a date column and at least one series");
  require(header[0] == "date", "series csv: first column must be 'date'");

  QuarterlySeries out;
  out.names.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> rows;
  int expected_index = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || is_comment(line)) continue;
    auto cells = split_csv_line(line);
    require(cells.size() == header.size(),
            "series csv: row " + std::to_string(rows.size() + 1) + " has wrong column count");
    auto [year, quarter] = parse_quarter(cells[0]);
    const int index = year * 4 + quarter - 1;
    if (rows.empty()) {
      out.start_year = year;
      out.start_quarter = quarter;
    } else {
      require(index == expected_index, "series csv: dates must be consecutive quarters");
    }
    expected_index = index + 1;
    std::vector<double> row;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      require(!cells[c].empty(), "series csv: missing value at " + cells[0]);
      double v = 0.0;
      const char* first = cells[c].data();
      const char* last = first + cells[c].size();
      const auto [end, ec] = std::from_chars(first, last, v);
      require(ec == std::errc() && end == last && std::isfinite(v),
              "series csv: non-numeric value '" + cells[c] + "' at " + cells[0]);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  out.values.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(out.names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) out.values(r, c) = rows[r][c];
  return out;
}

void write_series_csv(const QuarterlySeries& series, const std::filesystem::path& path,
                      const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write series csv: " + path.string());
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "date";
  for (int j = 0; j < series.dims(); ++j) {
    out << ',' << (j < static_cast<int>(series.names.size()) ? series.names[j]
                                                             : "y" + std::to_string(j + 1));
  }
  out << '\n' << std::setprecision(17);
  for (int r = 0; r < series.rows(); ++r) {
    out << series.date_label(r);
    for (int j = 0; j < series.dims(); ++j) out << ',' << series.values(r, j);
    out << '\n';
  }
}

void apply_log_transform(QuarterlySeries& series, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    auto it = std::find(series.names.begin(), series.names.end(), name);
    require(it != series.names.end(), "log transform: unknown series '" + name + "'");
    const auto j = static_cast<Eigen::Index>(it - series.names.begin());
    require((series.values.col(j).array() > 0.0).all(),
            "log transform: series '" + name + "' has non-positive values");
    series.values.col(j) = series.values.col(j).array().log().matrix();
  }
}

Vector delta4(const QuarterlySeries& y, int t) {
  check_t(y, t);
  return lag(y.values, t, 0) - lag(y.values, t, 4);
}

Vector transform_zero(const QuarterlySeries& y, int t) {
  check_t(y, t);
  const auto& v = y.values;
  return lag(v, t, 1) + lag(v, t, 2) + lag(v, t, 3) + lag(v, t, 4);
}

Vector transform_pi(const QuarterlySeries& y, int t) {
  check_t(y, t);
  const auto& v = y.values;
  return lag(v, t, 1) - lag(v, t, 2) + lag(v, t, 3) - lag(v, t, 4);
}

std::pair<Vector, Vector> transform_annual(const QuarterlySeries& y, int t) {
  check_t(y, t);
  const auto& v = y.values;
  return {lag(v, t, 1) - lag(v, t, 3), lag(v, t, 2) - lag(v, t, 4)};
}

DeterministicTerms deterministic_terms(const ModelSpec& spec, int t) {
  require(spec.d >= 1 && spec.d <= 4, "deterministic terms: invalid code d");
  require(spec.s == 0 || spec.s == 1, "deterministic terms: invalid seasonal flag");
  DeterministicTerms out;
  out.restricted_zero.resize(0);
  out.restricted_pi.resize(0);
  out.restricted_annual.resize(0);
  out.annual_31.resize(0);
  out.annual_32.resize(0);
  out.unrestricted.resize(0);

  const double td = static_cast<double>(t);
  if (spec.d == 1) {
    out.restricted_zero = Vector::Constant(1, td - 2.5);
    out.unrestricted = Vector::Ones(1);
  } else if (spec.d == 2) {
    out.unrestricted = Vector::Ones(1);
  } else if (spec.d == 3) {
    out.restricted_zero = Vector::Ones(1);
  }
  if (spec.s == 1) {
    // exact values on the integer grid avoid 1e-16 residue in the dummies
    const int q = ((t % 4) + 4) % 4;
    static constexpr double cos_half[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double sin_half[4] = {0.0, 1.0, 0.0, -1.0};
    const double c = cos_half[q], s = sin_half[q];
    out.restricted_pi = Vector::Constant(1, (t % 2 == 0) ? 1.0 : -1.0);
    out.annual_31 = Vector::Constant(1, s);
    out.annual_32 = Vector::Constant(1, c);
    out.restricted_annual = CVector::Constant(1, Complex(c, -s));
  }
  return out;
}

Vector regressor_row(const Matrix& levels, const ModelSpec& spec, int t) {
  const int n = spec.n;
  const int k = spec.k;
  if (t <= k || t > levels.rows())
    throw std::out_of_range("regressor row: observation " + std::to_string(t) +
                            " needs k presample points");
  const DeterministicTerms det = deterministic_terms(spec, t);
  const int m1 = spec.m1(), m2 = spec.m2(), m3 = spec.m3(), p4 = spec.gamma_rows();
  Vector row(m1 + m2 + 2 * m3 + p4);
  Eigen::Index o = 0;

  row.segment(o, n) = lag(levels, t, 1) + lag(levels, t, 2) + lag(levels, t, 3) + lag(levels, t, 4);
  o += n;
  row.segment(o, det.restricted_zero.size()) = det.restricted_zero;
  o += det.restricted_zero.size();

  row.segment(o, n) = lag(levels, t, 1) - lag(levels, t, 2) + lag(levels, t, 3) - lag(levels, t, 4);
  o += n;
  row.segment(o, det.restricted_pi.size()) = det.restricted_pi;
  o += det.restricted_pi.size();

  row.segment(o, n) = lag(levels, t, 1) - lag(levels, t, 3);
  o += n;
  row.segment(o, det.annual_31.size()) = det.annual_31;
  o += det.annual_31.size();

  row.segment(o, n) = lag(levels, t, 2) - lag(levels, t, 4);
  o += n;
  row.segment(o, det.annual_32.size()) = det.annual_32;
  o += det.annual_32.size();

  for (int j = 1; j <= spec.lag_blocks(); ++j) {
    row.segment(o, n) = lag(levels, t, j) - lag(levels, t, j + 4);
    o += n;
  }
  row.segment(o, det.unrestricted.size()) = det.unrestricted;
  return row;
}

DesignMatrices build_design(const QuarterlySeries& y, const ModelSpec& spec) {
  spec.validate();
  require(y.dims() == spec.n, "build_design: series dimension does not match spec.n");
  require(y.rows() >= spec.k + 1, "build_design: series too short for lag order k (need T_raw >= k+1)");
  require(y.values.allFinite(), "build_design: series contains non-finite values");

  DesignMatrices dm;
  const int n = spec.n;
  dm.m1 = spec.m1();
  dm.m2 = spec.m2();
  dm.m3 = spec.m3();
  dm.l = spec.l();
  dm.T = y.rows() - spec.k;
  dm.first_t = spec.k + 1;
  const int p4 = spec.gamma_rows();

  dm.z0.resize(dm.T, n);
  dm.z1.resize(dm.T, dm.m1);
  dm.z2.resize(dm.T, dm.m2);
  dm.z31.resize(dm.T, dm.m3);
  dm.z32.resize(dm.T, dm.m3);
  dm.z4.resize(dm.T, p4);
  for (int r = 0; r < dm.T; ++r) {
    const int t = dm.first_t + r;
    const Vector row = regressor_row(y.values, spec, t);
    Eigen::Index o = 0;
    dm.z1.row(r) = row.segment(o, dm.m1).transpose();
    o += dm.m1;
    dm.z2.row(r) = row.segment(o, dm.m2).transpose();
    o += dm.m2;
    dm.z31.row(r) = row.segment(o, dm.m3).transpose();
    o += dm.m3;
    dm.z32.row(r) = row.segment(o, dm.m3).transpose();
    o += dm.m3;
    dm.z4.row(r) = row.segment(o, p4).transpose();
    dm.z0.row(r) = (y.values.row(t - 1) - y.values.row(t - 5));
  }
  return dm;
}

CMatrix DesignMatrices::z3() const {
  CMatrix out(z31.rows(), z31.cols());
  out.real() = -z32;
  out.imag() = -z31;
  return out;
}

CrossProducts cross_products(const DesignMatrices& dm) {
  CrossProducts xp;
  xp.m1 = dm.m1;
  xp.m2 = dm.m2;
  xp.m3 = dm.m3;
  xp.p4 = static_cast<int>(dm.z4.cols());
  xp.n = dm.n();
  xp.T = dm.T;
  xp.o1 = 0;
  xp.o2 = xp.o1 + xp.m1;
  xp.o31 = xp.o2 + xp.m2;
  xp.o32 = xp.o31 + xp.m3;
  xp.o4 = xp.o32 + xp.m3;
  xp.o0 = xp.o4 + xp.p4;
  Matrix all(dm.T, xp.o0 + xp.n);
  all << dm.z1, dm.z2, dm.z31, dm.z32, dm.z4, dm.z0;
  xp.gram = all.transpose() * all;
  return xp;
}

}  // namespace sbvecm
