#include "prone/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "prone/rng.hpp"

namespace prone {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value");
  return v;
}

long long parse_integer(std::string_view field, std::size_t line) {
  field = trim(field);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "not an integer: '" + std::string(field) + "'");
  }
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

Dataset Dataset::from_dense(std::size_t n, std::size_t d, std::vector<double> values) {
  if (n == 0 || d == 0) throw std::invalid_argument("Dataset: n and d must be positive");
  if (values.size() != n * d) throw std::invalid_argument("Dataset: expected n * d values");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite value");
  }
  Dataset ds;
  ds.n_ = n;
  ds.d_ = d;
  ds.values_ = std::move(values);
  return ds;
}

Dataset Dataset::from_sparse(std::size_t d, std::vector<std::size_t> row_offsets,
                             std::vector<std::uint32_t> columns, std::vector<double> values) {
  if (d == 0 || row_offsets.size() < 2) throw std::invalid_argument("Dataset: n and d must be positive");
  if (row_offsets.front() != 0 || row_offsets.back() != values.size() || columns.size() != values.size()) {
    throw std::invalid_argument("Dataset: inconsistent CSR arrays");
  }
  for (std::size_t i = 0; i + 1 < row_offsets.size(); ++i) {
    if (row_offsets[i] > row_offsets[i + 1]) throw std::invalid_argument("Dataset: decreasing row offsets");
    for (std::size_t p = row_offsets[i]; p < row_offsets[i + 1]; ++p) {
      if (columns[p] >= d) throw std::invalid_argument("Dataset: column index out of range");
      if (p > row_offsets[i] && columns[p] <= columns[p - 1]) {
        throw std::invalid_argument("Dataset: column indices must be strictly increasing");
      }
      if (!std::isfinite(values[p])) throw std::invalid_argument("Dataset: non-finite value");
    }
  }
  Dataset ds;
  ds.n_ = row_offsets.size() - 1;
  ds.d_ = d;
  ds.sparse_ = true;
  ds.offsets_ = std::move(row_offsets);
  ds.columns_ = std::move(columns);
  ds.values_ = std::move(values);
  return ds;
}

double Dataset::dot(std::size_t i, std::span<const double> v) const {
  double acc = 0.0;
  if (sparse_) {
    const auto row = sparse_row(i);
    for (std::size_t p = 0; p < row.columns.size(); ++p) acc += row.values[p] * v[row.columns[p]];
  } else {
    const double* x = values_.data() + i * d_;
    for (std::size_t j = 0; j < d_; ++j) acc += x[j] * v[j];
  }
  return acc;
}

void Dataset::accumulate_row(std::size_t i, double scale, std::span<double> out) const {
  for_each_stored(i, [&](std::size_t j, double x) { out[j] += scale * x; });
}

double Dataset::squared_distance(std::size_t i, std::span<const double> c) const {
  if (!sparse_) {
    const double* x = values_.data() + i * d_;
    double acc = 0.0;
    for (std::size_t j = 0; j < d_; ++j) {
      const double diff = x[j] - c[j];
      acc += diff * diff;
    }
    return acc;
  }
  double c_sqnorm = 0.0;
  for (double v : c) c_sqnorm += v * v;
  return squared_distance(i, c, c_sqnorm);
}

double Dataset::squared_distance(std::size_t i, std::span<const double> c, double c_sqnorm) const {
  if (!sparse_) return squared_distance(i, c);
  const auto row = sparse_row(i);
  double acc = c_sqnorm;
  for (std::size_t p = 0; p < row.columns.size(); ++p) {
    const double cj = c[row.columns[p]];
    const double diff = row.values[p] - cj;
    acc += diff * diff - cj * cj;
  }
  return acc > 0.0 ? acc : 0.0;
}

std::vector<double> Dataset::row(std::size_t i) const {
  std::vector<double> out(d_, 0.0);
  for_each_stored(i, [&](std::size_t j, double x) { out[j] = x; });
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  if (rows.empty()) throw std::invalid_argument("Dataset::subset: no rows");
  if (!sparse_) {
    std::vector<double> values;
    values.reserve(rows.size() * d_);
    for (std::size_t i : rows) {
      const auto r = dense_row(i);
      values.insert(values.end(), r.begin(), r.end());
    }
    return from_dense(rows.size(), d_, std::move(values));
  }
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> columns;
  std::vector<double> values;
  for (std::size_t i : rows) {
    const auto r = sparse_row(i);
    columns.insert(columns.end(), r.columns.begin(), r.columns.end());
    values.insert(values.end(), r.values.begin(), r.values.end());
    offsets.push_back(values.size());
  }
  return from_sparse(d_, std::move(offsets), std::move(columns), std::move(values));
}

Dataset Dataset::to_dense() const {
  if (!sparse_) return *this;
  std::vector<double> values(n_ * d_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for_each_stored(i, [&](std::size_t j, double x) { values[i * d_ + j] = x; });
  }
  return from_dense(n_, d_, std::move(values));
}

Dataset Dataset::to_sparse() const {
  if (sparse_) return *this;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> columns;
  std::vector<double> values;
  for (std::size_t i = 0; i < n_; ++i) {
    const auto r = dense_row(i);
    for (std::size_t j = 0; j < d_; ++j) {
      if (r[j] != 0.0) {
        columns.push_back(static_cast<std::uint32_t>(j));
        values.push_back(r[j]);
      }
    }
    offsets.push_back(values.size());
  }
  return from_sparse(d_, std::move(offsets), std::move(columns), std::move(values));
}

// ---------------------------------------------------------------------------
// Text formats

Dataset parse_dense_csv(std::istream& in, bool has_header) {
  std::vector<double> values;
  std::size_t d = 0;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (has_header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    std::size_t fields = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_real(rest.substr(0, comma), line_no));
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (n == 0) {
      d = fields;
    } else if (fields != d) {
      throw ParseError(line_no, "expected " + std::to_string(d) + " fields, found " + std::to_string(fields));
    }
    ++n;
  }
  if (n == 0) throw ParseError(line_no, "no data rows");
  return Dataset::from_dense(n, d, std::move(values));
}

Dataset load_dense_csv(const std::filesystem::path& path, bool has_header) {
  auto in = open_input(path);
  return parse_dense_csv(in, has_header);
}

Dataset parse_sparse(std::istream& in) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> columns;
  std::vector<double> values;
  std::size_t declared_d = 0;
  std::size_t max_index_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = trim(line);
    if (line_no == 1 && rest.starts_with("#d")) {
      const long long d = parse_integer(rest.substr(2), line_no);
      if (d < 1) throw ParseError(line_no, "dimension must be positive");
      declared_d = static_cast<std::size_t>(d);
      continue;
    }
    const std::size_t row_begin = values.size();
    while (!rest.empty()) {
      const auto space = rest.find(' ');
      const std::string_view token = rest.substr(0, space);
      rest = space == std::string_view::npos ? std::string_view{} : trim(rest.substr(space + 1));
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "expected index:value, got '" + std::string(token) + "'");
      const long long index = parse_integer(token.substr(0, colon), line_no);
      if (index < 0) throw ParseError(line_no, "negative index");
      if (index > 0xffffffffLL - 1) throw ParseError(line_no, "index too large");
      if (values.size() > row_begin && static_cast<std::uint32_t>(index) <= columns.back()) {
        throw ParseError(line_no, "indices must be strictly increasing");
      }
      columns.push_back(static_cast<std::uint32_t>(index));
      values.push_back(parse_real(token.substr(colon + 1), line_no));
      max_index_plus_one = std::max(max_index_plus_one, static_cast<std::size_t>(index) + 1);
    }
    offsets.push_back(values.size());
  }
  if (offsets.size() < 2) throw ParseError(line_no, "no data rows");
  if (declared_d != 0 && max_index_plus_one > declared_d) {
    throw ParseError(0, "index exceeds declared dimension " + std::to_string(declared_d));
  }
  const std::size_t d = declared_d != 0 ? declared_d : std::max<std::size_t>(max_index_plus_one, 1);
  return Dataset::from_sparse(d, std::move(offsets), std::move(columns), std::move(values));
}

Dataset load_sparse(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_sparse(in);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const Dataset& data) {
  std::string line;
  for (std::size_t i = 0; i < data.size(); ++i) {
    line.clear();
    const auto r = data.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) line += ',';
      line += format_double(r[j]);
    }
    line += '\n';
    out << line;
  }
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, data);
}

void write_csv(std::ostream& out, const CenterSet& centers) {
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const auto c = centers[j];
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (t) out << ',';
      out << format_double(c[t]);
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Generators

Dataset gen_adversarial_gaussian(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("gen_adversarial_gaussian: m must be positive");
  constexpr std::size_t d = 4;
  const std::size_t half = 4 * m;
  const std::size_t n = 2 * half + 5;
  Rng rng(seed);
  std::vector<double> values(n * d, 0.0);
  for (std::size_t axis = 0; axis < d; ++axis) {
    for (std::size_t p = 0; p < m; ++p) {
      double* x = values.data() + (axis * m + p) * d;
      for (std::size_t j = 0; j < d; ++j) x[j] = rng.normal();
      x[axis] += kAdversarialOffset;
    }
  }
  for (std::size_t i = 0; i < half * d; ++i) values[half * d + i] = -values[i];
  return Dataset::from_dense(n, d, std::move(values));
}

GaussianMixture gen_gaussian_mixture(std::size_t k, std::size_t per_cluster, std::size_t d,
                                     double separation, std::uint64_t seed) {
  if (k == 0 || per_cluster == 0 || d == 0) throw std::invalid_argument("gen_gaussian_mixture: sizes must be positive");
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw std::invalid_argument("gen_gaussian_mixture: separation must be positive");
  }
  Rng rng(seed);
  CenterSet centers(k, d);
  for (std::size_t c = 0; c < k; ++c) {
    for (double& v : centers[c]) v = separation * rng.uniform01();
  }
  const std::size_t n = k * per_cluster;
  std::vector<double> values(n * d);
  std::vector<std::uint32_t> labels(n);
  for (std::size_t c = 0; c < k; ++c) {
    const auto center = centers[c];
    for (std::size_t p = 0; p < per_cluster; ++p) {
      const std::size_t i = c * per_cluster + p;
      labels[i] = static_cast<std::uint32_t>(c);
      for (std::size_t j = 0; j < d; ++j) values[i * d + j] = center[j] + rng.normal();
    }
  }
  return {Dataset::from_dense(n, d, std::move(values)), std::move(centers), std::move(labels)};
}

}  // namespace prone
