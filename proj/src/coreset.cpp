#include "prone/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "prone/pipeline.hpp"
#include "prone/seeding1d.hpp"

namespace prone {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::nanoseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0);
}

}  // namespace

SensitivityDistribution sensitivity_distribution(const Dataset& data, const ClusteringModel& model) {
  const std::size_t n = data.size();
  const std::size_t k = model.centers.size();
  if (model.assignment.size() != n) throw std::invalid_argument("sensitivity_distribution: model must cover every point");
  if (k == 0 || model.centers.dim() != data.dim()) throw std::invalid_argument("sensitivity_distribution: bad centers");

  std::vector<std::size_t> cluster_size(k, 0);
  for (std::uint32_t j : model.assignment) {
    if (j >= k) throw std::invalid_argument("sensitivity_distribution: label out of range");
    ++cluster_size[j];
  }
  std::vector<double> cost(n);
  double total_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d2 = data.squared_distance(i, model.centers[model.assignment[i]]);
    cost[i] = model.z == 2.0 ? d2 : pow_z(std::sqrt(d2), model.z);
    total_cost += cost[i];
  }

  SensitivityDistribution dist;
  dist.clusters = static_cast<std::size_t>(std::count_if(cluster_size.begin(), cluster_size.end(),
                                                         [](std::size_t c) { return c > 0; }));
  dist.probabilities.resize(n);
  double mass_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double share = total_cost > 0.0 ? cost[i] / total_cost : 0.0;
    const double m = share + 1.0 / static_cast<double>(cluster_size[model.assignment[i]]);
    dist.probabilities[i] = m;
    mass_total += m;
  }
  const double analytic = (total_cost > 0.0 ? 1.0 : 0.0) + static_cast<double>(dist.clusters);
  if (std::fabs(mass_total - analytic) > 1e-9 * analytic) {
    throw std::logic_error("sensitivity_distribution: masses do not sum to 1 + k'");
  }
  for (double& p : dist.probabilities) p /= analytic;
  dist.mass_total = mass_total;
  return dist;
}

SensitivityDistribution lightweight_distribution(const Dataset& data) {
  const std::size_t n = data.size();
  std::vector<double> mean(data.dim(), 0.0);
  for (std::size_t i = 0; i < n; ++i) data.accumulate_row(i, 1.0, mean);
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<double> dist2(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dist2[i] = data.squared_distance(i, mean);
    total += dist2[i];
  }
  SensitivityDistribution dist;
  dist.clusters = 1;
  dist.probabilities.resize(n);
  const double uniform = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    // With no spread at all both halves are uniform.
    dist.probabilities[i] = total > 0.0 ? uniform + dist2[i] / (2.0 * total) : 2.0 * uniform;
  }
  dist.mass_total = 1.0;
  return dist;
}

AliasTable::AliasTable(std::span<const double> probabilities)
    : accept_(probabilities.size(), 1.0), alias_(probabilities.size()) {
  const std::size_t n = probabilities.size();
  if (n == 0) throw std::invalid_argument("AliasTable: empty distribution");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("AliasTable: invalid probability");
    total += p;
  }
  if (!(total > 0.0)) throw std::invalid_argument("AliasTable: zero total probability");

  std::vector<double> scaled(n);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    alias_[i] = i;
    scaled[i] = probabilities[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::size_t i : small) accept_[i] = 1.0;
  for (std::size_t i : large) accept_[i] = 1.0;
}

std::size_t AliasTable::sample(Rng& rng) const {
  const std::size_t i = rng.uniform_index(accept_.size());
  return rng.uniform01() < accept_[i] ? i : alias_[i];
}

WeightedCoreset sample_coreset(const Dataset& data, const SensitivityDistribution& dist, std::size_t s, Rng& rng) {
  if (s < 1) throw std::invalid_argument("sample_coreset: need s >= 1");
  if (dist.probabilities.size() != data.size()) throw std::invalid_argument("sample_coreset: distribution size mismatch");
  const AliasTable table(dist.probabilities);
  std::vector<std::size_t> rows(s);
  std::vector<double> weights(s);
  for (std::size_t t = 0; t < s; ++t) {
    rows[t] = table.sample(rng);
    weights[t] = 1.0 / (static_cast<double>(s) * dist.probabilities[rows[t]]);
  }
  return {data.subset(rows), std::move(weights), std::move(rows)};
}

CenterSet cluster_coreset(const WeightedCoreset& coreset, std::size_t k, Rng& rng, const LloydOptions& lloyd) {
  const auto seeded = kmeanspp_seed(coreset.points, k, 2.0, rng, coreset.weights);
  return lloyd_iterate(coreset.points, seeded, lloyd, coreset.weights).model.centers;
}

std::size_t coreset_size_for(std::size_t n, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("coreset fraction must be positive");
  return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n)));
}

BoostedResult boosted_prone(const Dataset& data, std::size_t k, double z, double alpha, Rng& rng) {
  const std::size_t n = data.size();
  const std::size_t s = coreset_size_for(n, alpha);
  if (s < k) {
    throw std::invalid_argument("boosted_prone: coreset size " + std::to_string(s) + " is smaller than k = " +
                                std::to_string(k));
  }
  auto t0 = Clock::now();
  ProneConfig cfg;
  cfg.k = k;
  cfg.z = z;
  const auto initial = prone(data, cfg, rng);
  const auto prone_time = since(t0);

  t0 = Clock::now();
  WeightedCoreset coreset = [&] {
    if (s >= n) {
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      return WeightedCoreset{data, std::vector<double>(n, 1.0), std::move(all)};
    }
    return sample_coreset(data, sensitivity_distribution(data, initial.model), s, rng);
  }();
  const auto coreset_time = since(t0);

  t0 = Clock::now();
  auto seeded = kmeanspp_seed(coreset.points, k, z, rng, coreset.weights);
  const auto seed_time = since(t0);
  return BoostedResult{.centers = std::move(seeded.centers),
                       .coreset = std::move(coreset),
                       .z = z,
                       .exhausted = seeded.exhausted,
                       .prone_time = prone_time,
                       .coreset_time = coreset_time,
                       .seed_time = seed_time};
}

void write_weighted_csv(std::ostream& out, const WeightedCoreset& coreset) {
  std::string line;
  for (std::size_t i = 0; i < coreset.size(); ++i) {
    line = format_double(coreset.weights[i]);
    for (double v : coreset.points.row(i)) {
      line += ',';
      line += format_double(v);
    }
    line += '\n';
    out << line;
  }
}

void write_weighted_csv(const std::filesystem::path& path, const WeightedCoreset& coreset) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_weighted_csv(out, coreset);
}

WeightedCoreset parse_weighted_csv(std::istream& in) {
  const Dataset table = parse_dense_csv(in, false);
  if (table.dim() < 2) throw ParseError(0, "weighted CSV needs a weight column and at least one feature");
  const std::size_t n = table.size();
  const std::size_t d = table.dim() - 1;
  std::vector<double> weights(n);
  std::vector<double> values;
  values.reserve(n * d);
  std::vector<std::size_t> source(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = table.dense_row(i);
    if (!(row[0] > 0.0)) throw ParseError(i + 1, "weights must be positive");
    weights[i] = row[0];
    values.insert(values.end(), row.begin() + 1, row.end());
    source[i] = i;
  }
  return {Dataset::from_dense(n, d, std::move(values)), std::move(weights), std::move(source)};
}

}  // namespace prone
