#include "prone/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace prone {

namespace {

bool all_zero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

std::vector<double> standard_gaussian(std::size_t d, Rng& rng) {
  std::vector<double> g(d);
  do {
    for (double& x : g) x = rng.normal();
  } while (all_zero(g));
  return g;
}

std::vector<double> feature_means(const Dataset& data) {
  std::vector<double> mean(data.dim(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) data.accumulate_row(i, 1.0, mean);
  for (double& m : mean) m /= static_cast<double>(data.size());
  return mean;
}

}  // namespace

std::string_view to_string(ProjectionVariant v) {
  switch (v) {
    case ProjectionVariant::standard:
      return "standard";
    case ProjectionVariant::variance:
      return "variance";
    case ProjectionVariant::covariance:
      return "covariance";
  }
  return "unknown";
}

ProjectionVariant parse_projection_variant(std::string_view name) {
  if (name == "standard") return ProjectionVariant::standard;
  if (name == "variance") return ProjectionVariant::variance;
  if (name == "covariance") return ProjectionVariant::covariance;
  throw std::invalid_argument("unknown projection variant: " + std::string(name));
}

std::vector<double> feature_variances(const Dataset& data) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const auto mean = feature_means(data);

  // Sparse rows skip implicit zeros; account for them afterwards.
  std::vector<double> sq(d, 0.0);
  std::vector<std::size_t> stored(d, 0);
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    data.for_each_stored(i, [&](std::size_t j, double x) {
      const double diff = x - mean[j];
      sq[j] += diff * diff;
      ++stored[j];
      lo[j] = std::min(lo[j], x);
      hi[j] = std::max(hi[j], x);
    });
  }
  std::vector<double> var(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t implicit = n - stored[j];
    if (implicit > 0) {
      lo[j] = std::min(lo[j], 0.0);
      hi[j] = std::max(hi[j], 0.0);
    }
    if (lo[j] == hi[j]) {
      var[j] = 0.0;
      continue;
    }
    var[j] = (sq[j] + static_cast<double>(implicit) * mean[j] * mean[j]) / static_cast<double>(n);
  }
  return var;
}

ProjectionVector sample_direction(const Dataset& data, ProjectionVariant variant, Rng& rng) {
  ProjectionVector pv;
  pv.variant = variant;
  pv.rng_counter = rng.counter();
  const std::size_t d = data.dim();

  if (variant == ProjectionVariant::standard) {
    pv.direction = standard_gaussian(d, rng);
    return pv;
  }

  const auto var = feature_variances(data);
  if (all_zero(var)) {
    pv.direction = standard_gaussian(d, rng);
    return pv;
  }

  if (variant == ProjectionVariant::variance) {
    std::vector<double> v(d);
    do {
      for (std::size_t j = 0; j < d; ++j) v[j] = rng.normal() * std::sqrt(var[j]);
    } while (all_zero(v));
    pv.direction = std::move(v);
    return pv;
  }

  // covariance: v_j = (sum_i x_ij h_i - mean_j sum_i h_i) / sqrt(n)
  const std::size_t n = data.size();
  const auto mean = feature_means(data);
  std::vector<double> v(d);
  std::vector<double> h(n);
  do {
    std::fill(v.begin(), v.end(), 0.0);
    double h_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = rng.normal();
      h_sum += h[i];
    }
    for (std::size_t i = 0; i < n; ++i) data.accumulate_row(i, h[i], v);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < d; ++j) {
      v[j] = var[j] == 0.0 ? 0.0 : (v[j] - mean[j] * h_sum) * scale;
    }
  } while (all_zero(v));
  pv.direction = std::move(v);
  return pv;
}

std::vector<double> project(const Dataset& data, const ProjectionVector& v) {
  if (v.direction.size() != data.dim()) throw std::invalid_argument("project: direction has wrong dimension");
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data.dot(i, v.direction);
  return out;
}

}  // namespace prone
