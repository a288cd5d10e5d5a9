#include "prone/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "prone/seeding1d.hpp"

namespace prone {

namespace {

void check_weights(const Dataset& data, std::span<const double> weights) {
  if (!weights.empty() && weights.size() != data.size()) {
    throw std::invalid_argument("weights: expected one weight per point");
  }
}

void check_centers(const Dataset& data, const CenterSet& centers) {
  if (centers.empty()) throw std::invalid_argument("empty center set");
  if (centers.dim() != data.dim()) throw std::invalid_argument("center dimension does not match data");
}

double weight_of(std::span<const double> weights, std::size_t i) { return weights.empty() ? 1.0 : weights[i]; }

// p^z from a squared distance.
double power_from_squared(double d2, double z) { return z == 2.0 ? d2 : pow_z(std::sqrt(d2), z); }

std::vector<double> squared_norms(const CenterSet& centers) {
  std::vector<double> out(centers.size());
  for (std::size_t j = 0; j < centers.size(); ++j) {
    double acc = 0.0;
    for (double v : centers[j]) acc += v * v;
    out[j] = acc;
  }
  return out;
}

double scaled_draw(Rng& rng, double total) {
  const double r = rng.uniform01() * total;
  return r < total ? r : std::nextafter(total, 0.0);
}

// Inverse CDF by linear scan; zero-mass entries are never returned.
std::size_t linear_find(std::span<const double> mass, double r) {
  double prefix = 0.0;
  std::size_t last_positive = mass.size();
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] > 0.0) last_positive = i;
    prefix += mass[i];
    if (r < prefix && mass[i] > 0.0) return i;
  }
  return last_positive;
}

}  // namespace

NearestAssignment nearest_assignment(const Dataset& data, const CenterSet& centers) {
  check_centers(data, centers);
  const auto norms = squared_norms(centers);
  NearestAssignment out;
  out.labels.resize(data.size());
  out.squared_distances.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::uint32_t best = 0;
    double best_d2 = data.squared_distance(i, centers[0], norms[0]);
    for (std::size_t j = 1; j < centers.size(); ++j) {
      const double d2 = data.squared_distance(i, centers[j], norms[j]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = static_cast<std::uint32_t>(j);
      }
    }
    out.labels[i] = best;
    out.squared_distances[i] = best_d2;
  }
  return out;
}

double cost_with_nearest(const Dataset& data, const CenterSet& centers, double z, std::span<const double> weights) {
  check_weights(data, weights);
  const auto nearest = nearest_assignment(data, centers);
  double cost = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    cost += weight_of(weights, i) * power_from_squared(nearest.squared_distances[i], z);
  }
  return cost;
}

double cost_with_assignment(const Dataset& data, const CenterSet& centers, std::span<const std::uint32_t> sigma,
                            double z, std::span<const double> weights) {
  check_centers(data, centers);
  check_weights(data, weights);
  if (sigma.size() != data.size()) throw std::invalid_argument("assignment must cover every point");
  const auto norms = squared_norms(centers);
  double cost = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::uint32_t j = sigma[i];
    if (j >= centers.size()) throw std::invalid_argument("assignment label out of range");
    cost += weight_of(weights, i) * power_from_squared(data.squared_distance(i, centers[j], norms[j]), z);
  }
  return cost;
}

ClusteringModel assign_nearest(const Dataset& data, CenterSet centers, double z, std::span<const double> weights) {
  check_weights(data, weights);
  auto nearest = nearest_assignment(data, centers);
  ClusteringModel model;
  model.z = z;
  model.cost = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    model.cost += weight_of(weights, i) * power_from_squared(nearest.squared_distances[i], z);
  }
  model.centers = std::move(centers);
  model.assignment = std::move(nearest.labels);
  return model;
}

ClusteringModel kmeanspp_seed(const Dataset& data, std::size_t k, double z, Rng& rng,
                              std::span<const double> weights) {
  const std::size_t n = data.size();
  if (k < 1 || k > n) throw std::invalid_argument("kmeanspp_seed: need 1 <= k <= n");
  if (!(z >= 1.0) || !std::isfinite(z)) throw std::invalid_argument("kmeanspp_seed: need finite z >= 1");
  check_weights(data, weights);

  std::size_t first = 0;
  if (weights.empty()) {
    first = rng.uniform_index(n);
  } else {
    double total_weight = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("kmeanspp_seed: invalid weight");
      total_weight += w;
    }
    if (!(total_weight > 0.0)) throw std::invalid_argument("kmeanspp_seed: total weight is zero");
    first = linear_find(weights, scaled_draw(rng, total_weight));
  }

  ClusteringModel model;
  model.z = z;
  model.centers = CenterSet(data.dim());
  std::vector<double> center = data.row(first);
  model.centers.push_back(center);

  std::vector<double> best_d2(n);
  std::vector<double> mass(n);
  model.assignment.assign(n, 0);
  {
    double c_sqnorm = 0.0;
    for (double v : center) c_sqnorm += v * v;
    for (std::size_t i = 0; i < n; ++i) {
      best_d2[i] = data.squared_distance(i, center, c_sqnorm);
      mass[i] = weight_of(weights, i) * power_from_squared(best_d2[i], z);
    }
  }

  for (std::size_t t = 2; t <= k; ++t) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (!(total > 0.0)) {
      model.exhausted = true;
      break;
    }
    const std::size_t pick = linear_find(mass, scaled_draw(rng, total));
    center = data.row(pick);
    model.centers.push_back(center);
    const auto label = static_cast<std::uint32_t>(model.centers.size() - 1);
    double c_sqnorm = 0.0;
    for (double v : center) c_sqnorm += v * v;
    for (std::size_t i = 0; i < n; ++i) {
      const double d2 = data.squared_distance(i, center, c_sqnorm);
      if (d2 < best_d2[i]) {
        best_d2[i] = d2;
        model.assignment[i] = label;
        mass[i] = weight_of(weights, i) * power_from_squared(d2, z);
      }
    }
    mass[pick] = 0.0;
  }
  model.cost = 0.0;
  for (double m : mass) model.cost += m;
  return model;
}

CentersOfMass centers_of_mass(const Dataset& data, std::span<const std::uint32_t> sigma, std::size_t k,
                              std::span<const double> weights) {
  if (k == 0) throw std::invalid_argument("centers_of_mass: k must be positive");
  if (sigma.size() != data.size()) throw std::invalid_argument("centers_of_mass: assignment must cover every point");
  check_weights(data, weights);
  const std::size_t d = data.dim();
  std::vector<double> sums(k * d, 0.0);
  std::vector<double> mass(k, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::uint32_t j = sigma[i];
    if (j >= k) throw std::invalid_argument("centers_of_mass: label out of range");
    const double w = weight_of(weights, i);
    mass[j] += w;
    data.accumulate_row(i, w, std::span<double>(sums.data() + j * d, d));
  }

  CentersOfMass out;
  out.centers = CenterSet(d, std::move(sums));
  for (std::size_t j = 0; j < k; ++j) {
    if (mass[j] > 0.0) {
      for (double& v : out.centers[j]) v /= mass[j];
    } else {
      out.empty_clusters.push_back(static_cast<std::uint32_t>(j));
    }
  }
  if (out.empty_clusters.empty()) return out;

  // Re-seed empty clusters at the points farthest from their own mean.
  std::vector<double> dist(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    dist[i] = weight_of(weights, i) > 0.0 ? data.squared_distance(i, out.centers[sigma[i]]) : -1.0;
  }
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t take = std::min(out.empty_clusters.size(), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t l, std::size_t r) { return dist[l] > dist[r] || (dist[l] == dist[r] && l < r); });
  for (std::size_t e = 0; e < out.empty_clusters.size(); ++e) {
    const auto row = data.row(order[std::min(e, take - 1)]);
    std::copy(row.begin(), row.end(), out.centers[out.empty_clusters[e]].begin());
  }
  return out;
}

LloydReport lloyd_iterate(const Dataset& data, const ClusteringModel& start, const LloydOptions& options,
                          std::span<const double> weights) {
  if (start.z != 2.0) throw std::domain_error("lloyd_iterate: only z = 2 is supported");
  LloydReport report;
  report.model = assign_nearest(data, start.centers, 2.0, weights);
  report.cost_history.push_back(report.model.cost);
  const std::size_t k = report.model.centers.size();
  while (report.iterations < options.max_iters) {
    auto moved = centers_of_mass(data, report.model.assignment, k, weights);
    auto next = assign_nearest(data, std::move(moved.centers), 2.0, weights);
    const double previous = report.model.cost;
    // Each half-step is non-increasing in exact arithmetic; a rounding-level
    // increase means we are at a fixed point.
    if (next.cost > previous) break;
    ++report.iterations;
    report.model = std::move(next);
    report.cost_history.push_back(report.model.cost);
    if (!(previous > 0.0) || (previous - report.model.cost) / previous < options.tol) break;
  }
  return report;
}

}  // namespace prone
