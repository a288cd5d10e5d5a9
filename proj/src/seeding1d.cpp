#include "prone/seeding1d.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "prone/sampling_tree.hpp"

namespace prone {

namespace {

void validate(std::span<const double> points, std::size_t k, double z) {
  if (points.empty()) throw std::invalid_argument("seeding: no points");
  if (k < 1 || k > points.size()) throw std::invalid_argument("seeding: need 1 <= k <= n");
  if (!(z >= 1.0) || !std::isfinite(z)) throw std::invalid_argument("seeding: need finite z >= 1");
  for (double x : points) {
    if (!std::isfinite(x)) throw std::invalid_argument("seeding: non-finite point");
  }
}

// r = u * total, kept strictly below total.
double scaled_draw(Rng& rng, double total) {
  const double r = rng.uniform01() * total;
  return r < total ? r : std::nextafter(total, 0.0);
}

}  // namespace

std::vector<std::uint32_t> assign_to_sorted_centers(std::span<const double> points_sorted,
                                                     std::span<const double> centers_sorted) {
  if (centers_sorted.empty()) throw std::invalid_argument("assign_to_sorted_centers: no centers");
  const std::size_t k = centers_sorted.size();
  std::vector<std::uint32_t> sigma(points_sorted.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < points_sorted.size();) {
    const double x = points_sorted[i];
    if (j + 1 < k && std::fabs(x - centers_sorted[j]) >= std::fabs(x - centers_sorted[j + 1])) {
      ++j;
    } else {
      sigma[i] = static_cast<std::uint32_t>(j);
      ++i;
    }
  }
  return sigma;
}

std::pair<Seeding1DResult, SeedingStats> seed_1d_fast(std::span<const double> points, std::size_t k, double z,
                                                      Rng& rng) {
  validate(points, k, z);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = points.size();

  // Sorting (value, position) pairs is a stable sort by value.
  std::vector<std::pair<double, std::size_t>> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = {points[i], i};
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = sorted[i].first;

  SeedingStats stats;
  Seeding1DResult result;
  std::vector<std::size_t> chosen;  // sorted positions
  chosen.reserve(k);

  const std::size_t first = rng.uniform_index(n);
  chosen.push_back(first);
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = pow_z(x[i] - x[first], z);
  SamplingTree tree(a);

  for (std::size_t t = 2; t <= k; ++t) {
    const double total = tree.total();
    if (!(total > 0.0)) {
      result.exhausted = true;
      break;
    }
    const std::size_t l = tree.find(scaled_draw(rng, total)) - 1;
    chosen.push_back(l);
    a[l] = 0.0;
    const double c = x[l];

    std::size_t lo = l;  // first updated position
    while (lo > 0) {
      ++stats.comparisons;
      const double v = pow_z(x[lo - 1] - c, z);
      if (!(v < a[lo - 1])) break;
      a[lo - 1] = v;
      ++stats.total_updates;
      --lo;
    }
    std::size_t hi = l;  // last updated position
    while (hi + 1 < n) {
      ++stats.comparisons;
      const double v = pow_z(x[hi + 1] - c, z);
      if (!(v < a[hi + 1])) break;
      a[hi + 1] = v;
      ++stats.total_updates;
      ++hi;
    }
    tree.update(a, lo + 1, hi + 1);
  }

  std::vector<std::size_t> ranked = chosen;
  std::sort(ranked.begin(), ranked.end());
  std::vector<double> center_values(ranked.size());
  for (std::size_t j = 0; j < ranked.size(); ++j) center_values[j] = x[ranked[j]];
  const auto sigma_sorted = assign_to_sorted_centers(x, center_values);

  result.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.assignment[sorted[i].second] = sigma_sorted[i];
  result.center_values = std::move(center_values);
  result.center_indices.reserve(ranked.size());
  for (std::size_t p : ranked) result.center_indices.push_back(sorted[p].second);
  result.selection_order.reserve(chosen.size());
  for (std::size_t p : chosen) result.selection_order.push_back(sorted[p].second);

  stats.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return {std::move(result), stats};
}

Seeding1DResult seed_1d_naive(std::span<const double> points, std::size_t k, double z, Rng& rng) {
  validate(points, k, z);
  const std::size_t n = points.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return points[l] < points[r]; });

  Seeding1DResult result;
  std::vector<std::size_t> chosen{rng.uniform_index(n)};
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = pow_z(points[order[i]] - points[order[chosen[0]]], z);

  while (chosen.size() < k) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (!(total > 0.0)) {
      result.exhausted = true;
      break;
    }
    const double r = scaled_draw(rng, total);
    std::size_t pick = n;
    std::size_t last_positive = n;
    double prefix = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mass[i] > 0.0) last_positive = i;
      prefix += mass[i];
      if (r < prefix && mass[i] > 0.0) {
        pick = i;
        break;
      }
    }
    if (pick == n) pick = last_positive;
    chosen.push_back(pick);
    const double c = points[order[pick]];
    for (std::size_t i = 0; i < n; ++i) mass[i] = std::min(mass[i], pow_z(points[order[i]] - c, z));
  }

  // Brute-force nearest center; ties go to the later (larger) center.
  std::vector<std::size_t> ranked = chosen;
  std::sort(ranked.begin(), ranked.end());
  result.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = points[order[i]];
    std::size_t best = 0;
    double best_dist = std::fabs(xi - points[order[ranked[0]]]);
    for (std::size_t j = 1; j < ranked.size(); ++j) {
      const double dist = std::fabs(xi - points[order[ranked[j]]]);
      if (dist <= best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    result.assignment[order[i]] = static_cast<std::uint32_t>(best);
  }
  for (std::size_t p : ranked) {
    result.center_indices.push_back(order[p]);
    result.center_values.push_back(points[order[p]]);
  }
  for (std::size_t p : chosen) result.selection_order.push_back(order[p]);
  return result;
}

}  // namespace prone
