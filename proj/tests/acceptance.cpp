// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [criterion-number ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prone/baseline.hpp"
#include "prone/coreset.hpp"
#include "prone/dataset.hpp"
#include "prone/pipeline.hpp"
#include "prone/projection.hpp"
#include "prone/seeding1d.hpp"

using namespace prone;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 when no runtime bound applies
  std::function<Outcome()> run;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double ms(std::chrono::nanoseconds t) { return std::chrono::duration<double, std::milli>(t).count(); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

std::string fmt(double x, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += (a[j] - b[j]) * (a[j] - b[j]);
  return acc;
}

// The canonical 20-cluster mixture: 500 points per cluster in 10 dimensions.
GaussianMixture mixture20() { return gen_gaussian_mixture(20, 500, 10, 100.0, 1); }

Outcome oracle_equivalence() {
  Rng meta(20240601);
  std::size_t mismatches = 0;
  const int instances = 1000;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = 1 + meta.uniform_index(512);
    const std::size_t k = 1 + meta.uniform_index(std::min<std::size_t>(n, 64));
    const double z = 1.0 + static_cast<double>(meta.uniform_index(3));
    std::vector<double> pts(n);
    // A third of the instances draw from a small integer pool, so duplicates are common.
    const bool duplicates = t % 3 == 0;
    for (double& x : pts) {
      x = duplicates ? static_cast<double>(meta.uniform_index(n / 4 + 1)) : 200.0 * meta.uniform01() - 100.0;
    }
    const std::uint64_t seed = meta();
    Rng a(seed);
    Rng b(seed);
    const auto fast = seed_1d_fast(pts, k, z, a).first;
    const auto naive = seed_1d_naive(pts, k, z, b);
    const bool same = fast.center_indices == naive.center_indices && fast.assignment == naive.assignment &&
                      fast.selection_order == naive.selection_order && fast.exhausted == naive.exhausted &&
                      a.counter() == b.counter();
    if (!same) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(instances) + " instances"};
}

Outcome update_scaling() {
  std::vector<double> ratios;
  std::string detail;
  bool bounded = true;
  for (std::size_t n : {std::size_t{1} << 10, std::size_t{1} << 12, std::size_t{1} << 14, std::size_t{1} << 16}) {
    double acc = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
      Rng rng(1000 * n + static_cast<std::size_t>(s));
      std::vector<double> pts(n);
      for (double& x : pts) x = rng.uniform01();
      const auto stats = seed_1d_fast(pts, n / 4, 2.0, rng).second;
      acc += static_cast<double>(stats.total_updates) / (static_cast<double>(n) * std::log(static_cast<double>(n)));
    }
    const double r = acc / seeds;
    ratios.push_back(r);
    bounded = bounded && r <= 20.0;
    detail += "n=" + std::to_string(n) + ":" + fmt(r) + " ";
  }
  const double growth = ratios.back() / ratios.front() - 1.0;
  detail += "growth " + fmt(100.0 * growth, 3) + "%";
  return {bounded && growth < 0.25, detail};
}

Outcome runtime_independent_of_k() {
  const auto mix = gen_gaussian_mixture(100, 10000, 16, 100.0, 3);
  const Dataset& data = mix.data;
  auto prone_median_ms = [&](std::size_t k) {
    std::vector<double> times;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
      ProneConfig cfg;
      cfg.k = k;
      cfg.seed = rep;
      times.push_back(ms(prone::prone(data, cfg).timings.algorithm()));
    }
    return median(times);
  };
  auto kmeanspp_median_ms = [&](std::size_t k, int reps) {
    std::vector<double> times;
    for (int rep = 0; rep < reps; ++rep) {
      Rng rng(static_cast<std::uint64_t>(rep));
      const auto t0 = Clock::now();
      const auto model = kmeanspp_seed(data, k, 2.0, rng);
      times.push_back(1000.0 * seconds_since(t0));
      if (model.centers.size() != k) return -1.0;
    }
    return median(times);
  };
  const double p10 = prone_median_ms(10);
  const double p1000 = prone_median_ms(1000);
  const double k10 = kmeanspp_median_ms(10, 10);
  const double k1000 = kmeanspp_median_ms(1000, 3);
  const double prone_ratio = p1000 / p10;
  const double kpp_ratio = k1000 / k10;
  return {prone_ratio <= 2.0 && kpp_ratio >= 20.0,
          "prone k=10 " + fmt(p10) + " ms, k=1000 " + fmt(p1000) + " ms (x" + fmt(prone_ratio, 3) +
              "); kmeans++ k=10 " + fmt(k10) + " ms, k=1000 " + fmt(k1000) + " ms (x" + fmt(kpp_ratio, 3) + ")"};
}

Outcome seeding_distribution() {
  const std::vector<double> pts{0.0, 1.0, 2.5, 6.0, 13.0};
  const std::size_t n = pts.size();
  const int runs = 200000;
  std::vector<std::vector<int>> counts(n, std::vector<int>(n, 0));
  std::vector<int> first_counts(n, 0);
  for (int t = 0; t < runs; ++t) {
    Rng rng(static_cast<std::uint64_t>(t));
    const auto res = seed_1d_fast(pts, 2, 2.0, rng).first;
    ++first_counts[res.selection_order[0]];
    ++counts[res.selection_order[0]][res.selection_order[1]];
  }
  double worst = 0.0;
  int outcomes = 0;
  for (std::size_t f = 0; f < n; ++f) {
    double total = 0.0;
    for (double x : pts) total += (x - pts[f]) * (x - pts[f]);
    for (std::size_t s = 0; s < n; ++s) {
      const double p = (pts[s] - pts[f]) * (pts[s] - pts[f]) / total;
      const double m = first_counts[f];
      const double freq = counts[f][s] / m;
      if (p == 0.0) {
        if (counts[f][s] != 0) worst = std::numeric_limits<double>::infinity();
        continue;
      }
      const double se = std::sqrt(p * (1.0 - p) / m);
      worst = std::max(worst, std::fabs(freq - p) / se);
      ++outcomes;
    }
  }
  return {worst <= 3.0, "max deviation " + fmt(worst, 3) + " standard errors over " + std::to_string(outcomes) +
                            " conditional outcomes"};
}

Outcome coreset_unbiased() {
  const auto mix = gen_gaussian_mixture(20, 500, 10, 100.0, 5);
  Rng rng(77);
  ProneConfig cfg;
  cfg.k = 20;
  const auto model = prone::prone(mix.data, cfg, rng).model;
  const auto dist = sensitivity_distribution(mix.data, model);

  std::vector<double> c(20 * 10);
  for (double& v : c) v = 100.0 * rng.uniform01();
  const CenterSet centers(10, std::move(c));
  const double full = cost_with_nearest(mix.data, centers, 2.0);

  double acc = 0.0;
  const int reps = 500;
  for (int r = 0; r < reps; ++r) {
    const auto cs = sample_coreset(mix.data, dist, 256, rng);
    acc += cost_with_nearest(cs.points, centers, 2.0, cs.weights);
  }
  const double rel = std::fabs(acc / reps - full) / full;
  return {rel <= 0.05, "mean coreset cost off by " + fmt(100.0 * rel, 3) + "%"};
}

Outcome adversarial_lightweight() {
  const auto data = gen_adversarial_gaussian(3000, 1);
  const std::size_t k = 10;
  const std::size_t s = coreset_size_for(data.size(), 0.01);
  const auto light = lightweight_distribution(data);
  int wins = 0;
  const int trials = 20;
  std::vector<double> ratios;
  for (int t = 0; t < trials; ++t) {
    Rng rng(static_cast<std::uint64_t>(9000 + t));
    ProneConfig cfg;
    cfg.k = k;
    const auto initial = prone::prone(data, cfg, rng);
    const auto sens = sample_coreset(data, sensitivity_distribution(data, initial.model), s, rng);
    const double sens_cost = cost_with_nearest(data, cluster_coreset(sens, k, rng), 2.0);
    const auto lw = sample_coreset(data, light, s, rng);
    const double lw_cost = cost_with_nearest(data, cluster_coreset(lw, k, rng), 2.0);
    ratios.push_back(lw_cost / sens_cost);
    if (lw_cost >= 2.0 * sens_cost) ++wins;
  }
  return {wins >= 16, std::to_string(wins) + "/" + std::to_string(trials) + " trials at >= 2x, median ratio " +
                          fmt(median(ratios))};
}

Outcome center_quality() {
  const auto mix = mixture20();
  std::vector<double> prone_costs, kpp_costs;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ProneConfig cfg;
    cfg.k = 20;
    cfg.seed = seed;
    prone_costs.push_back(prone_center_cost(mix.data, prone::prone(mix.data, cfg)));
    Rng rng(seed);
    kpp_costs.push_back(kmeanspp_seed(mix.data, 20, 2.0, rng).cost);
  }
  const double ratio = median(prone_costs) / median(kpp_costs);
  return {ratio <= 2.0, "median prone " + fmt(median(prone_costs)) + " vs kmeans++ " + fmt(median(kpp_costs)) +
                            " (x" + fmt(ratio, 3) + ")"};
}

Outcome boosted_parity() {
  const auto mix = mixture20();
  const Dataset& data = mix.data;
  const double alpha = 0.1;
  bool pass = true;
  std::string detail;
  for (std::size_t k : {std::size_t{20}, std::size_t{100}, std::size_t{250}}) {
    std::vector<double> bc, kc, bt, kt;
    for (std::uint64_t run = 0; run < 5; ++run) {
      Rng r1(run);
      auto t0 = Clock::now();
      const auto boosted = boosted_prone(data, k, 2.0, alpha, r1);
      bt.push_back(seconds_since(t0));
      bc.push_back(cost_with_nearest(data, boosted.centers, 2.0));
      Rng r2(run);
      t0 = Clock::now();
      const auto model = kmeanspp_seed(data, k, 2.0, r2);
      kt.push_back(seconds_since(t0));
      kc.push_back(model.cost);
    }
    const double cost_ratio = mean(bc) / mean(kc);
    if (k == 20) {
      pass = pass && cost_ratio <= 1.5;
      detail += "k=20 cost x" + fmt(cost_ratio, 3) + "; ";
    } else {
      const bool faster = mean(bt) < mean(kt);
      pass = pass && faster;
      detail += "k=" + std::to_string(k) + " cost x" + fmt(cost_ratio, 3) + " time " + fmt(1000 * mean(bt)) +
                " vs " + fmt(1000 * mean(kt)) + " ms; ";
    }
  }
  return {pass, detail};
}

Outcome projection_cost() {
  Rng rng(404);
  const std::size_t n = 1000;
  const std::size_t d = 10;
  std::vector<double> v(n * d);
  for (double& x : v) x = 20.0 * rng.uniform01() - 10.0;
  const auto data = Dataset::from_dense(n, d, std::move(v));
  const auto model = kmeanspp_seed(data, 10, 2.0, rng);
  const double original = cost_with_assignment(data, model.centers, model.assignment, 2.0);

  double acc = 0.0;
  const int draws = 10000;
  std::vector<double> pc(model.centers.size());
  for (int t = 0; t < draws; ++t) {
    const auto pv = sample_direction(data, ProjectionVariant::standard, rng);
    const auto px = project(data, pv);
    for (std::size_t j = 0; j < pc.size(); ++j) {
      const auto c = model.centers[j];
      pc[j] = std::inner_product(c.begin(), c.end(), pv.direction.begin(), 0.0);
    }
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = px[i] - pc[model.assignment[i]];
      cost += diff * diff;
    }
    acc += cost;
  }
  const double rel = std::fabs(acc / draws - original) / original;
  return {rel <= 0.05, "mean projected cost off by " + fmt(100.0 * rel, 3) + "%"};
}

Outcome lloyd_properties() {
  Rng rng(10);
  int monotone = 0;
  const int instances = 100;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = 50 + rng.uniform_index(450);
    const std::size_t d = 1 + rng.uniform_index(10);
    const std::size_t k = 1 + rng.uniform_index(20);
    std::vector<double> v(n * d);
    for (double& x : v) x = 100.0 * rng.uniform01();
    const auto data = Dataset::from_dense(n, d, std::move(v));
    const auto report = lloyd_iterate(data, kmeanspp_seed(data, k, 2.0, rng));
    bool ok = true;
    for (std::size_t i = 1; i < report.cost_history.size(); ++i) {
      ok = ok && report.cost_history[i] <= report.cost_history[i - 1];
    }
    if (ok) ++monotone;
  }

  // Perturbation test: moving any mean by +-delta along any axis raises its cluster's cost.
  const double delta = 1e-3;
  std::size_t perturbations = 0;
  std::size_t failures = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 100;
    const std::size_t d = 1 + rng.uniform_index(6);
    const std::size_t k = 1 + rng.uniform_index(6);
    std::vector<double> v(n * d);
    for (double& x : v) x = 100.0 * rng.uniform01();
    const auto data = Dataset::from_dense(n, d, std::move(v));
    std::vector<std::uint32_t> sigma(n);
    for (auto& s : sigma) s = static_cast<std::uint32_t>(rng.uniform_index(k));
    const auto com = centers_of_mass(data, sigma, k);
    for (std::size_t j = 0; j < k; ++j) {
      auto cluster_cost = [&](std::span<const double> c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (sigma[i] == j) acc += squared_distance(data.dense_row(i), c);
        }
        return acc;
      };
      if (std::find(com.empty_clusters.begin(), com.empty_clusters.end(), j) != com.empty_clusters.end()) continue;
      const std::vector<double> center(com.centers[j].begin(), com.centers[j].end());
      const double base = cluster_cost(center);
      for (std::size_t q = 0; q < d; ++q) {
        for (double sign : {-1.0, 1.0}) {
          auto moved = center;
          moved[q] += sign * delta;
          ++perturbations;
          if (!(cluster_cost(moved) > base)) ++failures;
        }
      }
    }
  }
  return {monotone == instances && failures == 0,
          std::to_string(monotone) + "/" + std::to_string(instances) + " monotone runs; " +
              std::to_string(failures) + "/" + std::to_string(perturbations) + " perturbations failed"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "fast and naive 1-D seeding agree", 60, oracle_equivalence},
      {2, "update count grows like n log n", 120, update_scaling},
      {3, "PRONE runtime does not depend on k", 600, runtime_independent_of_k},
      {4, "second center follows the D^2 law", 60, seeding_distribution},
      {5, "sensitivity coreset cost is unbiased", 60, coreset_unbiased},
      {6, "lightweight coreset fails on adversarial data", 300, adversarial_lightweight},
      {7, "PRONE center quality matches k-means++", 0, center_quality},
      {8, "boosted PRONE matches k-means++ and is faster", 0, boosted_parity},
      {9, "projection preserves clustering cost in expectation", 0, projection_cost},
      {10, "Lloyd is monotone and means are locally optimal", 0, lloyd_properties},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome o = c.run();
    const double elapsed = seconds_since(t0);
    if (c.time_limit_s > 0 && elapsed > c.time_limit_s) {
      o.pass = false;
      o.detail += "; over the " + fmt(c.time_limit_s, 4) + " s limit";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                elapsed);
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
