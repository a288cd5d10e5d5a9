#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "prone/center_set.hpp"
#include "prone/dataset.hpp"
#include "prone/rng.hpp"

namespace prone {

/// Centers plus an assignment. cost is sum_i w_i ||x_i - c_{assignment[i]}||^z.
struct ClusteringModel {
  CenterSet centers;
  std::vector<std::uint32_t> assignment;  // 0-based center index per point
  double cost = 0.0;
  double z = 2.0;
  /// Seeding stopped early because every remaining mass was zero.
  bool exhausted = false;
};

// Weighted overloads: an empty `weights` span means unit weights.

/// sum_i w_i min_j ||x_i - c_j||^z
double cost_with_nearest(const Dataset& data, const CenterSet& centers, double z,
                         std::span<const double> weights = {});

/// sum_i w_i ||x_i - c_{sigma(i)}||^z
double cost_with_assignment(const Dataset& data, const CenterSet& centers, std::span<const std::uint32_t> sigma,
                            double z, std::span<const double> weights = {});

struct NearestAssignment {
  std::vector<std::uint32_t> labels;  // lowest index wins ties
  std::vector<double> squared_distances;
};

NearestAssignment nearest_assignment(const Dataset& data, const CenterSet& centers);

/// Centers plus nearest assignment and its cost.
ClusteringModel assign_nearest(const Dataset& data, CenterSet centers, double z,
                               std::span<const double> weights = {});

/// k-means++ seeding for general z, O(ndk).
///
/// RNG use matches seed_1d_naive: the first center takes one uniform_index(n)
/// (unweighted) or one uniform01() scaled by the total weight (weighted);
/// every further center takes one uniform01() scaled by the total mass
/// sum_i w_i p_i^z, resolved by a linear scan in input order.
ClusteringModel kmeanspp_seed(const Dataset& data, std::size_t k, double z, Rng& rng,
                              std::span<const double> weights = {});

struct CentersOfMass {
  CenterSet centers;
  /// Clusters with no points (or zero weight); each was re-seeded at the point
  /// farthest from its assigned mean.
  std::vector<std::uint32_t> empty_clusters;
};

/// Per-cluster (weighted) means for labels in [0, k).
CentersOfMass centers_of_mass(const Dataset& data, std::span<const std::uint32_t> sigma, std::size_t k,
                              std::span<const double> weights = {});

struct LloydOptions {
  std::size_t max_iters = 300;
  double tol = 1e-4;  // relative cost improvement
};

struct LloydReport {
  ClusteringModel model;
  std::vector<double> cost_history;  // nearest-assignment cost, starting point first
  std::size_t iterations = 0;
};

/// Lloyd refinement for z = 2. Throws std::domain_error for any other z.
LloydReport lloyd_iterate(const Dataset& data, const ClusteringModel& start, const LloydOptions& options = {},
                          std::span<const double> weights = {});

}  // namespace prone
