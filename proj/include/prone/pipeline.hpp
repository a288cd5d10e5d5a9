#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "prone/baseline.hpp"
#include "prone/dataset.hpp"
#include "prone/projection.hpp"
#include "prone/rng.hpp"
#include "prone/seeding1d.hpp"

namespace prone {

struct ProneConfig {
  std::size_t k = 1;
  double z = 2.0;
  ProjectionVariant variant = ProjectionVariant::standard;
  std::uint64_t seed = 0;
  bool collect_stats = true;
  /// Also compute the O(ndk) nearest-center cost of the lifted centers.
  bool assign_nearest = false;
};

struct PhaseTimings {
  std::chrono::nanoseconds project{0};
  std::chrono::nanoseconds seed{0};
  std::chrono::nanoseconds lift{0};
  std::chrono::nanoseconds assign{0};

  /// project + seed + lift; excludes the optional nearest reassignment.
  std::chrono::nanoseconds algorithm() const { return project + seed + lift; }
};

struct ProneResult {
  /// Centers are cluster means in R^d; assignment is the 1-D seeding's and
  /// cost is cost_z(X, C, sigma) under it.
  ClusteringModel model;
  std::optional<double> cost_nearest;
  ProjectionVector projection;
  SeedingStats stats;
  PhaseTimings timings;
};

/// Project to one random direction, seed k centers on the line, and lift
/// each 1-D cluster to its center of mass. Expected O(nnz + n log n) time
/// regardless of k. Fewer than k clusters come back (model.exhausted set)
/// when the projection has fewer than k distinct values.
ProneResult prone(const Dataset& data, const ProneConfig& cfg);

/// Same, drawing from a caller-owned stream; cfg.seed is only recorded.
ProneResult prone(const Dataset& data, const ProneConfig& cfg, Rng& rng);

/// cost_z(X, C) of the lifted centers under nearest reassignment; O(ndk).
double prone_center_cost(const Dataset& data, const ProneResult& result);

}  // namespace prone
