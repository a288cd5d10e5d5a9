#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "prone/rng.hpp"

namespace prone {

/// |x|^z with exact special cases: 0 maps to 0, z = 1 and z = 2 skip exp/log.
/// Every seeding path uses this function so that masses agree bit-for-bit.
inline double pow_z(double distance, double z) {
  const double a = std::fabs(distance);
  if (z == 2.0) return a * a;
  if (z == 1.0) return a;
  if (a == 0.0) return 0.0;
  return std::exp(z * std::log(a));
}

/// Output of one-dimensional k-means++ seeding.
///
/// Centers are listed in rank order (ascending value). assignment[i] is the
/// 0-based rank of the center serving input point i.
struct Seeding1DResult {
  std::vector<std::size_t> center_indices;   // input positions, rank order
  std::vector<double> center_values;         // rank order
  std::vector<std::size_t> selection_order;  // input positions, order drawn
  std::vector<std::uint32_t> assignment;
  /// Fewer than k distinct values: seeding stopped once every mass was zero.
  bool exhausted = false;

  std::size_t size() const noexcept { return center_indices.size(); }
};

struct SeedingStats {
  std::uint64_t total_updates = 0;  // distance writes made by the outward scans
  std::uint64_t comparisons = 0;    // scan condition evaluations
  std::chrono::nanoseconds wall_time{0};
};

/// k-means++ seeding on the line in expected O(2^{z/2} n log n) time.
///
/// Points are sorted once; each new center scans outward until the first
/// point whose current distance is not improved, then pushes that contiguous
/// range into a SamplingTree. RNG use: one uniform_index(n) for the first
/// center (a position in sorted order), then one uniform01() per further
/// center, scaled by the current total mass.
std::pair<Seeding1DResult, SeedingStats> seed_1d_fast(std::span<const double> points, std::size_t k, double z,
                                                      Rng& rng);

/// Reference O(nk) implementation with the same RNG use as seed_1d_fast:
/// full distance refresh and a linear inverse-CDF scan per center.
Seeding1DResult seed_1d_naive(std::span<const double> points, std::size_t k, double z, Rng& rng);

/// Two-pointer nearest-center assignment over ascending inputs. Equidistant
/// points go to the later center. Returns 0-based center ranks.
std::vector<std::uint32_t> assign_to_sorted_centers(std::span<const double> points_sorted,
                                                     std::span<const double> centers_sorted);

}  // namespace prone
