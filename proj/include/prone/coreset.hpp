#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "prone/baseline.hpp"
#include "prone/dataset.hpp"
#include "prone/rng.hpp"

namespace prone {

/// A sampling distribution over the rows of a dataset.
struct SensitivityDistribution {
  std::vector<double> probabilities;
  /// Sum of the unnormalized masses. For sensitivity sampling this is 1 + k'
  /// (k' = non-empty clusters); for lightweight it is 1.
  double mass_total = 0.0;
  std::size_t clusters = 0;
};

/// Mass of point i: cost_i / total_cost + 1 / |cluster of i|, where cost_i is
/// ||x_i - c_{sigma(i)}||^z under the model's assignment. The cost share is 0
/// for every point when the total cost is 0.
SensitivityDistribution sensitivity_distribution(const Dataset& data, const ClusteringModel& model);

/// q_i = 1 / (2n) + ||x_i - mu||^2 / (2 sum_j ||x_j - mu||^2), mu the data mean.
SensitivityDistribution lightweight_distribution(const Dataset& data);

/// Walker/Vose alias table: O(n) build, O(1) per draw.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> probabilities);
  std::size_t sample(Rng& rng) const;
  std::size_t size() const noexcept { return accept_.size(); }

 private:
  std::vector<double> accept_;
  std::vector<std::size_t> alias_;
};

struct WeightedCoreset {
  Dataset points;
  std::vector<double> weights;
  std::vector<std::size_t> source_indices;

  std::size_t size() const noexcept { return weights.size(); }
  WeightedPoint at(std::size_t i) const { return {points.row(i), weights[i]}; }
};

/// s i.i.d. draws with replacement; a draw of row i gets weight 1 / (s p_i),
/// which makes the weighted cost an unbiased estimate of the full cost.
WeightedCoreset sample_coreset(const Dataset& data, const SensitivityDistribution& dist, std::size_t s, Rng& rng);

/// Weighted k-means++ followed by weighted Lloyd on the coreset.
CenterSet cluster_coreset(const WeightedCoreset& coreset, std::size_t k, Rng& rng, const LloydOptions& lloyd = {});

struct BoostedResult {
  CenterSet centers;
  WeightedCoreset coreset;
  double z = 2.0;
  bool exhausted = false;
  std::chrono::nanoseconds prone_time{0};
  std::chrono::nanoseconds coreset_time{0};
  std::chrono::nanoseconds seed_time{0};

  std::chrono::nanoseconds total_time() const { return prone_time + coreset_time + seed_time; }
};

/// PRONE -> sensitivity coreset of size ceil(alpha n) -> weighted k-means++
/// on the coreset. Throws std::invalid_argument when ceil(alpha n) < k. A
/// coreset size of n or more uses the data itself with unit weights.
/// Use assign_nearest() for the full-data assignment.
BoostedResult boosted_prone(const Dataset& data, std::size_t k, double z, double alpha, Rng& rng);

std::size_t coreset_size_for(std::size_t n, double alpha);

/// CSV with the weight as the leading column.
void write_weighted_csv(std::ostream& out, const WeightedCoreset& coreset);
void write_weighted_csv(const std::filesystem::path& path, const WeightedCoreset& coreset);
/// source_indices of the result are 0..s-1.
WeightedCoreset parse_weighted_csv(std::istream& in);

}  // namespace prone
