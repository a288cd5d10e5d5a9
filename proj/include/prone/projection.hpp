#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "prone/dataset.hpp"
#include "prone/rng.hpp"

namespace prone {

enum class ProjectionVariant {
  standard,    // g ~ N(0, I_d)
  variance,    // g_j * sigma_j, sigma_j^2 the empirical variance of feature j
  covariance,  // N(0, Sigma) with Sigma the empirical covariance
};

std::string_view to_string(ProjectionVariant v);
ProjectionVariant parse_projection_variant(std::string_view name);

struct ProjectionVector {
  std::vector<double> direction;
  ProjectionVariant variant = ProjectionVariant::standard;
  std::uint64_t seed = 0;  // seed of the generator that drew it, when known
  /// Counter of the caller's Rng before the draw; with the Rng seed this pins the vector.
  std::uint64_t rng_counter = 0;
};

/// Draws a projection direction in O(nnz + n + d).
///
/// The covariance variant uses v = Xc^T h / sqrt(n) with h ~ N(0, I_n) and
/// Xc the mean-centred data, which has law N(0, Sigma) without forming Sigma.
/// An all-zero draw is re-drawn; when the data has no variance at all the
/// data-dependent variants fall back to the standard one.
ProjectionVector sample_direction(const Dataset& data, ProjectionVariant variant, Rng& rng);

/// x'_i = <x_i, v> over stored entries only.
std::vector<double> project(const Dataset& data, const ProjectionVector& v);

/// Population variance of each feature; exactly 0 for constant features.
std::vector<double> feature_variances(const Dataset& data);

}  // namespace prone
