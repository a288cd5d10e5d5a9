#include "prone/pipeline.hpp"

#include <stdexcept>

namespace prone {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::nanoseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0);
}

}  // namespace

ProneResult prone(const Dataset& data, const ProneConfig& cfg) {
  Rng rng(cfg.seed);
  return prone(data, cfg, rng);
}

ProneResult prone(const Dataset& data, const ProneConfig& cfg, Rng& rng) {
  if (cfg.k < 1 || cfg.k > data.size()) throw std::invalid_argument("prone: need 1 <= k <= n");
  if (!(cfg.z >= 1.0)) throw std::invalid_argument("prone: need z >= 1");

  ProneResult result;
  auto t0 = Clock::now();
  result.projection = sample_direction(data, cfg.variant, rng);
  result.projection.seed = cfg.seed;
  const auto line = project(data, result.projection);
  result.timings.project = since(t0);

  t0 = Clock::now();
  auto [seeding, stats] = seed_1d_fast(line, cfg.k, cfg.z, rng);
  result.timings.seed = since(t0);

  t0 = Clock::now();
  auto lifted = centers_of_mass(data, seeding.assignment, seeding.size());
  result.model.z = cfg.z;
  result.model.exhausted = seeding.exhausted;
  result.model.cost = cost_with_assignment(data, lifted.centers, seeding.assignment, cfg.z);
  result.model.centers = std::move(lifted.centers);
  result.model.assignment = std::move(seeding.assignment);
  result.timings.lift = since(t0);

  if (cfg.assign_nearest) {
    t0 = Clock::now();
    result.cost_nearest = cost_with_nearest(data, result.model.centers, cfg.z);
    result.timings.assign = since(t0);
  }
  if (cfg.collect_stats) {
    result.stats = stats;
  } else {
    result.timings = {};
  }
  return result;
}

double prone_center_cost(const Dataset& data, const ProneResult& result) {
  return cost_with_nearest(data, result.model.centers, result.model.z);
}

}  // namespace prone
