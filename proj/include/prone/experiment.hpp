#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prone/dataset.hpp"

namespace prone {

/// One benchmark or cluster run. Times are milliseconds keyed by phase
/// (load, project, seed, lift, assign, coreset, cluster).
struct ExperimentRecord {
  std::string suite;
  std::string algorithm;
  std::string dataset;
  std::size_t k = 0;
  double z = 2.0;
  std::optional<double> alpha;  // boosted alpha or coreset relative size
  std::uint64_t seed = 0;
  std::size_t rep = 0;
  double cost_assignment = 0.0;
  std::optional<double> cost_nearest;
  std::map<std::string, double> time_ms;
  std::uint64_t total_updates = 0;

  /// Sum of the timed phases that belong to the algorithm itself (everything
  /// except load and assign).
  double algorithm_ms() const;
};

nlohmann::ordered_json to_json(const ExperimentRecord& r, bool include_times = true);

enum class BenchSuite { direct, coreset, boosted };
BenchSuite parse_bench_suite(const std::string& name);
std::string to_string(BenchSuite s);

struct NamedDataset {
  std::string name;
  Dataset data;
};

/// Built-in synthetic names (gaussian-small, gaussian-medium, adversarial,
/// adversarial-full) or a file path: *.csv is dense CSV, anything else the
/// sparse format. Throws std::invalid_argument for unknown names.
NamedDataset resolve_dataset(const std::string& name_or_path);

inline const std::vector<double> kCoresetFractions{0.001, 0.0025, 0.005, 0.01, 0.025, 0.05, 0.1};
inline const std::vector<double> kBoostedAlphas{0.001, 0.01, 0.1};

struct BenchOptions {
  BenchSuite suite = BenchSuite::direct;
  std::vector<std::size_t> ks;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  double z = 2.0;
};

/// Runs every cell of a suite. Records come back in a fixed order regardless
/// of `jobs`; each cell is single-threaded.
std::vector<ExperimentRecord> run_bench(const NamedDataset& dataset, const BenchOptions& options);

/// Per-(algorithm, k, alpha) means. cost_ratio divides by the suite's
/// reference algorithm (kmeanspp, or baseline for the coreset suite) and
/// speedup is T_reference / T_algorithm (sensitivity construction time for
/// the coreset suite).
struct SummaryRow {
  std::string suite;
  std::string dataset;
  std::string algorithm;
  std::size_t k = 0;
  std::optional<double> alpha;
  std::size_t reps = 0;
  double mean_cost_assignment = 0.0;
  std::optional<double> mean_cost_nearest;
  std::optional<double> cost_ratio;
  double mean_time_ms = 0.0;
  std::optional<double> speedup;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

inline constexpr const char* kSummaryHeader =
    "suite,dataset,algorithm,k,alpha,reps,mean_cost_assignment,mean_cost_nearest,cost_ratio,mean_time_ms,speedup";
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Thread count from PRONE_THREADS, or `fallback` when unset or invalid.
std::size_t threads_from_env(std::size_t fallback);

}  // namespace prone
