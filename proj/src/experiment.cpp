#include "prone/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "prone/baseline.hpp"
#include "prone/coreset.hpp"
#include "prone/pipeline.hpp"

namespace prone {

namespace {

using Clock = std::chrono::steady_clock;

double ms(std::chrono::nanoseconds t) { return std::chrono::duration<double, std::milli>(t).count(); }
double ms_since(Clock::time_point t0) { return ms(Clock::now() - t0); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed of one cell; a pure function of the bench seed and the cell's identity.
std::uint64_t cell_seed(std::uint64_t base, const std::string& suite, const std::string& algo, std::size_t k,
                        std::optional<double> alpha, std::size_t rep) {
  std::string tag = suite + "|" + algo + "|" + std::to_string(k) + "|" + (alpha ? format_double(*alpha) : "-") + "|" +
                    std::to_string(rep);
  return Rng::mix(base ^ Rng::mix(fnv1a(tag)));
}

struct Cell {
  std::function<ExperimentRecord()> run;
};

ExperimentRecord base_record(BenchSuite suite, const std::string& algo, const NamedDataset& ds, std::size_t k,
                             double z, std::optional<double> alpha, std::size_t rep, std::uint64_t bench_seed) {
  ExperimentRecord r;
  r.suite = to_string(suite);
  r.algorithm = algo;
  r.dataset = ds.name;
  r.k = k;
  r.z = z;
  r.alpha = alpha;
  r.rep = rep;
  r.seed = cell_seed(bench_seed, r.suite, algo, k, alpha, rep);
  return r;
}

ExperimentRecord run_prone_cell(ExperimentRecord r, const Dataset& data, ProjectionVariant variant) {
  ProneConfig cfg;
  cfg.k = r.k;
  cfg.z = r.z;
  cfg.variant = variant;
  cfg.seed = r.seed;
  cfg.assign_nearest = true;
  const auto result = prone(data, cfg);
  r.cost_assignment = result.model.cost;
  r.cost_nearest = result.cost_nearest;
  r.time_ms["project"] = ms(result.timings.project);
  r.time_ms["seed"] = ms(result.timings.seed);
  r.time_ms["lift"] = ms(result.timings.lift);
  r.time_ms["assign"] = ms(result.timings.assign);
  r.total_updates = result.stats.total_updates;
  return r;
}

ExperimentRecord run_kmeanspp_cell(ExperimentRecord r, const Dataset& data) {
  Rng rng(r.seed);
  const auto t0 = Clock::now();
  const auto model = kmeanspp_seed(data, r.k, r.z, rng);
  r.time_ms["seed"] = ms_since(t0);
  r.cost_assignment = model.cost;
  r.cost_nearest = model.cost;
  return r;
}

ExperimentRecord run_boosted_cell(ExperimentRecord r, const Dataset& data) {
  Rng rng(r.seed);
  const auto result = boosted_prone(data, r.k, r.z, *r.alpha, rng);
  r.time_ms["seed"] = ms(result.prone_time);
  r.time_ms["coreset"] = ms(result.coreset_time);
  r.time_ms["cluster"] = ms(result.seed_time);
  const auto t0 = Clock::now();
  r.cost_nearest = cost_with_nearest(data, result.centers, r.z);
  r.time_ms["assign"] = ms_since(t0);
  r.cost_assignment = *r.cost_nearest;
  return r;
}

// k-means++ followed by Lloyd on the full data: the coreset suite's reference.
ExperimentRecord run_baseline_cell(ExperimentRecord r, const Dataset& data) {
  Rng rng(r.seed);
  const auto t0 = Clock::now();
  const auto seeded = kmeanspp_seed(data, r.k, 2.0, rng);
  const auto refined = lloyd_iterate(data, seeded);
  r.time_ms["cluster"] = ms_since(t0);
  r.cost_assignment = refined.model.cost;
  r.cost_nearest = refined.model.cost;
  return r;
}

ExperimentRecord run_coreset_cell(ExperimentRecord r, const Dataset& data) {
  Rng rng(r.seed);
  const std::size_t s = coreset_size_for(data.size(), *r.alpha);
  auto t0 = Clock::now();
  SensitivityDistribution dist;
  if (r.algorithm == "lightweight") {
    dist = lightweight_distribution(data);
  } else if (r.algorithm == "sensitivity") {
    dist = sensitivity_distribution(data, kmeanspp_seed(data, r.k, 2.0, rng));
  } else {
    ProneConfig cfg;
    cfg.k = r.k;
    cfg.seed = r.seed;
    const auto result = prone(data, cfg, rng);
    r.total_updates = result.stats.total_updates;
    dist = sensitivity_distribution(data, result.model);
  }
  const auto coreset = sample_coreset(data, dist, s, rng);
  r.time_ms["coreset"] = ms_since(t0);

  t0 = Clock::now();
  const auto centers = cluster_coreset(coreset, r.k, rng);
  r.time_ms["cluster"] = ms_since(t0);
  t0 = Clock::now();
  r.cost_nearest = cost_with_nearest(data, centers, 2.0);
  r.time_ms["assign"] = ms_since(t0);
  r.cost_assignment = *r.cost_nearest;
  return r;
}

std::vector<Cell> build_cells(const NamedDataset& ds, const BenchOptions& o) {
  std::vector<Cell> cells;
  const Dataset& data = ds.data;
  const std::size_t n = data.size();
  auto add = [&](const std::string& algo, std::size_t k, std::optional<double> alpha, std::size_t rep,
                 auto&& body) {
    auto rec = base_record(o.suite, algo, ds, k, o.z, alpha, rep, o.seed);
    cells.push_back({[rec, &data, body]() { return body(rec, data); }});
  };

  for (std::size_t k : o.ks) {
    if (k < 1 || k > n) continue;
    for (std::size_t rep = 0; rep < o.reps; ++rep) {
      switch (o.suite) {
        case BenchSuite::direct:
          for (auto variant : {ProjectionVariant::standard, ProjectionVariant::variance, ProjectionVariant::covariance}) {
            const std::string name =
                variant == ProjectionVariant::standard ? "prone" : "prone-" + std::string(to_string(variant));
            add(name, k, std::nullopt, rep,
                [variant](ExperimentRecord r, const Dataset& d) { return run_prone_cell(std::move(r), d, variant); });
          }
          add("kmeanspp", k, std::nullopt, rep, run_kmeanspp_cell);
          break;
        case BenchSuite::coreset:
          add("baseline", k, std::nullopt, rep, run_baseline_cell);
          for (double f : kCoresetFractions) {
            if (coreset_size_for(n, f) < k) continue;
            for (const char* algo : {"sensitivity", "prone-coreset", "lightweight"}) {
              add(algo, k, f, rep, run_coreset_cell);
            }
          }
          break;
        case BenchSuite::boosted:
          add("kmeanspp", k, std::nullopt, rep, run_kmeanspp_cell);
          add("prone", k, std::nullopt, rep, [](ExperimentRecord r, const Dataset& d) {
            return run_prone_cell(std::move(r), d, ProjectionVariant::standard);
          });
          for (double alpha : kBoostedAlphas) {
            if (coreset_size_for(n, alpha) < k) continue;
            add("prone-boosted", k, alpha, rep, run_boosted_cell);
          }
          break;
      }
    }
  }
  return cells;
}

}  // namespace

double ExperimentRecord::algorithm_ms() const {
  double total = 0.0;
  for (const auto& [phase, t] : time_ms) {
    if (phase != "load" && phase != "assign") total += t;
  }
  return total;
}

nlohmann::ordered_json to_json(const ExperimentRecord& r, bool include_times) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["algorithm"] = r.algorithm;
  j["dataset"] = r.dataset;
  j["k"] = r.k;
  j["z"] = r.z;
  j["alpha"] = r.alpha ? nlohmann::ordered_json(*r.alpha) : nlohmann::ordered_json(nullptr);
  j["seed"] = r.seed;
  j["rep"] = r.rep;
  j["cost_assignment"] = r.cost_assignment;
  j["cost_nearest"] = r.cost_nearest ? nlohmann::ordered_json(*r.cost_nearest) : nlohmann::ordered_json(nullptr);
  if (include_times) {
    nlohmann::ordered_json times = nlohmann::ordered_json::object();
    for (const auto& [phase, t] : r.time_ms) times[phase] = t;
    j["time_ms"] = times;
  }
  j["total_updates"] = r.total_updates;
  return j;
}

BenchSuite parse_bench_suite(const std::string& name) {
  if (name == "direct") return BenchSuite::direct;
  if (name == "coreset") return BenchSuite::coreset;
  if (name == "boosted") return BenchSuite::boosted;
  throw std::invalid_argument("unknown suite: " + name);
}

std::string to_string(BenchSuite s) {
  switch (s) {
    case BenchSuite::direct:
      return "direct";
    case BenchSuite::coreset:
      return "coreset";
    case BenchSuite::boosted:
      return "boosted";
  }
  return "unknown";
}

NamedDataset resolve_dataset(const std::string& name) {
  if (name == "gaussian-small") return {name, gen_gaussian_mixture(20, 500, 10, 100.0, 1).data};
  if (name == "gaussian-medium") return {name, gen_gaussian_mixture(50, 2000, 16, 100.0, 1).data};
  if (name == "adversarial") return {name, gen_adversarial_gaussian(3000, 1)};
  if (name == "adversarial-full") return {name, gen_adversarial_gaussian(30000, 1)};
  const std::filesystem::path path(name);
  if (!std::filesystem::is_regular_file(path)) throw std::invalid_argument("unknown dataset: " + name);
  if (path.extension() == ".csv") return {path.filename().string(), load_dense_csv(path, false)};
  return {path.filename().string(), load_sparse(path)};
}

std::vector<ExperimentRecord> run_bench(const NamedDataset& dataset, const BenchOptions& options) {
  if (options.ks.empty()) throw std::invalid_argument("run_bench: no k values");
  if (options.reps < 1) throw std::invalid_argument("run_bench: reps must be positive");
  const auto cells = build_cells(dataset, options);
  std::vector<ExperimentRecord> records(cells.size());
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(cells.size(), 1));
  if (jobs == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) records[c] = cells[c].run();
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t c = next++; c < cells.size() && !failed; c = next++) {
          try {
            records[c] = cells[c].run();
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  using Key = std::tuple<std::string, std::size_t, double>;  // algorithm, k, alpha (-1 when absent)
  struct Acc {
    const ExperimentRecord* first = nullptr;
    std::size_t count = 0;
    std::size_t nearest_count = 0;
    double cost_assignment = 0.0;
    double cost_nearest = 0.0;
    double time = 0.0;
  };
  std::map<Key, Acc> cells;
  std::vector<Key> order;
  for (const auto& r : records) {
    const Key key{r.algorithm, r.k, r.alpha.value_or(-1.0)};
    auto [it, inserted] = cells.try_emplace(key);
    if (inserted) order.push_back(key);
    Acc& a = it->second;
    if (!a.first) a.first = &r;
    ++a.count;
    a.cost_assignment += r.cost_assignment;
    if (r.cost_nearest) {
      a.cost_nearest += *r.cost_nearest;
      ++a.nearest_count;
    }
    a.time += r.algorithm_ms();
  }

  std::vector<SummaryRow> rows;
  for (const auto& key : order) {
    const Acc& a = cells.at(key);
    SummaryRow row;
    row.suite = a.first->suite;
    row.dataset = a.first->dataset;
    row.algorithm = a.first->algorithm;
    row.k = a.first->k;
    row.alpha = a.first->alpha;
    row.reps = a.count;
    row.mean_cost_assignment = a.cost_assignment / static_cast<double>(a.count);
    if (a.nearest_count > 0) row.mean_cost_nearest = a.cost_nearest / static_cast<double>(a.nearest_count);
    row.mean_time_ms = a.time / static_cast<double>(a.count);
    rows.push_back(row);
  }

  for (auto& row : rows) {
    const bool coreset = row.suite == "coreset";
    const auto find = [&](const std::string& algo, std::optional<double> alpha) -> const SummaryRow* {
      for (const auto& other : rows) {
        if (other.algorithm == algo && other.k == row.k && other.alpha == alpha) return &other;
      }
      return nullptr;
    };
    const SummaryRow* cost_ref = find(coreset ? "baseline" : "kmeanspp", std::nullopt);
    if (cost_ref && cost_ref->mean_cost_nearest && row.mean_cost_nearest && *cost_ref->mean_cost_nearest > 0.0) {
      row.cost_ratio = *row.mean_cost_nearest / *cost_ref->mean_cost_nearest;
    }
    const SummaryRow* time_ref = coreset ? find("sensitivity", row.alpha) : cost_ref;
    if (time_ref && row.algorithm != "baseline" && row.mean_time_ms > 0.0) {
      row.speedup = time_ref->mean_time_ms / row.mean_time_ms;
    }
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.suite << ',' << r.dataset << ',' << r.algorithm << ',' << r.k << ',' << opt(r.alpha) << ',' << r.reps
        << ',' << format_double(r.mean_cost_assignment) << ',' << opt(r.mean_cost_nearest) << ','
        << opt(r.cost_ratio) << ',' << format_double(r.mean_time_ms) << ',' << opt(r.speedup) << '\n';
  }
}

std::size_t threads_from_env(std::size_t fallback) {
  const char* v = std::getenv("PRONE_THREADS");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v, &end, 10);
  if (*end != '\0' || parsed == 0) return fallback;
  return static_cast<std::size_t>(parsed);
}

}  // namespace prone
