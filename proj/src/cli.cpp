#include "prone/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "prone/baseline.hpp"
#include "prone/coreset.hpp"
#include "prone/dataset.hpp"
#include "prone/experiment.hpp"
#include "prone/pipeline.hpp"

namespace prone::cli {

namespace {

constexpr int kUsageError = 2;
constexpr int kRunError = 1;

using Clock = std::chrono::steady_clock;

double ms(std::chrono::nanoseconds t) { return std::chrono::duration<double, std::milli>(t).count(); }

struct ClusterArgs {
  std::string input;
  std::string format = "csv";
  bool header = false;
  std::size_t k = 0;
  double z = 2.0;
  std::string algo = "prone";
  std::optional<double> alpha;
  std::uint64_t seed = 0;
  bool assign_nearest = false;
  std::string output;
  std::string coreset_out;
  bool stats = false;
};

struct BenchArgs {
  std::string suite;
  std::string dataset;
  std::vector<std::size_t> ks;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
  std::string out;
};

struct GenArgs {
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t per_cluster = 0;
  std::size_t d = 0;
  double separation = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

void write_labels(const std::string& path, const std::vector<std::uint32_t>& labels) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  std::string buf;
  for (std::uint32_t l : labels) {
    buf += std::to_string(l);
    buf += '\n';
  }
  f << buf;
}

void write_centers(const std::string& path, const CenterSet& centers) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_csv(f, centers);
}

int cmd_cluster(const ClusterArgs& a, std::ostream& out, std::ostream& err) {
  if (a.alpha && a.algo != "boosted") {
    err << "error: --alpha only applies to --algo boosted\n";
    return kUsageError;
  }
  if (!a.coreset_out.empty() && a.algo != "boosted") {
    err << "error: --coreset-out only applies to --algo boosted\n";
    return kUsageError;
  }
  auto t0 = Clock::now();
  const Dataset data = a.format == "csv" ? load_dense_csv(a.input, a.header) : load_sparse(a.input);
  const double load_ms = ms(Clock::now() - t0);
  if (a.k > data.size()) {
    err << "error: --k " << a.k << " exceeds the number of points " << data.size() << '\n';
    return kUsageError;
  }

  ExperimentRecord rec;
  rec.suite = "cluster";
  rec.algorithm = a.algo;
  rec.dataset = a.input;
  rec.k = a.k;
  rec.z = a.z;
  rec.seed = a.seed;
  rec.time_ms["load"] = load_ms;

  CenterSet centers;
  std::vector<std::uint32_t> labels;
  bool exhausted = false;
  std::uint64_t comparisons = 0;

  if (a.algo.starts_with("prone")) {
    ProneConfig cfg;
    cfg.k = a.k;
    cfg.z = a.z;
    cfg.seed = a.seed;
    cfg.variant = a.algo == "prone" ? ProjectionVariant::standard : parse_projection_variant(a.algo.substr(6));
    auto result = prone(data, cfg);
    rec.cost_assignment = result.model.cost;
    rec.total_updates = result.stats.total_updates;
    comparisons = result.stats.comparisons;
    exhausted = result.model.exhausted;
    rec.time_ms["project"] = ms(result.timings.project);
    rec.time_ms["seed"] = ms(result.timings.seed);
    rec.time_ms["lift"] = ms(result.timings.lift);
    if (a.assign_nearest) {
      t0 = Clock::now();
      auto nearest = nearest_assignment(data, result.model.centers);
      labels = std::move(nearest.labels);
      rec.cost_nearest = cost_with_assignment(data, result.model.centers, labels, a.z);
      rec.time_ms["assign"] = ms(Clock::now() - t0);
    } else {
      labels = std::move(result.model.assignment);
    }
    centers = std::move(result.model.centers);
  } else if (a.algo == "kmeanspp") {
    Rng rng(a.seed);
    t0 = Clock::now();
    auto model = kmeanspp_seed(data, a.k, a.z, rng);
    rec.time_ms["seed"] = ms(Clock::now() - t0);
    rec.cost_assignment = model.cost;
    rec.cost_nearest = model.cost;
    exhausted = model.exhausted;
    centers = std::move(model.centers);
    labels = std::move(model.assignment);
  } else {
    const double alpha = a.alpha.value_or(0.1);
    rec.alpha = alpha;
    Rng rng(a.seed);
    BoostedResult result = [&] {
      try {
        return boosted_prone(data, a.k, a.z, alpha, rng);
      } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--alpha", e.what());
      }
    }();
    rec.time_ms["seed"] = ms(result.prone_time);
    rec.time_ms["coreset"] = ms(result.coreset_time);
    rec.time_ms["cluster"] = ms(result.seed_time);
    exhausted = result.exhausted;
    t0 = Clock::now();
    auto model = assign_nearest(data, std::move(result.centers), a.z);
    rec.time_ms["assign"] = ms(Clock::now() - t0);
    rec.cost_assignment = model.cost;
    rec.cost_nearest = model.cost;
    if (!a.coreset_out.empty()) write_weighted_csv(a.coreset_out, result.coreset);
    centers = std::move(model.centers);
    labels = std::move(model.assignment);
  }

  if (!a.output.empty()) {
    write_centers(a.output + ".centers.csv", centers);
    write_labels(a.output + ".labels", labels);
  }

  auto j = to_json(rec, a.stats);
  j["clusters"] = centers.size();
  if (a.stats) {
    j["comparisons"] = comparisons;
    j["exhausted"] = exhausted;
  }
  out << j.dump() << '\n';
  return 0;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchOptions opts;
  try {
    opts.suite = parse_bench_suite(a.suite);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  opts.ks = a.ks;
  opts.reps = a.reps;
  opts.seed = a.seed;
  opts.jobs = a.jobs > 0 ? a.jobs : threads_from_env(1);

  NamedDataset ds = [&]() -> NamedDataset {
    try {
      return resolve_dataset(a.dataset);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--dataset", e.what());
    }
  }();
  const auto records = run_bench(ds, opts);

  std::ofstream jsonl(a.out);
  if (!jsonl) throw std::runtime_error("cannot write " + a.out);
  for (const auto& r : records) jsonl << to_json(r).dump() << '\n';
  std::ofstream summary(a.out + ".summary.csv");
  if (!summary) throw std::runtime_error("cannot write " + a.out + ".summary.csv");
  write_summary_csv(summary, summarize(records));

  out << "wrote " << records.size() << " records to " << a.out << " and " << a.out << ".summary.csv\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PRONE clustering toolkit", "prone"};
  app.require_subcommand(1);

  ClusterArgs ca;
  auto* cluster = app.add_subcommand("cluster", "Cluster a dataset and write centers and labels");
  cluster->add_option("--input", ca.input, "Input file")->required()->check(CLI::ExistingFile);
  cluster->add_option("--format", ca.format, "csv or sparse")->check(CLI::IsMember({"csv", "sparse"}));
  cluster->add_flag("--header", ca.header, "CSV input has a header line");
  cluster->add_option("--k", ca.k, "Number of clusters")->required()->check(CLI::PositiveNumber);
  cluster->add_option("--z", ca.z, "Distance exponent (z >= 1)")->check(CLI::Range(1.0, 64.0));
  cluster->add_option("--algo", ca.algo, "Algorithm")
      ->check(CLI::IsMember({"prone", "prone-variance", "prone-covariance", "kmeanspp", "boosted"}));
  cluster->add_option("--alpha", ca.alpha, "Coreset fraction for boosted")->check(CLI::Range(1e-12, 1e12));
  cluster->add_option("--seed", ca.seed, "RNG seed");
  cluster->add_flag("--assign-nearest", ca.assign_nearest, "Reassign points to their nearest center (O(ndk))");
  cluster->add_option("--output", ca.output, "Output prefix: <prefix>.centers.csv and <prefix>.labels");
  cluster->add_option("--coreset-out", ca.coreset_out, "Write the boosted coreset (weight column first)");
  cluster->add_flag("--stats", ca.stats, "Include timings and seeding counters in the JSON record");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--suite", ba.suite, "direct, coreset or boosted")->required();
  bench->add_option("--dataset", ba.dataset, "Built-in dataset name or file path")->required();
  bench->add_option("--ks", ba.ks, "Comma-separated k values")->required()->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--reps", ba.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  bench->add_option("--seed", ba.seed, "Base seed");
  bench->add_option("--jobs", ba.jobs, "Parallel cells (default: PRONE_THREADS or 1)")->check(CLI::PositiveNumber);
  bench->add_option("--out", ba.out, "JSON-lines output; summary goes to <out>.summary.csv")->required();

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset as CSV");
  gen->require_subcommand(1);
  auto* adv = gen->add_subcommand("gaussian-adversarial", "Mirrored axis Gaussians plus 5 origin points");
  adv->add_option("--m", ga.m, "Points per axis cluster")->required()->check(CLI::PositiveNumber);
  adv->add_option("--seed", ga.seed, "RNG seed");
  adv->add_option("--out", ga.out, "Output CSV")->required();
  auto* mix = gen->add_subcommand("mixture", "Gaussian mixture");
  mix->add_option("--k", ga.k, "Clusters")->required()->check(CLI::PositiveNumber);
  mix->add_option("--per-cluster", ga.per_cluster, "Points per cluster")->required()->check(CLI::PositiveNumber);
  mix->add_option("--d", ga.d, "Dimension")->required()->check(CLI::PositiveNumber);
  mix->add_option("--separation", ga.separation, "Side of the center cube")->required()->check(CLI::PositiveNumber);
  mix->add_option("--seed", ga.seed, "RNG seed");
  mix->add_option("--out", ga.out, "Output CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (cluster->parsed()) return cmd_cluster(ca, out, err);
    if (bench->parsed()) return cmd_bench(ba, out, err);
    if (adv->parsed()) {
      write_csv(ga.out, gen_adversarial_gaussian(ga.m, ga.seed));
      return 0;
    }
    if (mix->parsed()) {
      write_csv(ga.out, gen_gaussian_mixture(ga.k, ga.per_cluster, ga.d, ga.separation, ga.seed).data);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRunError;
  }
  return kUsageError;
}

}  // namespace prone::cli
