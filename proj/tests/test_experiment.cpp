#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "doctest.h"
#include "prone/experiment.hpp"

using namespace prone;

namespace {

NamedDataset small_mixture() { return {"mix", gen_gaussian_mixture(5, 100, 4, 100.0, 3).data}; }

}  // namespace

TEST_CASE("suite names") {
  for (auto s : {BenchSuite::direct, BenchSuite::coreset, BenchSuite::boosted}) {
    CHECK(parse_bench_suite(to_string(s)) == s);
  }
  CHECK_THROWS_AS(parse_bench_suite("other"), std::invalid_argument);
}

TEST_CASE("dataset resolution") {
  CHECK(resolve_dataset("gaussian-small").data.size() == 10000);
  CHECK(resolve_dataset("adversarial").data.size() == 24005);
  CHECK_THROWS_AS(resolve_dataset("no-such-dataset"), std::invalid_argument);
}

TEST_CASE("direct suite record count and ordering") {
  BenchOptions o;
  o.suite = BenchSuite::direct;
  o.ks = {5, 20};
  o.reps = 3;
  o.seed = 1;
  const auto records = run_bench(small_mixture(), o);
  CHECK(records.size() == 2 * 3 * 4);
  std::set<std::string> algos;
  for (const auto& r : records) {
    algos.insert(r.algorithm);
    CHECK(r.cost_nearest.has_value());
    CHECK(std::isfinite(r.cost_assignment));
    CHECK(r.cost_assignment >= 0.0);
    CHECK(*r.cost_nearest <= r.cost_assignment * (1 + 1e-12));
  }
  CHECK(algos == std::set<std::string>{"prone", "prone-variance", "prone-covariance", "kmeanspp"});

  o.jobs = 3;
  const auto parallel = run_bench(small_mixture(), o);
  REQUIRE(parallel.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(parallel[i].algorithm == records[i].algorithm);
    CHECK(parallel[i].seed == records[i].seed);
    CHECK(parallel[i].cost_assignment == records[i].cost_assignment);
  }
}

TEST_CASE("coreset suite skips sizes below k") {
  BenchOptions o;
  o.suite = BenchSuite::coreset;
  o.ks = {10};
  const auto records = run_bench(small_mixture(), o);
  // n = 500: fractions with ceil(f * n) >= 10 are 0.025, 0.05 and 0.1.
  std::size_t coreset_cells = 0;
  for (const auto& r : records) {
    if (r.algorithm == "baseline") continue;
    ++coreset_cells;
    REQUIRE(r.alpha.has_value());
    CHECK(std::ceil(*r.alpha * 500) >= 10);
  }
  CHECK(coreset_cells == 3 * 3);
}

TEST_CASE("boosted suite") {
  BenchOptions o;
  o.suite = BenchSuite::boosted;
  o.ks = {5};
  o.reps = 2;
  const auto records = run_bench(small_mixture(), o);
  // kmeanspp, prone, and boosted at alpha 0.01 and 0.1 (alpha 0.001 gives s = 1 < 5).
  CHECK(records.size() == 2 * 4);
  const auto rows = summarize(records);
  CHECK(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.reps == 2);
    REQUIRE(row.cost_ratio.has_value());
    if (row.algorithm == "kmeanspp") {
      CHECK(*row.cost_ratio == 1.0);
      CHECK(*row.speedup == 1.0);
    }
  }
}

TEST_CASE("summary csv and json records") {
  BenchOptions o;
  o.ks = {5};
  const auto records = run_bench(small_mixture(), o);
  std::ostringstream csv;
  write_summary_csv(csv, summarize(records));
  const std::string text = csv.str();
  CHECK(text.substr(0, text.find('\n')) == kSummaryHeader);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);

  const auto j = to_json(records[0]);
  for (const char* key : {"suite", "algorithm", "dataset", "k", "z", "alpha", "seed", "rep", "cost_assignment",
                          "cost_nearest", "time_ms", "total_updates"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(to_json(records[0], false).contains("time_ms"));
}

TEST_CASE("records are reproducible from the bench seed") {
  BenchOptions o;
  o.ks = {5};
  o.seed = 42;
  const auto a = run_bench(small_mixture(), o);
  const auto b = run_bench(small_mixture(), o);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].cost_assignment == b[i].cost_assignment);
    CHECK(a[i].cost_nearest == b[i].cost_nearest);
  }
  o.seed = 43;
  CHECK(run_bench(small_mixture(), o)[0].seed != a[0].seed);
}

TEST_CASE("algorithm time excludes load and assign") {
  ExperimentRecord r;
  r.time_ms = {{"load", 100.0}, {"project", 1.0}, {"seed", 2.0}, {"lift", 3.0}, {"assign", 50.0}};
  CHECK(r.algorithm_ms() == 6.0);
}

TEST_CASE("thread count from the environment") {
  ::setenv("PRONE_THREADS", "3", 1);
  CHECK(threads_from_env(1) == 3);
  ::setenv("PRONE_THREADS", "zero", 1);
  CHECK(threads_from_env(1) == 1);
  ::unsetenv("PRONE_THREADS");
  CHECK(threads_from_env(2) == 2);
}
