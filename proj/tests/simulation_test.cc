#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "antpower/baselines.h"
#include "antpower/errors.h"
#include "antpower/scenario.h"
#include "antpower/simulation.h"
#include "doctest.h"
#include "test_util.h"

namespace antpower {
namespace {

RunMetrics WithSavings(std::initializer_list<double> savings) {
  RunMetrics m;
  int it = 0;
  for (double s : savings) {
    IterationMetrics row;
    row.iteration = ++it;
    row.savings = s;
    m.iterations.push_back(row);
  }
  return m;
}

TEST_SUITE("sim-harness") {

TEST_CASE("savings") {
  CHECK(Savings(0.5, 1.0) == 0.5);
  CHECK(Savings(1.2, 1.0) == doctest::Approx(-0.2));
  CHECK(Savings(1.0, 0.0) == 0.0);
  CHECK(Savings(std::numeric_limits<double>::infinity(), 1.0) == 0.0);
}

TEST_CASE("summaries and intervals") {
  SUBCASE("single replication has no interval") {
    std::vector<double> one{0.3};
    Estimate e = Summarize(one);
    CHECK(e.mean == 0.3);
    CHECK_FALSE(e.half_width);
    CHECK(e.samples == 1);
  }
  SUBCASE("identical values give a zero-width interval") {
    std::vector<double> same(5, 0.25);
    Estimate e = Summarize(same);
    REQUIRE(e.half_width);
    CHECK(*e.half_width == 0.0);
  }
  SUBCASE("normal half width") {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    Estimate e = Summarize(v);
    CHECK(e.mean == 2.5);
    CHECK(*e.half_width ==
          doctest::Approx(1.96 * std::sqrt(5.0 / 3.0) / 2.0));
  }
  SUBCASE("empty input") {
    std::vector<double> none;
    Estimate e = Summarize(none);
    CHECK(e.samples == 0);
    CHECK_FALSE(e.half_width);
  }
}

TEST_CASE("convergence iterations") {
  RunMetrics m = WithSavings({0.0, 0.5, 0.9, 0.995, 1.0, 1.0, 1.0, 1.0, 1.0,
                              1.0});
  CHECK(ConvergenceIterations(m, 0.9) == 3);
  CHECK(ConvergenceIterations(m, 0.99) == 4);
  CHECK_FALSE(ConvergenceIterations(WithSavings({0.1, -0.2}), 0.9));
  CHECK_FALSE(ConvergenceIterations(WithSavings({0.0, 0.0}), 0.9));
  CHECK_THROWS_AS(ConvergenceIterations(m, 1.0), ContractViolation);
  CHECK(FinalMean(WithSavings({0.0, 1.0}), &IterationMetrics::savings) == 1.0);
}

TEST_CASE("aggregation ignores run order") {
  std::vector<RunSummary> runs;
  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    RunSummary r;
    r.seed = seed;
    r.final_savings = std::uniform_real_distribution<double>(0, 1)(rng);
    r.final_power = 1.0 - r.final_savings;
    r.final_spf_power = 1.0;
    r.final_path_length = 3.0 + r.final_savings;
    r.spf_path_length = 3.0;
    if (seed % 3 != 0) r.iterations_to_90 = static_cast<int>(seed) * 7;
    runs.push_back(r);
  }
  AggregateMetrics a = Aggregate("x", runs, {});
  std::shuffle(runs.begin(), runs.end(), rng);
  AggregateMetrics b = Aggregate("x", runs, {});
  CHECK(a.savings.mean == b.savings.mean);
  CHECK(*a.savings.half_width == *b.savings.half_width);
  CHECK(a.path_length_increment.mean == b.path_length_increment.mean);
  CHECK(a.iterations_to_90.samples == 8);
  CHECK(a.iterations_to_90.mean == b.iterations_to_90.mean);
  CHECK_FALSE(a.iterations_to_99.half_width);
}

TEST_CASE("run without flows") {
  Scenario s;
  s.iterations = 5;
  Instance inst;
  inst.network = testing::Triangle(CostProfile::Logarithmic());
  RunMetrics m = RunScenario(s, inst, 1);
  REQUIRE(m.iterations.size() == 5);
  for (const auto& row : m.iterations) {
    CHECK(row.power == 0.0);
    CHECK(row.savings == 0.0);
    CHECK(row.active_flows == 0);
  }
}

TEST_CASE("staged traffic") {
  Scenario s = LoadScenario("lattice5-cubic");
  s.traffic_steps = 3;
  s.step_interval = 10;
  s.iterations = 35;
  RunMetrics m = RunScenario(s, 1);
  const int total = 25;
  CHECK(m.iterations[0].active_flows == 9);
  CHECK(m.iterations[9].active_flows == 9);
  CHECK(m.iterations[10].active_flows == 17);
  CHECK(m.iterations[20].active_flows == total);
  for (const auto& row : m.iterations) {
    CHECK(row.savings >= -1e-12);
  }
}

TEST_CASE("linear profile never loses much against shortest paths") {
  Scenario s = LoadScenario("lattice5-linear");
  s.iterations = 200;
  for (std::uint64_t seed : {1u, 2u}) {
    RunMetrics m = RunScenario(s, seed);
    for (const auto& row : m.iterations) CHECK(row.savings >= -0.05);
  }
}

TEST_CASE("replication is independent of threads") {
  Scenario s = LoadScenario("fig1-cubic");
  s.iterations = 100;
  s.replications = 6;
  ReplicationResult one = Replicate(s, 1);
  ReplicationResult many = Replicate(s, 4);
  REQUIRE(one.aggregate.runs.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(one.aggregate.runs[k].seed == s.seed + k);
    CHECK(one.aggregate.runs[k].final_power ==
          many.aggregate.runs[k].final_power);
  }
  CHECK(one.aggregate.mean_power == many.aggregate.mean_power);
}

TEST_CASE("link occupation histogram") {
  Network net = testing::Triangle(CostProfile::Linear());
  std::vector<Path> none(2);
  auto empty = LinkOccupationHistogram(net, none);
  CHECK(empty == std::map<int, int>{{0, 6}});
  std::vector<Path> paths{testing::PathOf(net, {"o", "d"}),
                          testing::PathOf(net, {"o", "m", "d"}),
                          testing::PathOf(net, {"o", "d"})};
  auto h = LinkOccupationHistogram(net, paths);
  CHECK(h == std::map<int, int>{{0, 3}, {1, 2}, {2, 1}});
}

TEST_CASE("pruned shortest path mode") {
  Scenario s;
  s.mode = RunMode::kPrunedSpf;
  Instance inst;
  inst.network = testing::Triangle(CostProfile::Cubic());
  inst.flows = {testing::FlowOf(inst.network, 0, "o", "d"),
                testing::FlowOf(inst.network, 1, "o", "d")};
  RunMetrics m = RunScenario(s, inst, 1);
  REQUIRE(m.iterations.size() == 1);
  CHECK(m.final_paths[0] == testing::PathOf(inst.network, {"o", "d"}));
  CHECK(m.iterations[0].power == doctest::Approx(8.0));
  CHECK(m.iterations[0].savings == 0.0);

  // Keeping one link per lattice node strands some demands.
  Scenario lattice = LoadScenario("lattice5-cubic");
  lattice.mode = RunMode::kPrunedSpf;
  CHECK_THROWS_AS(RunScenario(lattice, 1), UnroutableFlow);
}

TEST_CASE("five-node example reaches the optimum in most runs" *
          doctest::may_fail()) {
  Scenario s = LoadScenario("fig1-cubic");
  s.replications = 100;
  Instance inst = BuildInstance(s);
  const double optimum = ExhaustiveOptimum(inst.network, inst.flows).power;
  ReplicationResult result = Replicate(s);
  int close = 0;
  for (const RunSummary& r : result.aggregate.runs) {
    if (r.final_power <= 1.1 * optimum) ++close;
  }
  MESSAGE("runs within 10% of optimum: " << close << "/100");
  CHECK(close >= 90);
}

}  // TEST_SUITE

}  // namespace
}  // namespace antpower
