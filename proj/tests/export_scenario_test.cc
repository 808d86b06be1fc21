#include <string>
#include <vector>

#include "antpower/errors.h"
#include "antpower/export.h"
#include "antpower/scenario.h"
#include "antpower/simulation.h"
#include "doctest.h"
#include "test_util.h"

namespace antpower {
namespace {

int Count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

TEST_SUITE("cli-io") {

TEST_CASE("graph export") {
  Network net = testing::Triangle(CostProfile::Linear());
  SUBCASE("no flows leaves every link dotted") {
    std::string dot = ExportDot(net, {});
    CHECK(Count(dot, "style=dotted") == 6);
    CHECK(Count(dot, "style=solid") == 0);
  }
  SUBCASE("one flow marks exactly its links") {
    std::vector<Path> paths{testing::PathOf(net, {"o", "m", "d"})};
    std::string dot = ExportDot(net, paths);
    CHECK(Count(dot, "style=solid") == 2);
    CHECK(Count(dot, "\"o\" -> \"m\" [style=solid") == 1);
    CHECK(Count(dot, "\"m\" -> \"d\" [style=solid") == 1);
  }
  SUBCASE("output is reproducible") {
    std::vector<Path> paths{testing::PathOf(net, {"o", "d"})};
    CHECK(ExportDot(net, paths) == ExportDot(net, paths));
  }
}

TEST_CASE("number formatting") {
  CHECK(FormatDouble(0.1) == "0.1");
  CHECK(std::stod(FormatDouble(13.0 / 27.0)) == 13.0 / 27.0);
  CHECK(FormatDouble(1.0 / 0.0) == "inf");
}

TEST_CASE("csv exports") {
  RunMetrics m;
  m.seed = 3;
  IterationMetrics row;
  row.iteration = 1;
  row.power = 0.5;
  row.spf_power = 1.0;
  row.savings = 0.5;
  row.avg_path_length = 2.0;
  m.iterations.push_back(row);
  CHECK(IterationsCsv(m) ==
        "iteration,power,spf_power,savings,avg_path_len,adoptions,rejections\n"
        "1,0.5,1,0.5,2,0,0\n");
  std::vector<RunSummary> runs{Summarize(m)};
  AggregateMetrics agg = Aggregate("x", runs, {});
  std::string csv = AggregateCsv(agg);
  CHECK(csv.find("savings,0.5,,1\n") != std::string::npos);
  CHECK(csv.find("iterations_to_90,1,,1\n") != std::string::npos);
  CHECK(HistogramCsv({{0, 4}, {2, 1}}) == "flows,links\n0,4\n2,1\n");
}

TEST_CASE("scenario files") {
  SUBCASE("keys are applied") {
    Scenario s = ParseScenario(
        "# comment\n"
        "name = demo\n"
        "topology = lattice:4\n"
        "profile = cubic\n"
        "iterations = 50   # trailing comment\n"
        "pi_e = 0.2\n"
        "require_improvement = false\n");
    CHECK(s.name == "demo");
    CHECK(s.lattice_size == 4);
    CHECK(s.profile == "cubic");
    CHECK(s.iterations == 50);
    CHECK(s.params.exploration == 0.2);
    CHECK_FALSE(s.params.require_improvement);
  }
  SUBCASE("errors carry the line number") {
    try {
      ParseScenario("name = x\n\nbogus = 1\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    try {
      ParseScenario("iterations = many\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(ParseScenario("no equals sign\n"), ParseError);
    CHECK_THROWS_AS(ParseScenario("require_improvement = maybe\n"),
                    ParseError);
  }
  SUBCASE("every preset loads and builds") {
    auto names = PresetNames();
    CHECK(names.size() >= 10);
    for (const std::string& name : names) {
      CAPTURE(name);
      Scenario s = LoadScenario(name);
      CHECK(s.name == name);
      CHECK_NOTHROW(s.Validate());
      Instance inst = BuildInstance(s);
      CHECK(inst.network.num_nodes() > 0);
      CHECK_FALSE(inst.flows.empty());
    }
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(LoadScenario("/nonexistent/scenario.txt"), Error);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace antpower
