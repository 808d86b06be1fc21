// Acceptance suite: one PASS/FAIL line per criterion with the measured values.
// Exits zero once every criterion has been evaluated, whatever the verdicts.
//
// ANTPOWER_NOBEL_EU may point at an SNDlib native file to use instead of the
// bundled nobel-eu instance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "antpower/baselines.h"
#include "antpower/errors.h"
#include "antpower/scenario.h"
#include "antpower/simulation.h"
#include "properties.h"

namespace antpower {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

std::string Pct(double fraction) { return Fmt("%.2f%%", 100.0 * fraction); }

bool Within(double value, double target, double tolerance) {
  return std::abs(value - target) <= tolerance;
}

Scenario Preset(const std::string& name) {
  Scenario s = LoadScenario(name);
  if (s.topology == "nobel-eu") {
    if (const char* path = std::getenv("ANTPOWER_NOBEL_EU"); path && *path) {
      s.topology = "sndlib";
      s.topology_path = path;
    }
  }
  return s;
}

// Runs every preset at most once.
class Runs {
 public:
  const ReplicationResult& Get(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    Scenario s = Preset(name);
    auto start = std::chrono::steady_clock::now();
    std::cerr << "running " << name << " (" << s.replications << " x "
              << s.iterations << ")" << std::flush;
    ReplicationResult r = Replicate(s);
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::cerr << " " << Fmt("%.1f", secs) << " s\n";
    return cache_.emplace(name, std::move(r)).first->second;
  }
  const Instance& InstanceOf(const std::string& name) {
    auto it = instances_.find(name);
    if (it != instances_.end()) return it->second;
    return instances_.emplace(name, BuildInstance(Preset(name))).first->second;
  }

 private:
  std::map<std::string, ReplicationResult> cache_;
  std::map<std::string, Instance> instances_;
};

Verdict OracleParity() {
  struct Case {
    const char* name;
    double expected;
  };
  Verdict v{true, ""};
  for (const Case& c : {Case{"fig1-log", std::log10(40.0 / 9.0)},
                        Case{"fig1-cubic", 13.0 / 27.0}}) {
    Instance inst = BuildInstance(LoadScenario(c.name));
    auto start = std::chrono::steady_clock::now();
    double power = ExhaustiveOptimum(inst.network, inst.flows).power;
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    bool ok = std::abs(power - c.expected) <= 1e-9 && secs < 1.0;
    v.pass = v.pass && ok;
    v.detail += std::string(c.name) + " optimum " + Fmt("%.12f", power) +
                " (expected " + Fmt("%.12f", c.expected) + ", rounds to " +
                Fmt("%.2f", power) + ") in " + Fmt("%.3f", secs) + " s; ";
  }
  return v;
}

Verdict LatticeCubic(Runs& runs) {
  const auto& agg = runs.Get("lattice8-cubic").aggregate;
  bool ok = Within(agg.savings.mean, 0.699, 0.02) &&
            Within(agg.path_length.mean, 9.9, 0.3) && agg.runs.size() == 100;
  return {ok, "savings " + Pct(agg.savings.mean) + " (target 69.90% +/- 2pp), " +
                  "path length " + Fmt("%.3f", agg.path_length.mean) +
                  " (target 9.9 +/- 0.3), replications " +
                  std::to_string(agg.runs.size())};
}

Verdict LatticeLogLinear(Runs& runs) {
  const auto& log = runs.Get("lattice8-log").aggregate;
  const auto& lin = runs.Get("lattice8-linear").aggregate;
  bool log_ok = Within(log.savings.mean, 0.133, 0.03);
  bool lin_ok = Within(lin.savings.mean, 0.0, 0.01) &&
                Within(lin.path_length.mean, 9.0, 0.05);
  return {log_ok && lin_ok,
          "log savings " + Pct(log.savings.mean) +
              " (target 13.30% +/- 3pp); linear savings " +
              Pct(lin.savings.mean) + " (target 0 +/- 1pp), path length " +
              Fmt("%.3f", lin.path_length.mean) + " (target 9.0 +/- 0.05)"};
}

struct Occupation {
  double unused = 0.0;  // mean count of links carrying no flow
  int max_flows = 0;    // largest per-link flow count over all runs
};

Occupation OccupationOf(Runs& runs, const std::string& name) {
  const ReplicationResult& r = runs.Get(name);
  const Network& net = runs.InstanceOf(name).network;
  Occupation occ;
  for (const RunMetrics& m : r.runs) {
    auto hist = LinkOccupationHistogram(net, m.final_paths);
    occ.unused += hist.count(0) ? hist.at(0) : 0;
    occ.max_flows = std::max(occ.max_flows, hist.rbegin()->first);
  }
  occ.unused /= static_cast<double>(r.runs.size());
  return occ;
}

Verdict Histogram(Runs& runs) {
  Occupation log = OccupationOf(runs, "lattice8-log");
  Occupation cub = OccupationOf(runs, "lattice8-cubic");
  Occupation lin = OccupationOf(runs, "lattice8-linear");
  bool ok = log.unused > cub.unused && log.unused > lin.unused &&
            cub.unused < lin.unused && log.max_flows >= 25;
  auto show = [](const char* name, const Occupation& o) {
    return std::string(name) + " unused " + Fmt("%.1f", o.unused) +
           " max flows " + std::to_string(o.max_flows);
  };
  return {ok, show("log", log) + "; " + show("cubic", cub) + "; " +
                  show("linear", lin)};
}

Verdict Nsfnet(Runs& runs) {
  const auto& log = runs.Get("nsfnet-fullmesh-log").aggregate;
  const auto& cub = runs.Get("nsfnet-fullmesh-cubic").aggregate;
  const auto& c2c_log = runs.Get("nsfnet-coast2coast-log").aggregate;
  const auto& c2c_cub = runs.Get("nsfnet-coast2coast-cubic").aggregate;
  const auto& ic_log = runs.Get("nsfnet-intracoast-log").aggregate;
  const auto& ic_cub = runs.Get("nsfnet-intracoast-cubic").aggregate;
  bool full = Within(log.savings.mean, 0.299, 0.04) &&
              Within(cub.savings.mean, 0.128, 0.03) &&
              Within(log.path_length_increment.mean, 0.11, 0.03);
  bool order = c2c_log.savings.mean > c2c_cub.savings.mean &&
               ic_log.savings.mean > ic_cub.savings.mean &&
               std::abs(ic_cub.savings.mean) < 0.005;
  std::ostringstream d;
  d << "fullmesh log " << Pct(log.savings.mean) << " (29.90% +/- 4pp), cubic "
    << Pct(cub.savings.mean) << " (12.80% +/- 3pp), log path increment "
    << Pct(log.path_length_increment.mean) << " (11.00% +/- 3pp); "
    << "coast2coast log " << Pct(c2c_log.savings.mean) << " vs cubic "
    << Pct(c2c_cub.savings.mean) << "; intracoast log "
    << Pct(ic_log.savings.mean) << " vs cubic " << Pct(ic_cub.savings.mean)
    << " (cubic expected 0)";
  return {full && order, d.str()};
}

// Per replication and traffic step: iterations spent above SPF power after
// the step, and whether the step ends below SPF power.
Verdict NobelEu(Runs& runs) {
  const auto& log = runs.Get("nobel-eu-log-staged").aggregate;
  bool log_ok = Within(log.savings.mean, 0.03, 0.02);

  const std::string staged = "nobel-eu-cubic-staged";
  const Scenario s = Preset(staged);
  const ReplicationResult& cub = runs.Get(staged);
  int worst_excursion = 0;
  int steps_above = 0, steps_total = 0;
  for (const RunMetrics& m : cub.runs) {
    for (int step = 0; step < s.traffic_steps; ++step) {
      int begin = step * s.step_interval;
      int end = step + 1 < s.traffic_steps ? begin + s.step_interval
                                           : s.iterations;
      int above = 0;
      for (int it = begin; it < end; ++it) {
        if (m.iterations[it].power > m.iterations[it].spf_power) ++above;
      }
      worst_excursion = std::max(worst_excursion, above);
      ++steps_total;
      if (!(m.iterations[end - 1].power < m.iterations[end - 1].spf_power)) {
        ++steps_above;
      }
    }
  }
  bool staged_ok = worst_excursion < 50 && steps_above == 0;
  std::ostringstream d;
  d << "log savings " << Pct(log.savings.mean) << " (3.00% +/- 2pp); cubic "
    << "staged: longest stretch above SPF " << worst_excursion
    << " iterations (limit < 50), steps ending at or above SPF " << steps_above
    << "/" << steps_total;
  return {log_ok && staged_ok, d.str()};
}

Verdict Pruning(Runs& runs) {
  const auto& log = runs.Get("nobel-eu-pruned-log").aggregate;
  const auto& cub = runs.Get("nobel-eu-pruned-cubic").aggregate;
  double increase = log.power.mean / log.spf_power.mean - 1.0;
  double ratio = cub.power.mean / cub.spf_power.mean;
  bool ok = Within(increase, 0.095, 0.02) && Within(ratio, 8.8, 0.2 * 8.8);
  return {ok, "log power increase " + Pct(increase) +
                  " (9.50% +/- 2pp), cubic power ratio " +
                  Fmt("%.3f", ratio) + " (8.8 +/- 20%)"};
}

Verdict Convergence(Runs& runs) {
  bool ok = true;
  std::ostringstream d;
  for (const std::string& name : PresetNames()) {
    if (LoadScenario(name).mode != RunMode::kAnt) continue;
    const auto& agg = runs.Get(name).aggregate;
    if (!(agg.savings.mean > 0.0)) continue;
    int positive = 0, fast = 0;
    for (const RunSummary& r : agg.runs) {
      if (!(r.final_savings > 0.0)) continue;
      ++positive;
      if (r.iterations_to_90 && *r.iterations_to_90 < 1000) ++fast;
    }
    bool scenario_ok = positive > 0 && fast >= 0.9 * positive;
    ok = ok && scenario_ok;
    d << name << " " << fast << "/" << positive
      << (scenario_ok ? "" : " (below 90%)") << "; ";
  }
  return {ok, d.str()};
}

Verdict Properties() {
  using testing::PropertyResult;
  struct Named {
    const char* name;
    std::function<PropertyResult()> check;
  };
  const std::vector<Named> checks{
      {"engine invariants", [] { return testing::CheckEngineInvariants(100, 200); }},
      {"recalibration range", [] { return testing::CheckRecalibrateRange(100000); }},
      {"oracle dominance", [] { return testing::CheckOracleDominance(100); }},
      {"seed determinism", [] { return testing::CheckDeterminism(200); }},
  };
  Verdict v{true, ""};
  for (const Named& c : checks) {
    PropertyResult r = c.check();
    v.pass = v.pass && r.ok;
    v.detail += std::string(c.name) + " " + (r.ok ? "ok" : "FAILED: " + r.detail) +
                " (" + std::to_string(r.cases) + " cases); ";
  }
  return v;
}

}  // namespace
}  // namespace antpower

int main() {
  using namespace antpower;
  Runs runs;
  struct Criterion {
    const char* id;
    std::function<Verdict()> evaluate;
  };
  const std::vector<Criterion> criteria{
      {"oracle-five-node", [] { return OracleParity(); }},
      {"lattice8-cubic", [&] { return LatticeCubic(runs); }},
      {"lattice8-log-linear", [&] { return LatticeLogLinear(runs); }},
      {"lattice8-occupation", [&] { return Histogram(runs); }},
      {"nsfnet", [&] { return Nsfnet(runs); }},
      {"nobel-eu", [&] { return NobelEu(runs); }},
      {"nobel-eu-pruning", [&] { return Pruning(runs); }},
      {"convergence", [&] { return Convergence(runs); }},
      {"properties", [] { return Properties(); }},
  };
  int passed = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    try {
      v = c.evaluate();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (v.pass) ++passed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << ": " << v.detail
              << std::endl;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return 0;
}
