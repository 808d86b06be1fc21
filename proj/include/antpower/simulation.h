#ifndef ANTPOWER_SIMULATION_H_
#define ANTPOWER_SIMULATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antpower/ant_routing.h"
#include "antpower/cost.h"
#include "antpower/network.h"

namespace antpower {

enum class RunMode {
  kAnt,        // ant routing against an SPF reference
  kPrunedSpf,  // SPF after pruning to the most used links, against plain SPF
};

// Everything needed to reproduce an experiment. See scenario.h for the file
// syntax and the bundled presets.
struct Scenario {
  std::string name;

  // "lattice", "nsfnet", "fig1", "nobel-eu", "file" or "sndlib".
  std::string topology = "lattice";
  int lattice_size = 8;
  std::string topology_path;

  // "log", "linear", "cubic" or "custom" (uses profile_coefficients).
  std::string profile = "log";
  std::vector<double> profile_coefficients;
  LogBase log_base = LogBase::kBase10;
  // Capacity given to every link; unset keeps the topology's own values
  // (unlimited for generated topologies).
  std::optional<double> capacity;
  double reference_capacity = 1.0;

  // "default" (the topology's natural matrix), "all-pairs", "fullmesh",
  // "coast2coast", "intracoast", "demands" or "file".
  std::string traffic = "default";
  std::string traffic_path;
  std::vector<std::string> west{"WA", "CA1", "CA2", "UT", "CO"};
  std::vector<std::string> east{"NY", "NJ", "PA", "MD", "GA", "MI"};
  // Flows join in `traffic_steps` equal groups, `step_interval` iterations
  // apart (flow k joins with group k mod traffic_steps).
  int traffic_steps = 1;
  int step_interval = 0;

  RunMode mode = RunMode::kAnt;
  AntParameters params;
  int iterations = 2000;
  int replications = 1;
  std::uint64_t seed = 1;

  // Throws ContractViolation on inconsistent settings.
  void Validate() const;
};

struct Instance {
  Network network;
  std::vector<Flow> flows;
};

CostProfile ScenarioProfile(const Scenario& s);
// Builds the network and flow list, reading files where the scenario says so.
Instance BuildInstance(const Scenario& s);

// Five-node example with three unit flows into one sink and capacity 3 on
// every link.
Instance BuildFig1Instance(const CostProfile& profile);

struct IterationMetrics {
  int iteration = 0;  // 1-based count of completed iterations
  double power = 0.0;
  double spf_power = 0.0;
  double savings = 0.0;  // 1 - power / spf_power
  double avg_path_length = 0.0;
  double spf_avg_path_length = 0.0;
  int active_flows = 0;
  int adoptions = 0;
  int rejections = 0;
  int aborted = 0;
};

struct RunMetrics {
  std::uint64_t seed = 0;
  std::vector<IterationMetrics> iterations;
  std::vector<Path> final_paths;  // empty path for flows never activated
};

// 1 - power / spf_power when both are finite and spf_power > 0, else 0.
double Savings(double power, double spf_power);

// Runs one replication. Throws UnroutableFlow before the first iteration if
// any flow lacks an SPF route.
RunMetrics RunScenario(const Scenario& s, std::uint64_t seed);
RunMetrics RunScenario(const Scenario& s, const Instance& instance,
                       std::uint64_t seed);

// Mean over the last 10% of iterations (at least one).
double FinalMean(const RunMetrics& m, double IterationMetrics::*field);

// First iteration whose savings reach `threshold` times the final savings;
// absent when final savings are not positive or never reached.
std::optional<int> ConvergenceIterations(const RunMetrics& m,
                                         double threshold);

struct Estimate {
  double mean = 0.0;
  std::optional<double> half_width;  // 95% normal interval, needs n >= 2
  int samples = 0;
};

// Mean and 95% half-width (1.96 s / sqrt(n)) of `values`.
Estimate Summarize(std::span<const double> values);

struct RunSummary {
  std::uint64_t seed = 0;
  double final_power = 0.0;
  double final_spf_power = 0.0;
  double final_savings = 0.0;
  double final_path_length = 0.0;
  double spf_path_length = 0.0;
  std::optional<int> iterations_to_90;
  std::optional<int> iterations_to_99;
};

struct AggregateMetrics {
  std::string scenario;
  std::vector<RunSummary> runs;  // in seed order
  Estimate savings;
  Estimate power;
  Estimate spf_power;
  Estimate path_length;
  Estimate spf_path_length;
  Estimate path_length_increment;  // relative to SPF
  Estimate iterations_to_90;       // over runs where defined
  Estimate iterations_to_99;
  // Per-iteration means across runs.
  std::vector<double> mean_power;
  std::vector<double> mean_savings;
};

RunSummary Summarize(const RunMetrics& m);
AggregateMetrics Aggregate(const std::string& name,
                           std::span<const RunSummary> runs,
                           std::span<const RunMetrics> metrics);

struct ReplicationResult {
  std::vector<RunMetrics> runs;
  AggregateMetrics aggregate;
};

// `replications` independent runs with seeds seed, seed+1, ...; spread over
// up to `threads` workers (0 = hardware concurrency). Results do not depend
// on the thread count.
ReplicationResult Replicate(const Scenario& s, unsigned threads = 0);

// Number of links carrying k flows, for every k present (k = 0 counts
// unused links).
std::map<int, int> LinkOccupationHistogram(const Network& net,
                                           std::span<const Path> paths);

}  // namespace antpower

#endif  // ANTPOWER_SIMULATION_H_
