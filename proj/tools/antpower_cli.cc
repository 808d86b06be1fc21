// Command-line front end: runs scenarios, solves small instances exactly and
// exports topologies.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "antpower/baselines.h"
#include "antpower/errors.h"
#include "antpower/export.h"
#include "antpower/scenario.h"
#include "antpower/simulation.h"
#include "antpower/topology_io.h"

namespace fs = std::filesystem;

namespace antpower {
namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitRefused = 3;
constexpr char kOutDirVariable[] = "ANTPOWER_OUT_DIR";

struct RunOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> iterations;
  std::string out;
  std::vector<std::string> params;
  unsigned threads = 0;
  bool quiet = false;
};

struct OracleOptionsCli {
  std::string scenario = "fig1-log";
  std::vector<std::string> params;
  std::uint64_t max_states = OracleOptions{}.max_states;
  std::string compare;
};

struct TopologyOptions {
  std::string scenario;
  std::vector<std::string> params;
  std::string format = "topo";
  std::string out;
};

Scenario LoadWithOverrides(const std::string& name,
                           const std::vector<std::string>& params) {
  Scenario s = LoadScenario(name);
  for (const std::string& kv : params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError(0, "--param expects key=value, got '" + kv + "'");
    }
    ApplyScenarioParam(s, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return s;
}

std::string Percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * fraction);
  return buf;
}

std::string Short(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string WithInterval(const Estimate& e, bool percent) {
  std::string out = percent ? Percent(e.mean) : Short(e.mean);
  if (e.half_width) {
    out += " +/- " + (percent ? Percent(*e.half_width)
                              : Short(*e.half_width));
  }
  return out;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

std::string SafeName(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
              c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out.empty() ? "scenario" : out;
}

int Run(const RunOptions& opt) {
  Scenario s = LoadWithOverrides(opt.scenario, opt.params);
  if (opt.seed) s.seed = *opt.seed;
  if (opt.reps) s.replications = *opt.reps;
  if (opt.iterations) s.iterations = *opt.iterations;
  s.Validate();
  Instance instance = BuildInstance(s);

  ReplicationResult result = Replicate(s, opt.threads);
  const AggregateMetrics& agg = result.aggregate;

  // Everything is rendered before the first file is created.
  std::map<std::string, std::string> files;
  files["aggregate.csv"] = AggregateCsv(agg);
  files["runs.csv"] = RunsCsv(agg);
  for (const RunMetrics& run : result.runs) {
    files["iterations-seed" + std::to_string(run.seed) + ".csv"] =
        IterationsCsv(run);
  }
  const RunMetrics& first = result.runs.front();
  files["histogram.csv"] =
      HistogramCsv(LinkOccupationHistogram(instance.network, first.final_paths));
  files["occupation.dot"] = ExportDot(instance.network, first.final_paths);

  std::string out = opt.out;
  if (out.empty()) {
    const char* env = std::getenv(kOutDirVariable);
    out = env && *env ? env : "antpower-out";
  }
  fs::path dir = fs::path(out) / SafeName(s.name);
  fs::create_directories(dir);
  for (const auto& [file, content] : files) WriteFile(dir / file, content);

  if (!opt.quiet) {
    std::cout << "scenario          " << s.name << "\n"
              << "replications      " << agg.runs.size() << " (seeds "
              << s.seed << ".." << s.seed + agg.runs.size() - 1 << ")\n"
              << "iterations        " << s.iterations << "\n"
              << "power             " << WithInterval(agg.power, false) << "\n"
              << "spf power         " << WithInterval(agg.spf_power, false)
              << "\n"
              << "savings           " << WithInterval(agg.savings, true) << "\n"
              << "path length       " << WithInterval(agg.path_length, false)
              << " (spf " << Short(agg.spf_path_length.mean) << ")\n"
              << "path length delta "
              << WithInterval(agg.path_length_increment, true) << "\n";
    auto conv = [](const Estimate& e) {
      if (e.samples == 0) return std::string("n/a");
      return Short(e.mean) + " over " + std::to_string(e.samples) +
             " runs";
    };
    std::cout << "iterations to 90% " << conv(agg.iterations_to_90) << "\n"
              << "iterations to 99% " << conv(agg.iterations_to_99) << "\n"
              << "output            " << dir.string() << "\n";
  }
  return 0;
}

// Final power of an iterations CSV: the power column of its last row.
double FinalPowerFromCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line, last;
  std::size_t line_no = 0, last_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    last = line;
    last_no = line_no;
  }
  if (last.empty()) throw ParseError(line_no, "no data rows in " + path);
  std::istringstream row(last);
  std::string iteration, power;
  if (!std::getline(row, iteration, ',') || !std::getline(row, power, ',')) {
    throw ParseError(last_no, "malformed row in " + path);
  }
  try {
    return std::stod(power);
  } catch (const std::exception&) {
    throw ParseError(last_no, "bad power value '" + power + "'");
  }
}

int Oracle(const OracleOptionsCli& opt) {
  Scenario s = LoadWithOverrides(opt.scenario, opt.params);
  s.Validate();
  Instance instance = BuildInstance(s);
  OracleOptions options;
  options.max_states = opt.max_states;
  std::optional<double> compare;
  if (!opt.compare.empty()) compare = FinalPowerFromCsv(opt.compare);

  OracleResult best =
      ExhaustiveOptimum(instance.network, instance.flows, options);
  const Network& net = instance.network;
  std::cout << "optimum power " << FormatDouble(best.power) << "\n"
            << "assignments   " << best.assignment_space << "\n";
  for (std::size_t f = 0; f < best.paths.size(); ++f) {
    std::cout << "flow " << f << ":";
    for (NodeIndex n : best.paths[f].Nodes(net)) {
      std::cout << " " << net.node(n).name;
    }
    std::cout << "\n";
  }
  if (compare) {
    std::cout << "run power     " << FormatDouble(*compare) << "\n"
              << "gap           "
              << Percent(best.power > 0 ? *compare / best.power - 1.0 : 0.0)
              << "\n";
  }
  return 0;
}

int Topology(const TopologyOptions& opt) {
  Scenario s = LoadWithOverrides(opt.scenario, opt.params);
  s.Validate();
  Instance instance = BuildInstance(s);
  std::string text;
  if (opt.format == "topo") {
    text = WriteTopology(instance.network);
  } else {
    text = ExportDot(instance.network, {});
  }
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    WriteFile(opt.out, text);
  }
  return 0;
}

}  // namespace
}  // namespace antpower

int main(int argc, char** argv) {
  using namespace antpower;
  CLI::App app{"Energy-aware ant routing simulator"};
  app.require_subcommand(1);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario");
  run_cmd->add_option("--scenario", run.scenario, "Preset name or file")
      ->required();
  run_cmd->add_option("--seed", run.seed, "Base seed");
  run_cmd->add_option("--reps", run.reps, "Replications")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--iterations", run.iterations, "Iterations per run")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run.out,
                      std::string("Output directory (default $") +
                          kOutDirVariable + " or ./antpower-out)");
  run_cmd->add_option("--param", run.params, "Scenario override key=value");
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all)");
  run_cmd->add_flag("--quiet", run.quiet, "Skip the summary");

  OracleOptionsCli oracle;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Exact optimum of a small instance");
  oracle_cmd->add_option("--scenario", oracle.scenario, "Preset name or file")
      ->capture_default_str();
  oracle_cmd->add_option("--param", oracle.params,
                         "Scenario override key=value");
  oracle_cmd->add_option("--max-states", oracle.max_states,
                         "Refuse beyond this many assignments")
      ->capture_default_str();
  oracle_cmd->add_option("--compare", oracle.compare,
                         "Iterations CSV whose final power is compared");

  TopologyOptions topo;
  CLI::App* topo_cmd =
      app.add_subcommand("topology", "Export a scenario's network");
  topo_cmd->add_option("--scenario", topo.scenario, "Preset name or file")
      ->required();
  topo_cmd->add_option("--param", topo.params, "Scenario override key=value");
  topo_cmd->add_option("--format", topo.format, "topo or dot")
      ->check(CLI::IsMember({"topo", "dot"}))
      ->capture_default_str();
  topo_cmd->add_option("--out", topo.out, "Output file (default stdout)");

  CLI::App* presets_cmd =
      app.add_subcommand("presets", "List bundled scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return Run(run);
    if (*oracle_cmd) return Oracle(oracle);
    if (*topo_cmd) return Topology(topo);
    if (*presets_cmd) {
      for (const std::string& name : PresetNames()) std::cout << name << "\n";
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
