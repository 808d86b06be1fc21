#include "antpower/simulation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "antpower/baselines.h"
#include "antpower/errors.h"
#include "antpower/topology_io.h"

namespace antpower {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<NodeIndex> ResolveNodes(const Network& net,
                                    const std::vector<std::string>& names) {
  std::vector<NodeIndex> out;
  for (const auto& name : names) {
    auto n = net.FindNode(name);
    if (!n) throw TopologyError("unknown node '" + name + "' in node group");
    out.push_back(*n);
  }
  return out;
}

void Renumber(std::vector<Flow>& flows) {
  for (std::size_t k = 0; k < flows.size(); ++k) {
    flows[k].id = static_cast<FlowIndex>(k);
  }
}

double AveragePathLength(std::span<const Path> paths,
                         const std::vector<bool>& active) {
  double total = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (!active[k]) continue;
    total += static_cast<double>(paths[k].hops());
    ++count;
  }
  return count == 0 ? 0.0 : total / count;
}

RunMetrics RunPruned(const Instance& instance, std::uint64_t seed) {
  const Network& net = instance.network;
  auto spf = SpfRoutes(net, instance.flows);
  Network pruned = PruneToMostUsed(net, instance.flows, spf);
  auto rerouted = SpfRoutes(pruned, instance.flows);
  std::vector<bool> all(instance.flows.size(), true);

  IterationMetrics row;
  row.iteration = 1;
  row.power = NetworkPower(
      pruned, LoadVector::FromPaths(pruned, instance.flows, rerouted));
  row.spf_power =
      NetworkPower(net, LoadVector::FromPaths(net, instance.flows, spf));
  row.savings = Savings(row.power, row.spf_power);
  row.avg_path_length = AveragePathLength(rerouted, all);
  row.spf_avg_path_length = AveragePathLength(spf, all);
  row.active_flows = static_cast<int>(instance.flows.size());

  RunMetrics m;
  m.seed = seed;
  m.iterations.push_back(row);
  m.final_paths = std::move(rerouted);
  return m;
}

}  // namespace

void Scenario::Validate() const {
  auto fail = [this](const std::string& what) {
    throw ContractViolation("scenario '" + name + "': " + what);
  };
  if (iterations < 1) fail("iterations must be at least 1");
  if (replications < 1) fail("replications must be at least 1");
  if (traffic_steps < 1) fail("traffic_steps must be at least 1");
  if (step_interval < 0) fail("step_interval must be non-negative");
  if (topology == "lattice" && lattice_size < 2) fail("lattice size below 2");
  if ((topology == "file" || topology == "sndlib") && topology_path.empty()) {
    fail("topology path missing");
  }
  if (traffic == "file" && traffic_path.empty()) fail("traffic path missing");
  if (capacity && !(*capacity > 0.0)) fail("capacity must be positive");
  if (!(reference_capacity > 0.0)) fail("reference capacity must be positive");
  params.Validate();
}

CostProfile ScenarioProfile(const Scenario& s) {
  if (s.profile == "custom") {
    if (s.profile_coefficients.empty()) {
      throw ContractViolation("custom profile without coefficients");
    }
    std::vector<double> poly(s.profile_coefficients.begin() + 1,
                             s.profile_coefficients.end());
    return CostProfile(s.profile_coefficients[0], std::move(poly), s.log_base);
  }
  return CostProfile::FromName(s.profile, s.log_base);
}

Instance BuildFig1Instance(const CostProfile& profile) {
  Instance inst;
  Network& net = inst.network;
  NodeIndex a = net.AddNode("a", true);
  NodeIndex b = net.AddNode("b", true);
  NodeIndex c = net.AddNode("c");
  NodeIndex e = net.AddNode("e");
  NodeIndex sink = net.AddNode("sink", true);
  constexpr double kCapacity = 3.0;
  net.AddBidirectionalLink(a, b, kCapacity, profile);
  net.AddBidirectionalLink(a, c, kCapacity, profile);
  net.AddBidirectionalLink(b, c, kCapacity, profile);
  net.AddBidirectionalLink(b, e, kCapacity, profile);
  net.AddBidirectionalLink(c, sink, kCapacity, profile);
  net.AddBidirectionalLink(e, sink, kCapacity, profile);
  for (NodeIndex origin : {a, a, b}) {
    Flow f;
    f.id = static_cast<FlowIndex>(inst.flows.size());
    f.origin = origin;
    f.destination = sink;
    inst.flows.push_back(f);
  }
  return inst;
}

Instance BuildInstance(const Scenario& s) {
  s.Validate();
  const bool keep_profiles = s.profile == "as-is";
  const CostProfile profile =
      keep_profiles ? CostProfile::Logarithmic(s.log_base) : ScenarioProfile(s);
  const double capacity = s.capacity.value_or(kUnlimitedCapacity);

  Instance inst;
  std::string natural;
  if (s.topology == "lattice") {
    inst.network = BuildLattice(s.lattice_size, profile, capacity);
    inst.flows = LatticeFlows(s.lattice_size);
    natural = "all-pairs";
  } else if (s.topology == "nsfnet") {
    inst.network = BuildNsfnet(profile, capacity);
    natural = "fullmesh";
  } else if (s.topology == "fig1") {
    inst = BuildFig1Instance(profile);
    if (s.capacity) {
      inst.network = WithUniformLinks(inst.network, profile, s.capacity);
    }
    natural = "fig1";
  } else if (s.topology == "nobel-eu" || s.topology == "sndlib") {
    std::string text = s.topology == "sndlib"
                           ? ReadFile(s.topology_path)
                           : std::string(BundledNobelEu());
    auto imported = ImportSndlib(text, profile);
    inst.network = std::move(imported.network);
    inst.flows = std::move(imported.flows);
    if (s.capacity) {
      inst.network = WithUniformLinks(inst.network, profile, s.capacity);
    }
    natural = "demands";
  } else if (s.topology == "file") {
    inst.network = ParseTopology(ReadFile(s.topology_path), s.log_base);
    if (!keep_profiles) {
      inst.network = WithUniformLinks(inst.network, profile, s.capacity);
    } else if (s.capacity) {
      throw ContractViolation("capacity override needs an explicit profile");
    }
    natural = "file";
  } else {
    throw ContractViolation("unknown topology '" + s.topology + "'");
  }
  inst.network.set_reference_capacity(s.reference_capacity);

  const std::string traffic = s.traffic == "default" ? natural : s.traffic;
  if (traffic == "all-pairs" || traffic == "fig1" || traffic == "demands") {
    if (traffic != natural) {
      throw ContractViolation("traffic '" + traffic +
                              "' does not apply to topology '" + s.topology +
                              "'");
    }
  } else if (traffic == "fullmesh") {
    auto edges = inst.network.EdgeNodes();
    inst.flows = FullMeshFlows(edges);
  } else if (traffic == "coast2coast") {
    auto west = ResolveNodes(inst.network, s.west);
    auto east = ResolveNodes(inst.network, s.east);
    inst.flows = CrossFlows(west, east);
  } else if (traffic == "intracoast") {
    auto west = ResolveNodes(inst.network, s.west);
    auto east = ResolveNodes(inst.network, s.east);
    inst.flows = FullMeshFlows(west);
    auto more = FullMeshFlows(east);
    inst.flows.insert(inst.flows.end(), more.begin(), more.end());
    Renumber(inst.flows);
  } else if (traffic == "file") {
    if (s.traffic_path.empty()) {
      throw ContractViolation("traffic file path missing");
    }
    inst.flows = ParseTraffic(ReadFile(s.traffic_path), inst.network);
  } else {
    throw ContractViolation("unknown traffic '" + traffic + "'");
  }

  if (s.traffic_steps > 1) {
    for (Flow& f : inst.flows) {
      f.active_from =
          static_cast<int>(f.id % static_cast<FlowIndex>(s.traffic_steps)) *
          s.step_interval;
    }
  }
  for (const Flow& f : inst.flows) ValidateFlow(inst.network, f);
  return inst;
}

double Savings(double power, double spf_power) {
  if (!std::isfinite(power) || !std::isfinite(spf_power) || spf_power <= 0.0) {
    return 0.0;
  }
  return 1.0 - power / spf_power;
}

RunMetrics RunScenario(const Scenario& s, std::uint64_t seed) {
  return RunScenario(s, BuildInstance(s), seed);
}

RunMetrics RunScenario(const Scenario& s, const Instance& instance,
                       std::uint64_t seed) {
  s.Validate();
  if (s.mode == RunMode::kPrunedSpf) return RunPruned(instance, seed);

  const Network& net = instance.network;
  const auto& flows = instance.flows;
  const std::vector<Path> spf = SpfRoutes(net, flows);

  AntEngine engine(net, flows, s.params, seed);
  LoadVector spf_loads(net.num_links());
  std::vector<bool> active(flows.size(), false);
  std::vector<FlowIndex> pending(flows.size());
  for (FlowIndex f = 0; f < flows.size(); ++f) pending[f] = f;
  std::stable_sort(pending.begin(), pending.end(),
                   [&flows](FlowIndex x, FlowIndex y) {
                     return flows[x].active_from < flows[y].active_from;
                   });
  std::size_t next_pending = 0;
  std::vector<Path> current(flows.size());

  RunMetrics m;
  m.seed = seed;
  m.iterations.reserve(static_cast<std::size_t>(s.iterations));
  for (int it = 0; it < s.iterations; ++it) {
    while (next_pending < pending.size() &&
           flows[pending[next_pending]].active_from <= it) {
      FlowIndex f = pending[next_pending++];
      engine.Activate(f, spf[f]);
      spf_loads.Add(spf[f], flows[f].rate);
      active[f] = true;
    }
    IterationCounts counts = engine.RunIteration();

    IterationMetrics row;
    row.iteration = it + 1;
    row.power = engine.Power();
    row.spf_power = NetworkPower(net, spf_loads);
    row.savings = Savings(row.power, row.spf_power);
    for (FlowIndex f = 0; f < flows.size(); ++f) {
      if (active[f]) current[f] = engine.path(f);
    }
    row.avg_path_length = AveragePathLength(current, active);
    row.spf_avg_path_length = AveragePathLength(spf, active);
    row.active_flows = static_cast<int>(next_pending);
    row.adoptions = counts.adoptions;
    row.rejections = counts.rejections;
    row.aborted = counts.aborted;
    m.iterations.push_back(row);
  }
  m.final_paths = std::move(current);
  return m;
}

double FinalMean(const RunMetrics& m, double IterationMetrics::*field) {
  if (m.iterations.empty()) return 0.0;
  std::size_t n = m.iterations.size();
  std::size_t tail = std::max<std::size_t>(1, n / 10);
  double sum = 0.0;
  for (std::size_t k = n - tail; k < n; ++k) sum += m.iterations[k].*field;
  return sum / static_cast<double>(tail);
}

std::optional<int> ConvergenceIterations(const RunMetrics& m,
                                         double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ContractViolation("convergence threshold must lie in (0, 1)");
  }
  double final_savings = FinalMean(m, &IterationMetrics::savings);
  if (!(final_savings > 0.0)) return std::nullopt;
  double target = threshold * final_savings;
  for (const auto& row : m.iterations) {
    if (row.savings >= target) return row.iteration;
  }
  return std::nullopt;
}

Estimate Summarize(std::span<const double> values) {
  Estimate e;
  e.samples = static_cast<int>(values.size());
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    e.half_width = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
  }
  return e;
}

RunSummary Summarize(const RunMetrics& m) {
  RunSummary r;
  r.seed = m.seed;
  r.final_power = FinalMean(m, &IterationMetrics::power);
  r.final_spf_power = FinalMean(m, &IterationMetrics::spf_power);
  r.final_savings = FinalMean(m, &IterationMetrics::savings);
  r.final_path_length = FinalMean(m, &IterationMetrics::avg_path_length);
  r.spf_path_length = FinalMean(m, &IterationMetrics::spf_avg_path_length);
  r.iterations_to_90 = ConvergenceIterations(m, 0.9);
  r.iterations_to_99 = ConvergenceIterations(m, 0.99);
  return r;
}

AggregateMetrics Aggregate(const std::string& name,
                           std::span<const RunSummary> runs,
                           std::span<const RunMetrics> metrics) {
  AggregateMetrics agg;
  agg.scenario = name;
  agg.runs.assign(runs.begin(), runs.end());
  // Sorting makes the reduction independent of completion order.
  std::sort(agg.runs.begin(), agg.runs.end(),
            [](const RunSummary& x, const RunSummary& y) {
              return x.seed < y.seed;
            });
  auto collect = [&agg](auto getter) {
    std::vector<double> out;
    for (const auto& r : agg.runs) {
      if (auto v = getter(r)) out.push_back(*v);
    }
    return out;
  };
  auto wrap = [](double v) { return std::optional<double>(v); };
  agg.savings = Summarize(collect([&](const RunSummary& r) {
    return wrap(r.final_savings);
  }));
  agg.power = Summarize(collect([&](const RunSummary& r) {
    return wrap(r.final_power);
  }));
  agg.spf_power = Summarize(collect([&](const RunSummary& r) {
    return wrap(r.final_spf_power);
  }));
  agg.path_length = Summarize(collect([&](const RunSummary& r) {
    return wrap(r.final_path_length);
  }));
  agg.spf_path_length = Summarize(collect([&](const RunSummary& r) {
    return wrap(r.spf_path_length);
  }));
  agg.path_length_increment = Summarize(collect([&](const RunSummary& r) {
    return r.spf_path_length > 0.0
               ? wrap(r.final_path_length / r.spf_path_length - 1.0)
               : std::nullopt;
  }));
  agg.iterations_to_90 = Summarize(collect([](const RunSummary& r) {
    return r.iterations_to_90 ? std::optional<double>(*r.iterations_to_90)
                              : std::nullopt;
  }));
  agg.iterations_to_99 = Summarize(collect([](const RunSummary& r) {
    return r.iterations_to_99 ? std::optional<double>(*r.iterations_to_99)
                              : std::nullopt;
  }));

  std::vector<const RunMetrics*> ordered;
  for (const auto& m : metrics) ordered.push_back(&m);
  std::sort(ordered.begin(), ordered.end(),
            [](const RunMetrics* x, const RunMetrics* y) {
              return x->seed < y->seed;
            });
  if (!ordered.empty()) {
    std::size_t n = ordered.front()->iterations.size();
    agg.mean_power.assign(n, 0.0);
    agg.mean_savings.assign(n, 0.0);
    for (const RunMetrics* m : ordered) {
      for (std::size_t k = 0; k < n && k < m->iterations.size(); ++k) {
        agg.mean_power[k] += m->iterations[k].power;
        agg.mean_savings[k] += m->iterations[k].savings;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      agg.mean_power[k] /= static_cast<double>(ordered.size());
      agg.mean_savings[k] /= static_cast<double>(ordered.size());
    }
  }
  return agg;
}

ReplicationResult Replicate(const Scenario& s, unsigned threads) {
  s.Validate();
  const Instance instance = BuildInstance(s);
  const std::size_t reps = static_cast<std::size_t>(s.replications);
  ReplicationResult result;
  result.runs.resize(reps);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= reps) return;
      try {
        result.runs[k] = RunScenario(s, instance, s.seed + k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(reps);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RunSummary> summaries;
  for (const auto& m : result.runs) summaries.push_back(Summarize(m));
  result.aggregate = Aggregate(s.name, summaries, result.runs);
  return result;
}

std::map<int, int> LinkOccupationHistogram(const Network& net,
                                           std::span<const Path> paths) {
  std::vector<int> count(net.num_links(), 0);
  for (const Path& p : paths) {
    for (LinkIndex l : p.links) ++count[l];
  }
  std::map<int, int> histogram;
  for (int c : count) ++histogram[c];
  return histogram;
}

}  // namespace antpower
