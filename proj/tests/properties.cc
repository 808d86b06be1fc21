#include "properties.h"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "antpower/ant_routing.h"
#include "antpower/baselines.h"
#include "antpower/cost.h"
#include "antpower/errors.h"
#include "antpower/export.h"
#include "antpower/scenario.h"

namespace antpower::testing {

Instance RandomSmallInstance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  };
  const std::size_t n = 3 + pick(4);
  const CostProfile profiles[] = {CostProfile::Logarithmic(),
                                  CostProfile::Linear(), CostProfile::Cubic()};
  const CostProfile& profile = profiles[pick(3)];
  const std::size_t num_flows = 1 + pick(3);
  // Finite capacities stay large enough for every flow to share one link.
  const double capacity =
      pick(2) == 0 ? kUnlimitedCapacity : static_cast<double>(num_flows) + 1.0;

  Instance inst;
  for (std::size_t k = 0; k < n; ++k) {
    inst.network.AddNode("n" + std::to_string(k), true);
  }
  auto add = [&](NodeIndex a, NodeIndex b) {
    if (a == b || inst.network.FindLink(a, b)) return;
    inst.network.AddBidirectionalLink(a, b, capacity, profile);
  };
  for (std::size_t k = 0; k < n; ++k) {
    add(static_cast<NodeIndex>(k), static_cast<NodeIndex>((k + 1) % n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    add(static_cast<NodeIndex>(pick(n)), static_cast<NodeIndex>(pick(n)));
  }
  for (std::size_t f = 0; f < num_flows; ++f) {
    Flow flow;
    flow.id = static_cast<FlowIndex>(f);
    flow.origin = static_cast<NodeIndex>(pick(n));
    do {
      flow.destination = static_cast<NodeIndex>(pick(n));
    } while (flow.destination == flow.origin);
    inst.flows.push_back(flow);
  }
  return inst;
}

namespace {

std::string Where(std::uint64_t seed, int step) {
  std::ostringstream out;
  out << "seed " << seed << " step " << step << ": ";
  return out.str();
}

bool Feasible(const Network& net, const LoadVector& loads) {
  for (LinkIndex l = 0; l < net.num_links(); ++l) {
    const Link& link = net.link(l);
    if (link.has_finite_capacity() && loads[l] > link.capacity * (1 + 1e-12)) {
      return false;
    }
  }
  return true;
}

}  // namespace

PropertyResult CheckEngineInvariants(int instances, int iterations) {
  PropertyResult result;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    Instance inst = RandomSmallInstance(seed);
    const Network& net = inst.network;
    AntEngine engine(net, inst.flows, AntParameters{}, seed);
    auto spf = SpfRoutes(net, inst.flows);
    for (FlowIndex f = 0; f < inst.flows.size(); ++f) engine.Activate(f, spf[f]);
    ++result.cases;
    for (int it = 0; it < iterations && result.ok; ++it) {
      for (FlowIndex f = 0; f < inst.flows.size() && result.ok; ++f) {
        engine.RunAgent(f);
        for (NodeIndex n = 0; n < net.num_nodes(); ++n) {
          for (FlowIndex g = 0; g < inst.flows.size(); ++g) {
            const GoodnessVector* gv = engine.goodness(n, g);
            if (!gv) continue;
            if (std::abs(gv->Sum() - 1.0) > 1e-9) {
              result.Fail(Where(seed, it) + "goodness sum drifted");
            }
            for (double x : gv->values()) {
              if (!(x >= 0.0 && x <= 1.0)) {
                result.Fail(Where(seed, it) + "goodness outside [0, 1]");
              }
            }
          }
        }
        std::vector<Path> paths;
        for (FlowIndex g = 0; g < inst.flows.size(); ++g) {
          if (!PathIsValid(net, inst.flows[g], engine.path(g))) {
            result.Fail(Where(seed, it) + "invalid adopted path");
          }
          paths.push_back(engine.path(g));
        }
        LoadVector fresh = LoadVector::FromPaths(net, inst.flows, paths);
        for (LinkIndex l = 0; l < net.num_links(); ++l) {
          double a = engine.loads()[l], b = fresh[l];
          if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(b))) {
            result.Fail(Where(seed, it) + "incremental load mismatch");
          }
        }
        if (!Feasible(net, engine.loads())) {
          result.Fail(Where(seed, it) + "capacity exceeded");
        }
      }
    }
  }
  return result;
}

PropertyResult CheckRecalibrateRange(int samples) {
  PropertyResult result;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AntParameters params;
  for (int k = 0; k < samples; ++k) {
    CostStats stats;
    const int n = 1 + static_cast<int>(rng() % 20);
    const double scale = std::pow(10.0, 6.0 * unit(rng) - 3.0);
    for (int j = 0; j < n; ++j) stats.Add(scale * 3.0 * unit(rng), params.eta);
    const double raw = scale * 5.0 * unit(rng);
    const double r = Recalibrate(raw, stats, params);
    ++result.cases;
    if (!(r >= 0.0 && r <= 1.0)) {
      std::ostringstream out;
      out << "raw " << raw << " mean " << stats.mean() << " sigma "
          << stats.deviation() << " -> " << r;
      result.Fail(out.str());
    }
  }
  return result;
}

PropertyResult CheckOracleDominance(int seeds) {
  PropertyResult result;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = static_cast<std::uint64_t>(s) + 1;
    Instance inst = RandomSmallInstance(seed);
    const Network& net = inst.network;
    OracleResult best = ExhaustiveOptimum(net, inst.flows);
    const double tol = 1e-12 * std::max(1.0, std::abs(best.power));
    ++result.cases;

    auto spf = SpfRoutes(net, inst.flows);
    double spf_power =
        NetworkPower(net, LoadVector::FromPaths(net, inst.flows, spf));
    if (best.power > spf_power + tol) {
      result.Fail(Where(seed, 0) + "SPF beats the oracle");
    }

    AntEngine engine(net, inst.flows, AntParameters{}, seed);
    for (FlowIndex f = 0; f < inst.flows.size(); ++f) engine.Activate(f, spf[f]);
    for (int it = 0; it < 200; ++it) engine.RunIteration();
    if (best.power > engine.Power() + tol) {
      result.Fail(Where(seed, 200) + "ant routing beats the oracle");
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<Path>> choices;
    for (const Flow& f : inst.flows) {
      choices.push_back(
          EnumerateSimplePaths(net, f.origin, f.destination, 100000));
    }
    for (int k = 0; k < 50; ++k) {
      std::vector<Path> pick;
      for (const auto& c : choices) pick.push_back(c[rng() % c.size()]);
      double p = NetworkPower(net, LoadVector::FromPaths(net, inst.flows, pick));
      if (best.power > p + tol) {
        result.Fail(Where(seed, k) + "random assignment beats the oracle");
      }
    }
  }
  return result;
}

PropertyResult CheckDeterminism(int iterations) {
  PropertyResult result;
  for (const char* preset :
       {"fig1-cubic", "lattice5-log", "nsfnet-coast2coast-cubic"}) {
    Scenario s = LoadScenario(preset);
    s.iterations = iterations;
    for (std::uint64_t seed : {1u, 7u}) {
      std::string a = IterationsCsv(RunScenario(s, seed));
      std::string b = IterationsCsv(RunScenario(s, seed));
      ++result.cases;
      if (a != b) result.Fail(std::string(preset) + " differs between runs");
    }
    s.replications = 3;
    std::string x = AggregateCsv(Replicate(s, 1).aggregate);
    std::string y = AggregateCsv(Replicate(s, 3).aggregate);
    ++result.cases;
    if (x != y) {
      result.Fail(std::string(preset) + " aggregate depends on threads");
    }
  }
  return result;
}

}  // namespace antpower::testing
