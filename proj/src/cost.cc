#include "antpower/cost.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "antpower/errors.h"

namespace antpower {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Loads an ulp or so below zero are float residue of add/remove cycles.
double ClampResidue(double load) { return load < 0.0 ? 0.0 : load; }

}  // namespace

void LoadVector::Add(const Path& path, double rate) {
  for (LinkIndex l : path.links) load_[l] += rate;
}

void LoadVector::Remove(const Path& path, double rate) {
  for (LinkIndex l : path.links) load_[l] = ClampResidue(load_[l] - rate);
}

LoadVector LoadVector::FromPaths(const Network& net,
                                 std::span<const Flow> flows,
                                 std::span<const Path> paths) {
  if (flows.size() != paths.size()) {
    throw ContractViolation("flow and path counts differ");
  }
  LoadVector loads(net.num_links());
  for (std::size_t k = 0; k < flows.size(); ++k) {
    loads.Add(paths[k], flows[k].rate);
  }
  return loads;
}

double MarginalCost(const Network& net, LinkIndex l, const LoadVector& loads,
                    double flow_rate, bool in_current_path) {
  const double load = loads[l];
  if (in_current_path) {
    double current = net.LinkCost(l, load);
    if (current == kInfinity) return kInfinity;
    return current - net.LinkCost(l, ClampResidue(load - flow_rate));
  }
  double after = net.LinkCost(l, load + flow_rate);
  if (after == kInfinity) return kInfinity;
  return after - net.LinkCost(l, load);
}

double LeavePenalty(const Network& net, LinkIndex l, const LoadVector& loads,
                    double flow_rate, const Path& current_path) {
  if (!current_path.Contains(l)) {
    throw ContractViolation("leave penalty requested for a link the flow "
                            "does not traverse");
  }
  const double load = loads[l];
  double remaining = net.LinkCost(l, ClampResidue(load - flow_rate));
  double alone = net.LinkCost(l, flow_rate);
  double total = net.LinkCost(l, load);
  if (total == kInfinity || alone == kInfinity) return 0.0;
  return std::max(0.0, remaining + alone - total);
}

double NetworkPower(const Network& net, const LoadVector& loads) {
  double power = 0.0;
  for (LinkIndex l = 0; l < net.num_links(); ++l) {
    double c = net.LinkCost(l, loads[l]);
    if (c == kInfinity) return kInfinity;
    power += c;
  }
  return power;
}

}  // namespace antpower
