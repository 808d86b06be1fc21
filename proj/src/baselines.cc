#include "antpower/baselines.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "antpower/cost.h"
#include "antpower/errors.h"

namespace antpower {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Hop distance of every node to `destination` over reversed links.
std::vector<std::uint32_t> HopsTo(const Network& net, NodeIndex destination) {
  std::vector<std::vector<NodeIndex>> in(net.num_nodes());
  for (const Link& lk : net.links()) in[lk.to].push_back(lk.from);
  std::vector<std::uint32_t> dist(net.num_nodes(), kUnreached);
  std::deque<NodeIndex> queue{destination};
  dist[destination] = 0;
  while (!queue.empty()) {
    NodeIndex v = queue.front();
    queue.pop_front();
    for (NodeIndex u : in[v]) {
      if (dist[u] != kUnreached) continue;
      dist[u] = dist[v] + 1;
      queue.push_back(u);
    }
  }
  return dist;
}

bool ProfilesMonotoneEverywhere(const Network& net) {
  for (const Link& lk : net.links()) {
    if (lk.has_finite_capacity()) continue;
    if (lk.profile.log_coefficient() < 0.0) return false;
    for (double a : lk.profile.polynomial()) {
      if (a < 0.0) return false;
    }
  }
  return true;
}

class AssignmentSearch {
 public:
  AssignmentSearch(const Network& net, std::span<const Flow> flows,
                   const std::vector<std::vector<Path>>& candidates)
      : net_(net),
        flows_(flows),
        candidates_(candidates),
        prune_by_bound_(ProfilesMonotoneEverywhere(net)),
        loads_(net.num_links(), 0.0),
        link_cost_(net.num_links(), 0.0),
        choice_(flows.size(), 0) {
    for (LinkIndex l = 0; l < net.num_links(); ++l) {
      link_cost_[l] = net.LinkCost(l, 0.0);
      power_ += link_cost_[l];
    }
  }

  bool Run() {
    Search(0);
    return found_;
  }
  const std::vector<std::size_t>& best() const { return best_choice_; }

 private:
  void Search(std::size_t k) {
    if (k == flows_.size()) {
      if (!found_ || power_ < best_power_) {
        found_ = true;
        best_power_ = power_;
        best_choice_ = choice_;
      }
      return;
    }
    const double rate = flows_[k].rate;
    for (std::size_t c = 0; c < candidates_[k].size(); ++c) {
      const Path& p = candidates_[k][c];
      const double saved_power = power_;
      bool feasible = true;
      for (LinkIndex l : p.links) {
        loads_[l] += rate;
        double cost = net_.LinkCost(l, loads_[l]);
        if (!std::isfinite(cost)) feasible = false;
        power_ += cost - link_cost_[l];
        link_cost_[l] = cost;
      }
      bool bounded = prune_by_bound_ && found_ && power_ >= best_power_;
      if (feasible && !bounded) {
        choice_[k] = c;
        Search(k + 1);
      }
      for (LinkIndex l : p.links) {
        loads_[l] -= rate;
        if (loads_[l] < 0.0) loads_[l] = 0.0;
        link_cost_[l] = net_.LinkCost(l, loads_[l]);
      }
      power_ = saved_power;
    }
  }

  const Network& net_;
  std::span<const Flow> flows_;
  const std::vector<std::vector<Path>>& candidates_;
  bool prune_by_bound_;
  std::vector<double> loads_;
  std::vector<double> link_cost_;
  double power_ = 0.0;
  std::vector<std::size_t> choice_;
  bool found_ = false;
  double best_power_ = 0.0;
  std::vector<std::size_t> best_choice_;
};

}  // namespace

Path SpfRoute(const Network& net, const Flow& flow) {
  ValidateFlow(net, flow);
  auto dist = HopsTo(net, flow.destination);
  if (dist[flow.origin] == kUnreached) {
    throw UnroutableFlow("flow " + std::to_string(flow.id) + " (" +
                         net.node(flow.origin).name + " -> " +
                         net.node(flow.destination).name + ") is unroutable");
  }
  Path path;
  NodeIndex at = flow.origin;
  while (at != flow.destination) {
    // out_links is ordered by target index, so the first link that makes
    // progress yields the lexicographically smallest node sequence.
    for (LinkIndex l : net.out_links(at)) {
      NodeIndex next = net.link(l).to;
      if (dist[next] + 1 == dist[at]) {
        path.links.push_back(l);
        at = next;
        break;
      }
    }
  }
  return path;
}

std::vector<Path> SpfRoutes(const Network& net, std::span<const Flow> flows) {
  std::vector<Path> out;
  out.reserve(flows.size());
  for (const Flow& f : flows) out.push_back(SpfRoute(net, f));
  return out;
}

std::vector<Path> EnumerateSimplePaths(const Network& net, NodeIndex origin,
                                       NodeIndex destination,
                                       std::uint64_t limit) {
  std::vector<Path> out;
  std::vector<bool> on_stack(net.num_nodes(), false);
  Path current;
  auto dfs = [&](auto&& self, NodeIndex at) -> void {
    if (at == destination) {
      if (out.size() >= limit) {
        throw BudgetExceeded("more than " + std::to_string(limit) +
                             " simple paths between " + net.node(origin).name +
                             " and " + net.node(destination).name);
      }
      out.push_back(current);
      return;
    }
    for (LinkIndex l : net.out_links(at)) {
      NodeIndex next = net.link(l).to;
      if (on_stack[next]) continue;
      on_stack[next] = true;
      current.links.push_back(l);
      self(self, next);
      current.links.pop_back();
      on_stack[next] = false;
    }
  };
  on_stack[origin] = true;
  dfs(dfs, origin);
  return out;
}

OracleResult ExhaustiveOptimum(const Network& net, std::span<const Flow> flows,
                               const OracleOptions& options) {
  std::vector<std::vector<Path>> candidates;
  candidates.reserve(flows.size());
  std::uint64_t space = 1;
  for (const Flow& f : flows) {
    ValidateFlow(net, f);
    candidates.push_back(EnumerateSimplePaths(net, f.origin, f.destination,
                                              options.max_paths_per_flow));
    const std::uint64_t count = candidates.back().size();
    if (count == 0) {
      throw UnroutableFlow("flow " + std::to_string(f.id) + " is unroutable");
    }
    if (space > options.max_states / count) {
      throw BudgetExceeded(
          "assignment space exceeds the oracle budget of " +
          std::to_string(options.max_states) + " states");
    }
    space *= count;
  }

  OracleResult result;
  result.assignment_space = space;
  AssignmentSearch search(net, flows, candidates);
  if (!search.Run()) {
    throw UnroutableFlow("no capacity-feasible assignment exists");
  }
  for (std::size_t k = 0; k < flows.size(); ++k) {
    result.paths.push_back(candidates[k][search.best()[k]]);
  }
  result.power =
      NetworkPower(net, LoadVector::FromPaths(net, flows, result.paths));
  return result;
}

Network PruneToMostUsed(const Network& net, std::span<const Flow> flows,
                        std::span<const Path> spf_paths) {
  LoadVector loads = LoadVector::FromPaths(net, flows, spf_paths);
  std::vector<bool> keep(net.num_links(), false);
  for (NodeIndex n = 0; n < net.num_nodes(); ++n) {
    auto out = net.out_links(n);
    if (out.empty()) continue;
    LinkIndex best = *std::min_element(out.begin(), out.end());
    for (LinkIndex l : out) {
      if (loads[l] > loads[best] || (loads[l] == loads[best] && l < best)) {
        best = l;
      }
    }
    keep[best] = true;
    const Link& lk = net.link(best);
    if (auto reverse = net.FindLink(lk.to, lk.from)) keep[*reverse] = true;
  }
  Network pruned(net.reference_capacity());
  for (const Node& n : net.nodes()) pruned.AddNode(n.name, n.edge);
  for (LinkIndex l = 0; l < net.num_links(); ++l) {
    if (!keep[l]) continue;
    const Link& lk = net.link(l);
    pruned.AddLink(lk.from, lk.to, lk.capacity, lk.profile);
  }
  return pruned;
}

}  // namespace antpower
