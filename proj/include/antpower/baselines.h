#ifndef ANTPOWER_BASELINES_H_
#define ANTPOWER_BASELINES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "antpower/network.h"

namespace antpower {

// Minimum-hop path per flow, ties broken by the lexicographically smallest
// node-index sequence. Throws UnroutableFlow naming the first flow without a
// route.
std::vector<Path> SpfRoutes(const Network& net, std::span<const Flow> flows);
Path SpfRoute(const Network& net, const Flow& flow);

struct OracleOptions {
  // Refuse when the product of per-flow simple-path counts exceeds this.
  std::uint64_t max_states = 10'000'000;
  // Refuse when any single flow has more simple paths than this.
  std::uint64_t max_paths_per_flow = 100'000;
};

struct OracleResult {
  std::vector<Path> paths;  // one optimal unsplittable assignment
  double power = 0.0;
  std::uint64_t assignment_space = 0;
};

// Exact minimum network power over every assignment of one simple path per
// flow that respects link capacities. Throws BudgetExceeded rather than
// approximate, and UnroutableFlow when no feasible assignment exists.
OracleResult ExhaustiveOptimum(const Network& net, std::span<const Flow> flows,
                               const OracleOptions& options = {});

// All simple paths origin -> destination in depth-first order over
// Network::out_links. Throws BudgetExceeded past `limit` paths.
std::vector<Path> EnumerateSimplePaths(const Network& net, NodeIndex origin,
                                       NodeIndex destination,
                                       std::uint64_t limit);

// For every node, keeps only the outgoing link that carries the most traffic
// under `spf_paths` (lowest link index on ties) together with its reverse
// direction, since physical links are bidirectional pairs. Nodes whose
// outgoing links carry nothing keep their lowest-index link.
Network PruneToMostUsed(const Network& net, std::span<const Flow> flows,
                        std::span<const Path> spf_paths);

}  // namespace antpower

#endif  // ANTPOWER_BASELINES_H_
