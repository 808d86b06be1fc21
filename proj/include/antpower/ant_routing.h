#ifndef ANTPOWER_ANT_ROUTING_H_
#define ANTPOWER_ANT_ROUTING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "antpower/cost.h"
#include "antpower/network.h"

namespace antpower {

using Rng = std::mt19937_64;

// Uniform draw in [0, 1) from the top 53 bits; identical on every platform.
double UniformUnit(Rng& rng);
// Uniform index in [0, n).
std::size_t UniformIndex(Rng& rng, std::size_t n);

struct AntParameters {
  double exploration = 0.1;  // probability of a uniformly random next hop
  double alpha = 2.0;        // attenuation of the running mean, > 1
  double eta = 0.1;          // smoothing of the cost statistics
  double epsilon = 0.25;     // reliability threshold on sigma / mean
  double a = 10.0;           // correction steepness, reliable mean
  double b = 9.0;            // penalty steepness, unreliable mean
  double h = 0.04;           // power-law compression exponent
  int max_hops = 0;          // forward agent step budget; 0 = 4 * |N|
  // When set, a candidate path is adopted only if moving the flow onto it
  // lowers the power attributable to the flow.
  bool require_improvement = true;

  // Throws ContractViolation for out-of-range values.
  void Validate() const;
};

// Exponential moving mean and deviation of raw goodness samples.
class CostStats {
 public:
  void Add(double sample, double eta);

  double mean() const { return mean_; }
  double deviation() const;
  std::uint64_t count() const { return count_; }

 private:
  double mean_ = 0.0;
  double variance_ = 0.0;
  std::uint64_t count_ = 0;
};

// Maps a raw goodness sample to the reinforcement coefficient r'_a in [0, 1];
// smaller values reinforce harder. `stats` must already include `raw`.
double Recalibrate(double raw, const CostStats& stats,
                   const AntParameters& params);

// Per-flow next-hop preferences at one node, one slot per outgoing link (in
// Network::out_links order). Always sums to one.
class GoodnessVector {
 public:
  explicit GoodnessVector(std::size_t neighbors);
  // Takes explicit weights; throws ContractViolation unless they are in
  // [0, 1] and sum to one within 1e-9.
  explicit GoodnessVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t slot) const { return values_[slot]; }
  std::span<const double> values() const { return values_; }
  double Sum() const;

  // Moves weight toward `slot` by (1 - r). Throws ContractViolation when
  // `slot` is not a neighbor.
  void Reinforce(std::size_t slot, double r);
  // Highest weight; lowest slot on ties.
  std::size_t Best() const;
  // Slot drawn in proportion to the weights, for u in [0, 1).
  std::size_t Sample(double u) const;

 private:
  std::vector<double> values_;
};

// Exploratory walk from a flow's origin toward its destination.
struct ForwardAgent {
  FlowIndex flow = 0;
  std::vector<NodeIndex> visited;  // starts with the origin
  std::vector<LinkIndex> links;    // links[k] leaves visited[k]
  std::vector<double> hop_costs;   // marginal cost of links[k]
  std::size_t steps = 0;           // moves taken, loops included
};

// Forgets everything after the first visit of `revisited`. No-op when the
// node was never visited.
void RemoveCycle(ForwardAgent& agent, NodeIndex revisited);

// Next outgoing slot at a node with `out_degree` links: uniform with
// probability `exploration`, otherwise drawn from `goodness` (uniform if
// null). Throws ContractViolation for a dead end.
std::size_t ChooseNextSlot(const GoodnessVector* goodness,
                           std::size_t out_degree, double exploration,
                           Rng& rng);

// Sum of hop_costs[position..], accumulated from the back.
double DirectCost(std::span<const double> hop_costs, std::size_t position);

// Sum of leave penalties along the current path.
double IndirectCostInit(std::span<const double> gamma);

// Indirect cost after stepping back over `hop`: reduced by the hop's leave
// penalty when the hop is on `current_path` (gamma is aligned with its links).
// Throws ConsistencyError if the result drops below -1e-9; smaller residue is
// clamped to zero.
double IndirectCostStep(double at_downstream, LinkIndex hop,
                        const Path& current_path,
                        std::span<const double> gamma);

// Record returned to the origin by the backward walk.
struct BackwardAgent {
  FlowIndex flow = 0;
  std::vector<NodeIndex> route;  // forward route, origin first
  std::vector<LinkIndex> links;
  double indirect_cost = 0.0;    // value on arrival at the origin
  // (node, preferred next node) for every node of the route but the last,
  // in reverse visiting order.
  std::vector<std::pair<NodeIndex, NodeIndex>> best_next_hops;
  // (position in current path, leave penalty) for path links traversed.
  std::vector<std::pair<std::size_t, double>> fresh_gamma;
};

// Follows preferred next hops from the origin. Empty when the chain breaks,
// loops, or does not reach the destination.
std::optional<Path> ChainNextHops(
    const Network& net, const Flow& flow,
    std::span<const std::pair<NodeIndex, NodeIndex>> best_next_hops);

enum class AgentOutcome { kAdopted, kUnchanged, kRejected, kAborted };

struct IterationCounts {
  int adoptions = 0;
  int unchanged = 0;
  int rejections = 0;
  int aborted = 0;
};

struct NodeFootprint {
  std::size_t goodness_entries = 0;
  std::size_t stats_entries = 0;
  std::size_t load_entries = 0;    // one traffic estimate per outgoing link
  std::size_t source_entries = 0;  // path links + gamma + rate per own flow
};

// Stored entries per node and per agent.
struct StateFootprint {
  std::vector<NodeFootprint> nodes;
  std::size_t total_goodness_entries = 0;
};

// Entries a forward agent carries: visited nodes, hop costs, the flow rate,
// and the current path with its leave penalties.
std::size_t AgentFootprint(const ForwardAgent& agent, const Path& current_path);

// One simulation's routing state: per-node per-flow goodness and statistics,
// per-flow source state, and the authoritative link loads. Not thread-safe;
// separate engines share nothing. `net` must outlive the engine.
class AntEngine {
 public:
  AntEngine(const Network& net, std::vector<Flow> flows, AntParameters params,
            std::uint64_t seed);

  // Installs `initial` as the flow's path and starts emitting agents for it.
  // Throws ContractViolation if the path is invalid for the flow.
  void Activate(FlowIndex f, Path initial);

  // One agent per active flow, in an order shuffled from the engine's stream.
  IterationCounts RunIteration();
  AgentOutcome RunAgent(FlowIndex f);

  // The three phases RunAgent chains together. The sweep also installs the
  // best next hop of every visited node in that node's routing table; on
  // goodness ties the installed hop stays, then the hop the agent took wins.
  // Adopt chains the routing table from the origin.
  std::optional<ForwardAgent> LaunchForwardAgent(FlowIndex f);
  BackwardAgent BackwardSweep(const ForwardAgent& agent);
  AgentOutcome Adopt(const BackwardAgent& agent);

  const Network& network() const { return net_; }
  const std::vector<Flow>& flows() const { return flows_; }
  const AntParameters& params() const { return params_; }
  const LoadVector& loads() const { return loads_; }
  double Power() const { return NetworkPower(net_, loads_); }
  bool active(FlowIndex f) const { return sources_.at(f).active; }
  const Path& path(FlowIndex f) const { return sources_.at(f).path; }
  std::span<const double> gamma(FlowIndex f) const {
    return sources_.at(f).gamma;
  }
  // Null until a backward agent has visited `node` for `f`.
  const GoodnessVector* goodness(NodeIndex node, FlowIndex f) const;
  const CostStats* stats(NodeIndex node, FlowIndex f) const;

  StateFootprint Footprint() const;
  Rng& rng() { return rng_; }

 private:
  struct FlowEntry {
    std::optional<GoodnessVector> goodness;
    CostStats stats;
    std::optional<NodeIndex> next_hop;  // routing table entry for the flow
  };
  struct SourceState {
    bool active = false;
    Path path;
    std::vector<double> gamma;  // aligned with path.links
  };

  FlowEntry& Entry(NodeIndex node, FlowIndex f);
  void RefreshGamma(FlowIndex f);
  // Power change of moving flow f from its current path onto candidate.
  double MoveDelta(FlowIndex f, const Path& candidate) const;
  std::size_t SlotOf(NodeIndex node, LinkIndex link) const;

  const Network& net_;
  std::vector<Flow> flows_;
  AntParameters params_;
  Rng rng_;
  LoadVector loads_;
  std::vector<SourceState> sources_;
  std::vector<std::vector<FlowEntry>> node_state_;  // [node][flow]
  std::vector<FlowIndex> order_;
  std::size_t max_steps_;
};

}  // namespace antpower

#endif  // ANTPOWER_ANT_ROUTING_H_
