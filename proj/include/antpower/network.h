#ifndef ANTPOWER_NETWORK_H_
#define ANTPOWER_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "antpower/profile.h"

namespace antpower {

using NodeIndex = std::uint32_t;
using LinkIndex = std::uint32_t;
using FlowIndex = std::uint32_t;

inline constexpr double kUnlimitedCapacity =
    std::numeric_limits<double>::infinity();

struct Node {
  std::string name;
  bool edge = false;  // may originate or terminate flows
};

struct Link {
  NodeIndex from;
  NodeIndex to;
  double capacity;  // kUnlimitedCapacity for no limit
  CostProfile profile;

  bool has_finite_capacity() const {
    return capacity != kUnlimitedCapacity;
  }
};

// Directed graph with at most one link per ordered node pair. Node and link
// indices are dense and stable. Links with unlimited capacity are normalized
// against reference_capacity() so that their profiles stay evaluable.
class Network {
 public:
  explicit Network(double reference_capacity = 1.0);

  NodeIndex AddNode(std::string name, bool edge = false);
  // Throws TopologyError on unknown endpoints, self loops, duplicates or a
  // non-positive capacity.
  LinkIndex AddLink(NodeIndex from, NodeIndex to, double capacity,
                    CostProfile profile);
  // Two independent directed links; returns the from->to one.
  LinkIndex AddBidirectionalLink(NodeIndex a, NodeIndex b, double capacity,
                                 const CostProfile& profile);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_links() const { return links_.size(); }

  const Node& node(NodeIndex n) const { return nodes_.at(n); }
  const Link& link(LinkIndex l) const { return links_.at(l); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  // Outgoing links of `n`, ordered by increasing target node index.
  std::span<const LinkIndex> out_links(NodeIndex n) const {
    return out_links_.at(n);
  }

  std::optional<LinkIndex> FindLink(NodeIndex from, NodeIndex to) const;
  std::optional<NodeIndex> FindNode(const std::string& name) const;

  double reference_capacity() const { return reference_capacity_; }
  void set_reference_capacity(double mu);

  // Load normalized by the link capacity, or by reference_capacity() when
  // the capacity is unlimited.
  double NormalizedLoad(LinkIndex l, double load) const;
  // Link power at absolute load `load`; +infinity when over capacity.
  double LinkCost(LinkIndex l, double load) const;

  std::vector<NodeIndex> EdgeNodes() const;

 private:
  double reference_capacity_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<LinkIndex>> out_links_;
  std::map<std::pair<NodeIndex, NodeIndex>, LinkIndex> link_index_;
  std::map<std::string, NodeIndex> node_index_;
};

struct Flow {
  FlowIndex id = 0;
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double rate = 1.0;
  int active_from = 0;  // first iteration in which the flow exists
};

struct Path {
  std::vector<LinkIndex> links;

  std::size_t hops() const { return links.size(); }
  bool empty() const { return links.empty(); }
  bool Contains(LinkIndex l) const;
  // Node sequence origin..destination; empty for an empty path.
  std::vector<NodeIndex> Nodes(const Network& net) const;

  bool operator==(const Path& other) const = default;
};

// Throws TopologyError unless `flow` fits `net` (endpoints exist, differ, are
// edge nodes, and rate is positive).
void ValidateFlow(const Network& net, const Flow& flow);

// True iff `path` is a simple chain of adjacent links of `net` from the
// flow's origin to its destination.
bool PathIsValid(const Network& net, const Flow& flow, const Path& path);

// Switching matrix with n+2 columns and n rows. Column 0 holds the sources,
// column n+1 the destinations. Every node links to the three nodes in the next
// column (straight and both diagonals); switching columns 1..n also have
// vertical links. All links are bidirectional pairs sharing `profile`.
// Node (column c, row r) has index c*n + r. Throws TopologyError for n < 2.
Network BuildLattice(int n, const CostProfile& profile,
                     double capacity = kUnlimitedCapacity);

// n*n unit flows, every lattice source to every destination.
std::vector<Flow> LatticeFlows(int n);

// Unit flows between every ordered pair drawn from `nodes`, or for the
// cross-product of two groups.
std::vector<Flow> FullMeshFlows(std::span<const NodeIndex> nodes);
std::vector<Flow> CrossFlows(std::span<const NodeIndex> a,
                             std::span<const NodeIndex> b);

}  // namespace antpower

#endif  // ANTPOWER_NETWORK_H_
