#include "antpower/network.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "antpower/errors.h"

namespace antpower {

Network::Network(double reference_capacity) {
  set_reference_capacity(reference_capacity);
}

void Network::set_reference_capacity(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw TopologyError("reference capacity must be positive and finite");
  }
  reference_capacity_ = mu;
}

NodeIndex Network::AddNode(std::string name, bool edge) {
  if (name.empty()) {
    name = "n" + std::to_string(nodes_.size());
  }
  if (node_index_.count(name) > 0) {
    throw TopologyError("duplicate node name '" + name + "'");
  }
  NodeIndex index = static_cast<NodeIndex>(nodes_.size());
  node_index_.emplace(name, index);
  nodes_.push_back(Node{std::move(name), edge});
  out_links_.emplace_back();
  return index;
}

LinkIndex Network::AddLink(NodeIndex from, NodeIndex to, double capacity,
                           CostProfile profile) {
  if (from >= nodes_.size() || to >= nodes_.size()) {
    throw TopologyError("link references an unknown node");
  }
  if (from == to) {
    throw TopologyError("self loop at node '" + nodes_[from].name + "'");
  }
  if (!(capacity > 0.0)) {
    throw TopologyError("link capacity must be positive");
  }
  if (link_index_.count({from, to}) > 0) {
    throw TopologyError("duplicate link " + nodes_[from].name + " -> " +
                        nodes_[to].name);
  }
  LinkIndex index = static_cast<LinkIndex>(links_.size());
  links_.push_back(Link{from, to, capacity, std::move(profile)});
  link_index_.emplace(std::make_pair(from, to), index);
  auto& out = out_links_[from];
  auto pos = std::lower_bound(
      out.begin(), out.end(), to,
      [this](LinkIndex l, NodeIndex target) { return links_[l].to < target; });
  out.insert(pos, index);
  return index;
}

LinkIndex Network::AddBidirectionalLink(NodeIndex a, NodeIndex b,
                                        double capacity,
                                        const CostProfile& profile) {
  LinkIndex forward = AddLink(a, b, capacity, profile);
  AddLink(b, a, capacity, profile);
  return forward;
}

std::optional<LinkIndex> Network::FindLink(NodeIndex from, NodeIndex to) const {
  auto it = link_index_.find({from, to});
  if (it == link_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeIndex> Network::FindNode(const std::string& name) const {
  auto it = node_index_.find(name);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

double Network::NormalizedLoad(LinkIndex l, double load) const {
  const Link& lk = links_[l];
  return load / (lk.has_finite_capacity() ? lk.capacity : reference_capacity_);
}

double Network::LinkCost(LinkIndex l, double load) const {
  const Link& lk = links_[l];
  return EvalCost(lk.profile, NormalizedLoad(l, load),
                  lk.has_finite_capacity());
}

std::vector<NodeIndex> Network::EdgeNodes() const {
  std::vector<NodeIndex> out;
  for (NodeIndex n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].edge) out.push_back(n);
  }
  return out;
}

bool Path::Contains(LinkIndex l) const {
  return std::find(links.begin(), links.end(), l) != links.end();
}

std::vector<NodeIndex> Path::Nodes(const Network& net) const {
  std::vector<NodeIndex> out;
  if (links.empty()) return out;
  out.reserve(links.size() + 1);
  out.push_back(net.link(links.front()).from);
  for (LinkIndex l : links) out.push_back(net.link(l).to);
  return out;
}

void ValidateFlow(const Network& net, const Flow& flow) {
  const std::string id = "flow " + std::to_string(flow.id);
  if (flow.origin >= net.num_nodes() || flow.destination >= net.num_nodes()) {
    throw TopologyError(id + " references an unknown node");
  }
  if (flow.origin == flow.destination) {
    throw TopologyError(id + " has identical origin and destination");
  }
  if (!net.node(flow.origin).edge || !net.node(flow.destination).edge) {
    throw TopologyError(id + " endpoints must be edge nodes");
  }
  if (!(flow.rate > 0.0) || !std::isfinite(flow.rate)) {
    throw TopologyError(id + " must have a positive finite rate");
  }
}

bool PathIsValid(const Network& net, const Flow& flow, const Path& path) {
  if (path.links.empty()) return false;
  NodeIndex at = flow.origin;
  std::unordered_set<NodeIndex> seen{at};
  for (LinkIndex l : path.links) {
    if (l >= net.num_links()) return false;
    const Link& lk = net.link(l);
    if (lk.from != at) return false;
    at = lk.to;
    if (!seen.insert(at).second) return false;
  }
  return at == flow.destination;
}

Network BuildLattice(int n, const CostProfile& profile, double capacity) {
  if (n < 2) {
    throw TopologyError("lattice needs at least 2 stages, got " +
                        std::to_string(n));
  }
  Network net;
  const int columns = n + 2;
  auto index = [n](int c, int r) { return static_cast<NodeIndex>(c * n + r); };
  for (int c = 0; c < columns; ++c) {
    for (int r = 0; r < n; ++r) {
      std::string name;
      if (c == 0) {
        name = "src" + std::to_string(r);
      } else if (c == columns - 1) {
        name = "dst" + std::to_string(r);
      } else {
        name = "sw" + std::to_string(c) + "_" + std::to_string(r);
      }
      net.AddNode(std::move(name), c == 0 || c == columns - 1);
    }
  }
  for (int c = 0; c + 1 < columns; ++c) {
    for (int r = 0; r < n; ++r) {
      for (int dr = -1; dr <= 1; ++dr) {
        int r2 = r + dr;
        if (r2 < 0 || r2 >= n) continue;
        net.AddBidirectionalLink(index(c, r), index(c + 1, r2), capacity,
                                 profile);
      }
    }
  }
  for (int c = 1; c <= n; ++c) {
    for (int r = 0; r + 1 < n; ++r) {
      net.AddBidirectionalLink(index(c, r), index(c, r + 1), capacity,
                               profile);
    }
  }
  return net;
}

std::vector<Flow> LatticeFlows(int n) {
  std::vector<Flow> flows;
  const NodeIndex first_destination = static_cast<NodeIndex>((n + 1) * n);
  for (int s = 0; s < n; ++s) {
    for (int d = 0; d < n; ++d) {
      Flow f;
      f.id = static_cast<FlowIndex>(flows.size());
      f.origin = static_cast<NodeIndex>(s);
      f.destination = first_destination + static_cast<NodeIndex>(d);
      flows.push_back(f);
    }
  }
  return flows;
}

std::vector<Flow> FullMeshFlows(std::span<const NodeIndex> nodes) {
  std::vector<Flow> flows;
  for (NodeIndex o : nodes) {
    for (NodeIndex d : nodes) {
      if (o == d) continue;
      Flow f;
      f.id = static_cast<FlowIndex>(flows.size());
      f.origin = o;
      f.destination = d;
      flows.push_back(f);
    }
  }
  return flows;
}

std::vector<Flow> CrossFlows(std::span<const NodeIndex> a,
                             std::span<const NodeIndex> b) {
  std::vector<Flow> flows;
  auto add = [&flows](NodeIndex o, NodeIndex d) {
    if (o == d) return;
    Flow f;
    f.id = static_cast<FlowIndex>(flows.size());
    f.origin = o;
    f.destination = d;
    flows.push_back(f);
  };
  for (NodeIndex o : a) {
    for (NodeIndex d : b) add(o, d);
  }
  for (NodeIndex o : b) {
    for (NodeIndex d : a) add(o, d);
  }
  return flows;
}

}  // namespace antpower
