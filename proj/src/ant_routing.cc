#include "antpower/ant_routing.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "antpower/errors.h"

namespace antpower {
namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kCapacitySlack = 1e-12;
constexpr double kImprovementSlack = 1e-12;

}  // namespace

double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t UniformIndex(Rng& rng, std::size_t n) {
  auto k = static_cast<std::size_t>(UniformUnit(rng) * static_cast<double>(n));
  return std::min(k, n - 1);
}

void AntParameters::Validate() const {
  auto fail = [](const std::string& what) {
    throw ContractViolation("ant parameter " + what);
  };
  if (!(exploration >= 0.0 && exploration <= 1.0)) fail("pi_e not in [0,1]");
  if (!(alpha > 1.0)) fail("alpha must exceed 1");
  if (!(eta > 0.0 && eta <= 1.0)) fail("eta not in (0,1]");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (!(a > 0.0) || !(b > 0.0)) fail("a and b must be positive");
  if (!(h > 0.0)) fail("h must be positive");
  if (max_hops < 0) fail("max_hops must be non-negative");
}

void CostStats::Add(double sample, double eta) {
  if (count_ == 0) {
    mean_ = sample;
    variance_ = 0.0;
  } else {
    mean_ += eta * (sample - mean_);
    double diff = sample - mean_;
    variance_ += eta * (diff * diff - variance_);
  }
  ++count_;
}

double CostStats::deviation() const { return std::sqrt(variance_); }

double Recalibrate(double raw, const CostStats& stats,
                   const AntParameters& params) {
  const double mean = stats.mean();
  if (!(mean > 0.0)) return 0.5;
  const double r = std::min(raw / (params.alpha * mean), 1.0);
  const double spread = stats.deviation() / mean;
  double adjusted;
  if (spread < params.epsilon) {
    double correction = std::exp(-params.a * spread);
    adjusted = r < 0.5 ? r - correction : r + correction;
  } else {
    // An unreliable mean damps reinforcement on both sides of 0.5.
    adjusted = r + 1.0 - std::exp(-params.b * spread);
  }
  if (!(adjusted > 0.0)) return 0.0;
  return std::min(std::pow(adjusted, params.h), 1.0);
}

GoodnessVector::GoodnessVector(std::size_t neighbors)
    : values_(neighbors,
              neighbors == 0 ? 0.0 : 1.0 / static_cast<double>(neighbors)) {}

GoodnessVector::GoodnessVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (double g : values_) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw ContractViolation("goodness entry outside [0, 1]");
    }
  }
  if (std::abs(Sum() - 1.0) > kSumTolerance) {
    throw ContractViolation("goodness vector does not sum to one");
  }
}

double GoodnessVector::Sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

void GoodnessVector::Reinforce(std::size_t slot, double r) {
  if (slot >= values_.size()) {
    throw ContractViolation("reinforced neighbor is not adjacent");
  }
  const double step = 1.0 - r;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (k == slot) {
      values_[k] += step * (1.0 - values_[k]);
    } else {
      values_[k] -= step * values_[k];
    }
  }
  double sum = Sum();
  if (std::abs(sum - 1.0) > 1e-12) {
    for (double& g : values_) g /= sum;
  }
  assert(std::abs(Sum() - 1.0) <= kSumTolerance);
}

std::size_t GoodnessVector::Best() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] > values_[best]) best = k;
  }
  return best;
}

std::size_t GoodnessVector::Sample(double u) const {
  double target = u * Sum();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] <= 0.0) continue;
    acc += values_[k];
    last_positive = k;
    if (target < acc) return k;
  }
  return last_positive;
}

void RemoveCycle(ForwardAgent& agent, NodeIndex revisited) {
  auto it = std::find(agent.visited.begin(), agent.visited.end(), revisited);
  if (it == agent.visited.end()) return;
  auto keep = static_cast<std::size_t>(it - agent.visited.begin());
  agent.visited.resize(keep + 1);
  agent.links.resize(keep);
  agent.hop_costs.resize(keep);
}

std::size_t ChooseNextSlot(const GoodnessVector* goodness,
                           std::size_t out_degree, double exploration,
                           Rng& rng) {
  if (out_degree == 0) {
    throw ContractViolation("forward step from a node without outgoing links");
  }
  if (goodness != nullptr && goodness->size() != out_degree) {
    throw ContractViolation("goodness vector does not match node degree");
  }
  if (goodness == nullptr || UniformUnit(rng) < exploration) {
    return UniformIndex(rng, out_degree);
  }
  return goodness->Sample(UniformUnit(rng));
}

double DirectCost(std::span<const double> hop_costs, std::size_t position) {
  double sum = 0.0;
  for (std::size_t k = hop_costs.size(); k > position; --k) {
    sum += hop_costs[k - 1];
  }
  return sum;
}

double IndirectCostInit(std::span<const double> gamma) {
  double sum = 0.0;
  for (double g : gamma) sum += g;
  return sum;
}

double IndirectCostStep(double at_downstream, LinkIndex hop,
                        const Path& current_path,
                        std::span<const double> gamma) {
  auto it = std::find(current_path.links.begin(), current_path.links.end(), hop);
  if (it == current_path.links.end()) return at_downstream;
  auto pos = static_cast<std::size_t>(it - current_path.links.begin());
  if (pos >= gamma.size()) {
    throw ConsistencyError("leave penalty vector shorter than current path");
  }
  double value = at_downstream - gamma[pos];
  if (value < -1e-9) {
    throw ConsistencyError("indirect cost became negative");
  }
  return value < 0.0 ? 0.0 : value;
}

std::optional<Path> ChainNextHops(
    const Network& net, const Flow& flow,
    std::span<const std::pair<NodeIndex, NodeIndex>> best_next_hops) {
  Path path;
  std::vector<bool> seen(net.num_nodes(), false);
  NodeIndex at = flow.origin;
  seen[at] = true;
  while (at != flow.destination) {
    auto it = std::find_if(best_next_hops.begin(), best_next_hops.end(),
                           [at](const auto& e) { return e.first == at; });
    if (it == best_next_hops.end()) return std::nullopt;
    NodeIndex next = it->second;
    auto link = net.FindLink(at, next);
    if (!link || seen[next]) return std::nullopt;
    seen[next] = true;
    path.links.push_back(*link);
    at = next;
  }
  return path;
}

std::size_t AgentFootprint(const ForwardAgent& agent,
                           const Path& current_path) {
  return agent.visited.size() + agent.hop_costs.size() + 1 +
         2 * current_path.links.size();
}

AntEngine::AntEngine(const Network& net, std::vector<Flow> flows,
                     AntParameters params, std::uint64_t seed)
    : net_(net),
      flows_(std::move(flows)),
      params_(params),
      rng_(seed),
      loads_(net.num_links()),
      sources_(flows_.size()),
      node_state_(net.num_nodes(), std::vector<FlowEntry>(flows_.size())) {
  params_.Validate();
  for (std::size_t k = 0; k < flows_.size(); ++k) {
    if (flows_[k].id != k) {
      throw ContractViolation("flow ids must equal their position");
    }
    ValidateFlow(net_, flows_[k]);
  }
  max_steps_ = params_.max_hops > 0
                   ? static_cast<std::size_t>(params_.max_hops)
                   : 4 * net_.num_nodes();
}

void AntEngine::Activate(FlowIndex f, Path initial) {
  SourceState& src = sources_.at(f);
  if (src.active) throw ContractViolation("flow activated twice");
  if (!PathIsValid(net_, flows_[f], initial)) {
    throw ContractViolation("initial path invalid for flow " +
                            std::to_string(f));
  }
  src.active = true;
  src.path = std::move(initial);
  src.gamma.assign(src.path.links.size(), 0.0);
  for (LinkIndex l : src.path.links) {
    node_state_[net_.link(l).from][f].next_hop = net_.link(l).to;
  }
  loads_.Add(src.path, flows_[f].rate);
  order_.push_back(f);
}

IterationCounts AntEngine::RunIteration() {
  // Fisher-Yates on the engine stream keeps runs reproducible per seed.
  std::vector<FlowIndex> order = order_;
  std::sort(order.begin(), order.end());
  for (std::size_t k = order.size(); k > 1; --k) {
    std::swap(order[k - 1], order[UniformIndex(rng_, k)]);
  }
  IterationCounts counts;
  for (FlowIndex f : order) {
    switch (RunAgent(f)) {
      case AgentOutcome::kAdopted: ++counts.adoptions; break;
      case AgentOutcome::kUnchanged: ++counts.unchanged; break;
      case AgentOutcome::kRejected: ++counts.rejections; break;
      case AgentOutcome::kAborted: ++counts.aborted; break;
    }
  }
  return counts;
}

AgentOutcome AntEngine::RunAgent(FlowIndex f) {
  auto forward = LaunchForwardAgent(f);
  if (!forward) return AgentOutcome::kAborted;
  return Adopt(BackwardSweep(*forward));
}

std::optional<ForwardAgent> AntEngine::LaunchForwardAgent(FlowIndex f) {
  const Flow& flow = flows_.at(f);
  const SourceState& src = sources_[f];
  if (!src.active) throw ContractViolation("agent for an inactive flow");
  ForwardAgent agent;
  agent.flow = f;
  agent.visited.push_back(flow.origin);
  while (agent.visited.back() != flow.destination) {
    if (agent.steps >= max_steps_) return std::nullopt;
    NodeIndex at = agent.visited.back();
    auto out = net_.out_links(at);
    if (out.empty()) return std::nullopt;
    const auto& g = node_state_[at][f].goodness;
    std::size_t slot = ChooseNextSlot(g ? &*g : nullptr, out.size(),
                                      params_.exploration, rng_);
    LinkIndex link = out[slot];
    NodeIndex next = net_.link(link).to;
    ++agent.steps;
    if (std::find(agent.visited.begin(), agent.visited.end(), next) !=
        agent.visited.end()) {
      RemoveCycle(agent, next);
      continue;
    }
    agent.hop_costs.push_back(MarginalCost(net_, link, loads_, flow.rate,
                                           src.path.Contains(link)));
    agent.links.push_back(link);
    agent.visited.push_back(next);
  }
  return agent;
}

BackwardAgent AntEngine::BackwardSweep(const ForwardAgent& agent) {
  const FlowIndex f = agent.flow;
  const Flow& flow = flows_.at(f);
  const SourceState& src = sources_[f];
  BackwardAgent back;
  back.flow = f;
  back.route = agent.visited;
  back.links = agent.links;

  double indirect = IndirectCostInit(src.gamma);
  double direct = 0.0;
  for (std::size_t k = agent.links.size(); k-- > 0;) {
    const NodeIndex node = agent.visited[k];
    const LinkIndex link = agent.links[k];
    indirect = IndirectCostStep(indirect, link, src.path, src.gamma);
    direct += agent.hop_costs[k];
    const double raw = direct + indirect;

    FlowEntry& entry = Entry(node, f);
    double r = 1.0;
    if (std::isfinite(raw)) {
      entry.stats.Add(raw, params_.eta);
      r = Recalibrate(raw, entry.stats, params_);
    }
    entry.goodness->Reinforce(SlotOf(node, link), r);
    // Ties favour the installed hop, then the hop this agent took.
    const auto& g = entry.goodness->values();
    const double top = g[entry.goodness->Best()];
    NodeIndex best = net_.link(net_.out_links(node)[entry.goodness->Best()]).to;
    if (g[SlotOf(node, link)] >= top) best = net_.link(link).to;
    if (entry.next_hop) {
      auto held = net_.FindLink(node, *entry.next_hop);
      if (held && g[SlotOf(node, *held)] >= top) best = *entry.next_hop;
    }
    back.best_next_hops.emplace_back(node, best);
    entry.next_hop = best;

    auto on_path = std::find(src.path.links.begin(), src.path.links.end(), link);
    if (on_path != src.path.links.end()) {
      back.fresh_gamma.emplace_back(
          static_cast<std::size_t>(on_path - src.path.links.begin()),
          LeavePenalty(net_, link, loads_, flow.rate, src.path));
    }
  }
  back.indirect_cost = indirect;
  return back;
}

AgentOutcome AntEngine::Adopt(const BackwardAgent& agent) {
  const FlowIndex f = agent.flow;
  const Flow& flow = flows_.at(f);
  SourceState& src = sources_[f];
  // Nodes off this agent's route keep the hop recorded by earlier agents.
  std::vector<std::pair<NodeIndex, NodeIndex>> table;
  for (NodeIndex n = 0; n < net_.num_nodes(); ++n) {
    if (auto hop = node_state_[n][f].next_hop) table.emplace_back(n, *hop);
  }
  auto candidate = ChainNextHops(net_, flow, table);
  if (!candidate) return AgentOutcome::kRejected;

  if (*candidate == src.path) {
    for (const auto& [pos, value] : agent.fresh_gamma) src.gamma[pos] = value;
    return AgentOutcome::kUnchanged;
  }

  if (params_.require_improvement &&
      !(MoveDelta(f, *candidate) < -kImprovementSlack)) {
    return AgentOutcome::kRejected;
  }
  loads_.Remove(src.path, flow.rate);
  loads_.Add(*candidate, flow.rate);
  for (LinkIndex l : candidate->links) {
    const Link& lk = net_.link(l);
    if (lk.has_finite_capacity() &&
        loads_[l] > lk.capacity * (1.0 + kCapacitySlack)) {
      loads_.Remove(*candidate, flow.rate);
      loads_.Add(src.path, flow.rate);
      return AgentOutcome::kRejected;
    }
  }
  src.path = std::move(*candidate);
  RefreshGamma(f);
  return AgentOutcome::kAdopted;
}

const GoodnessVector* AntEngine::goodness(NodeIndex node, FlowIndex f) const {
  const auto& g = node_state_.at(node).at(f).goodness;
  return g ? &*g : nullptr;
}

const CostStats* AntEngine::stats(NodeIndex node, FlowIndex f) const {
  const FlowEntry& e = node_state_.at(node).at(f);
  return e.goodness ? &e.stats : nullptr;
}

StateFootprint AntEngine::Footprint() const {
  StateFootprint fp;
  fp.nodes.resize(net_.num_nodes());
  for (NodeIndex n = 0; n < net_.num_nodes(); ++n) {
    NodeFootprint& nf = fp.nodes[n];
    for (const FlowEntry& e : node_state_[n]) {
      if (!e.goodness) continue;
      nf.goodness_entries += e.goodness->size();
      nf.stats_entries += 2;
    }
    nf.load_entries = net_.out_links(n).size();
    fp.total_goodness_entries += nf.goodness_entries;
  }
  for (FlowIndex f = 0; f < flows_.size(); ++f) {
    const SourceState& src = sources_[f];
    if (!src.active) continue;
    fp.nodes[flows_[f].origin].source_entries +=
        src.path.links.size() + src.gamma.size() + 1;
  }
  return fp;
}

AntEngine::FlowEntry& AntEngine::Entry(NodeIndex node, FlowIndex f) {
  FlowEntry& e = node_state_[node][f];
  if (!e.goodness) e.goodness.emplace(net_.out_links(node).size());
  return e;
}

double AntEngine::MoveDelta(FlowIndex f, const Path& candidate) const {
  const Flow& flow = flows_[f];
  const Path& current = sources_[f].path;
  double delta = 0.0;
  for (LinkIndex l : candidate.links) {
    if (!current.Contains(l)) {
      delta += MarginalCost(net_, l, loads_, flow.rate, false);
    }
  }
  for (LinkIndex l : current.links) {
    if (!candidate.Contains(l)) {
      delta -= MarginalCost(net_, l, loads_, flow.rate, true);
    }
  }
  return delta;
}

void AntEngine::RefreshGamma(FlowIndex f) {
  SourceState& src = sources_[f];
  src.gamma.resize(src.path.links.size());
  for (std::size_t k = 0; k < src.path.links.size(); ++k) {
    src.gamma[k] = LeavePenalty(net_, src.path.links[k], loads_, flows_[f].rate,
                                src.path);
  }
}

std::size_t AntEngine::SlotOf(NodeIndex node, LinkIndex link) const {
  auto out = net_.out_links(node);
  auto it = std::find(out.begin(), out.end(), link);
  if (it == out.end()) {
    throw ContractViolation("link does not leave the node");
  }
  return static_cast<std::size_t>(it - out.begin());
}

}  // namespace antpower
