#ifndef ANTPOWER_COST_H_
#define ANTPOWER_COST_H_

#include <span>
#include <vector>

#include "antpower/network.h"

namespace antpower {

// Absolute carried traffic per link, indexed by LinkIndex.
class LoadVector {
 public:
  LoadVector() = default;
  explicit LoadVector(std::size_t num_links) : load_(num_links, 0.0) {}

  double operator[](LinkIndex l) const { return load_[l]; }
  std::size_t size() const { return load_.size(); }
  std::span<const double> values() const { return load_; }

  void Add(const Path& path, double rate);
  // Removal clamps float residue below zero back to zero.
  void Remove(const Path& path, double rate);

  // Loads induced by flows[k] following paths[k].
  static LoadVector FromPaths(const Network& net, std::span<const Flow> flows,
                              std::span<const Path> paths);

 private:
  std::vector<double> load_;
};

// Marginal power of carrying `flow_rate` on link `l`. For a link outside the
// flow's current path this is c(rho + df) - c(rho); for a link inside it, the
// flow is already part of rho and the result is its share c(rho) - c(rho - df).
// Returns +infinity when the resulting load exceeds a finite capacity.
double MarginalCost(const Network& net, LinkIndex l, const LoadVector& loads,
                    double flow_rate, bool in_current_path);

// Power other flows on `l` would pay if this flow left the link:
// ( c(load - rate) + c(rate) - c(load) )^+, all normalized by capacity.
// Throws ContractViolation when `l` is not on `current_path`.
double LeavePenalty(const Network& net, LinkIndex l, const LoadVector& loads,
                    double flow_rate, const Path& current_path);

// Sum of link costs; +infinity if any link is overloaded.
double NetworkPower(const Network& net, const LoadVector& loads);

}  // namespace antpower

#endif  // ANTPOWER_COST_H_
