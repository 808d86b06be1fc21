#ifndef ANTPOWER_TOPOLOGY_IO_H_
#define ANTPOWER_TOPOLOGY_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antpower/network.h"

namespace antpower {

// Line-oriented topology format; '#' starts a comment.
//
//   node <name> [edge]
//   link <from> <to> <capacity|inf> <a0> <a1> ... <an>   (both directions)
//   arc  <from> <to> <capacity|inf> <a0> <a1> ... <an>   (one direction)
//   reference-capacity <mu>
//
// Throws ParseError carrying the offending line number.
Network ParseTopology(std::string_view text, LogBase base = LogBase::kBase10);
std::string WriteTopology(const Network& net);

// Traffic file: `flow <origin> <destination> <rate> [active_from]`.
std::vector<Flow> ParseTraffic(std::string_view text, const Network& net);

// Copy of `net` with every link given `profile`, and `capacity` when set.
Network WithUniformLinks(const Network& net, const CostProfile& profile,
                         std::optional<double> capacity = std::nullopt);

struct SndlibInstance {
  Network network;
  std::vector<Flow> flows;
};

// Reads the NODES, LINKS and DEMANDS sections of an SNDlib native-format
// file; other sections are skipped. Parallel links between a node pair
// collapse into one bidirectional pair with unlimited capacity. Every node is
// an edge node and each demand becomes one flow at the demand value.
SndlibInstance ImportSndlib(std::string_view text, const CostProfile& profile);

// 14-node NSFNet T1 backbone from the bundled data file.
Network BuildNsfnet(const CostProfile& profile,
                    double capacity = kUnlimitedCapacity);

// Raw text of the bundled data files.
std::string_view BundledNsfnetTopology();
std::string_view BundledNobelEu();

}  // namespace antpower

#endif  // ANTPOWER_TOPOLOGY_IO_H_
