#ifndef ANTPOWER_SCENARIO_H_
#define ANTPOWER_SCENARIO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antpower/simulation.h"

namespace antpower {

// Scenario files are `key = value` lines with '#' comments:
//
//   name = lattice8-cubic
//   topology = lattice:8      # nsfnet | fig1 | nobel-eu | file:<p> | sndlib:<p>
//   profile = cubic           # log | linear | cubic | as-is | custom:a0,a1,...
//   log_base = 10             # 10 | e
//   capacity = inf            # per-link capacity override
//   reference_capacity = 1
//   traffic = default         # all-pairs | fullmesh | coast2coast |
//                             # intracoast | demands | file:<p>
//   west = WA,CA1,CA2,UT,CO
//   east = NY,NJ,PA,MD,GA,MI
//   traffic_steps = 1
//   step_interval = 0
//   mode = ant                # ant | pruned-spf
//   iterations = 2000
//   replications = 100
//   seed = 1
//   pi_e = 0.1  alpha = 2  eta = 0.1  epsilon = 0.25  a = 10  b = 9  h = 0.04
//   max_hops = 0
//   require_improvement = true  # false adopts any feasible chained path
//
// Unknown keys and malformed values raise ParseError with the line number.
Scenario ParseScenario(std::string_view text);

// Sets one key; `line` only labels errors.
void ApplyScenarioParam(Scenario& s, const std::string& key,
                        const std::string& value, std::size_t line = 0);

std::vector<std::string> PresetNames();
std::optional<std::string> PresetText(const std::string& name);

// Preset name or path to a scenario file.
Scenario LoadScenario(const std::string& name_or_path);

}  // namespace antpower

#endif  // ANTPOWER_SCENARIO_H_
