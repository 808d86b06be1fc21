#ifndef ANTPOWER_TESTS_PROPERTIES_H_
#define ANTPOWER_TESTS_PROPERTIES_H_

#include <cstdint>
#include <string>

#include "antpower/simulation.h"

namespace antpower::testing {

struct PropertyResult {
  bool ok = true;
  int cases = 0;
  std::string detail;  // first counterexample

  void Fail(std::string what) {
    if (ok) detail = std::move(what);
    ok = false;
  }
};

// Small random instance: 3 to 6 nodes on a ring plus random chords, 1 to 3
// flows, one profile for every link and capacities that keep the flows
// routable together.
Instance RandomSmallInstance(std::uint64_t seed);

// Runs the ant engine on random instances and checks, after every agent,
// that goodness vectors are normalized, adopted paths are simple, connected
// and within capacity, and the engine's loads match a recomputation.
PropertyResult CheckEngineInvariants(int instances, int iterations);

// r'_a stays in [0, 1] for random (sample, mean, deviation) triples.
PropertyResult CheckRecalibrateRange(int samples);

// The exact optimum is no worse than SPF, the ant engine's final routing or
// any random feasible assignment.
PropertyResult CheckOracleDominance(int seeds);

// Two runs with the same seed produce byte-identical iteration CSVs, for a
// handful of presets shortened to `iterations`.
PropertyResult CheckDeterminism(int iterations);

}  // namespace antpower::testing

#endif  // ANTPOWER_TESTS_PROPERTIES_H_
