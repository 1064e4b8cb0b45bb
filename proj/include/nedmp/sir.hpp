#pragma once

#include <cstdint>
#include <vector>

#include "nedmp/instance.hpp"
#include "nedmp/rng.hpp"

namespace nedmp {

enum class SirState : std::uint8_t { S = 0, I = 1, R = 2 };

// Node states for t = 0..T, row-major by time.
struct StateTrajectory {
  int node_count = 0;
  std::vector<SirState> states;

  SirState at(int t, int i) const { return states[std::size_t(t) * node_count + i]; }
  int horizon() const { return int(states.size() / node_count) - 1; }
};

// One synchronous realization: every transition probability is evaluated from
// the state at t, then all transitions fire together. An infected node both
// exposes its neighbors and may recover within the same step.
StateTrajectory simulate_once(const Instance& inst, Rng& rng);

struct McOptions {
  // Stop a run once no infected nodes remain and freeze the tail; the counted
  // distribution is unchanged because no further transition is possible.
  bool stop_when_extinct = false;
  int threads = 1;  // 0 = hardware concurrency
};

// State frequencies over n_runs independent runs. Run r draws from substream
// (seed, r), so results are identical for any thread count.
MarginalTrajectory estimate_marginals(const Instance& inst, std::int64_t n_runs,
                                      std::uint64_t seed, const McOptions& opts = {});

}  // namespace nedmp
