#pragma once

#include <optional>
#include <vector>

#include "nedmp/graph.hpp"
#include "nedmp/marginals.hpp"

namespace nedmp {

// One inference problem: a graph, the initially infected seed set, and the
// horizon T. Labels, when present, hold ground-truth marginals.
struct Instance {
  Graph graph;
  std::vector<int> seeds;
  int horizon = 1;
  std::optional<MarginalTrajectory> labels;

  // Validates seed range/uniqueness and horizon; sorts seeds.
  static Instance make(Graph graph, std::vector<int> seeds, int horizon);

  bool is_seed(int node) const;
};

}  // namespace nedmp
