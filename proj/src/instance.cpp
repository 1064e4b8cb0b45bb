#include "nedmp/instance.hpp"

#include <algorithm>
#include <string>

#include "nedmp/errors.hpp"

namespace nedmp {

Instance Instance::make(Graph graph, std::vector<int> seeds, int horizon) {
  if (horizon < 1) throw DataError("horizon must be >= 1");
  if (seeds.empty()) throw DataError("seed set must be nonempty");
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  for (int s : seeds) {
    if (s < 0 || s >= graph.node_count())
      throw DataError("seed out of range: " + std::to_string(s));
  }
  Instance inst;
  inst.graph = std::move(graph);
  inst.seeds = std::move(seeds);
  inst.horizon = horizon;
  return inst;
}

bool Instance::is_seed(int node) const {
  return std::binary_search(seeds.begin(), seeds.end(), node);
}

}  // namespace nedmp
