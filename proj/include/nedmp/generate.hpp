#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nedmp/graph.hpp"
#include "nedmp/rng.hpp"

namespace nedmp {

enum class GraphKind {
  Tree,
  Cycle,
  Grid,
  Regular,
  ErdosRenyi,
  WattsStrogatz,
  BarabasiAlbert,
  Complete,
};

GraphKind parse_graph_kind(std::string_view name);
std::string to_string(GraphKind kind);
const std::vector<GraphKind>& all_graph_kinds();

struct GenParams {
  int degree = 3;            // Regular
  double edge_prob = 0.0;    // ErdosRenyi; 0 -> mean degree 3
  int ring_neighbors = 4;    // WattsStrogatz; odd values round down to even
  double rewire_prob = 0.2;  // WattsStrogatz
  int attach_edges = 2;      // BarabasiAlbert
  int grid_rows = 0;         // Grid; 0 -> most square factorization
};

// Connected simple undirected topology.
struct Topology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted
};

// Deterministic for a fixed rng stream. Throws DataError on infeasible params.
Topology generate_topology(GraphKind kind, int size, const GenParams& params, Rng& rng);

// Bidirectional Graph with placeholder rates (beta = gamma = 0).
Graph topology_graph(const Topology& topo);

// Bidirectional Graph with symmetric per-pair beta ~ U(beta_range) and
// per-node gamma ~ U(gamma_range).
Graph sample_rates(const Topology& topo, std::pair<double, double> beta_range,
                   std::pair<double, double> gamma_range, Rng& rng);

bool is_connected(const Topology& topo);

}  // namespace nedmp
