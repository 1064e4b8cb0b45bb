#include "nedmp/graph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "nedmp/errors.hpp"

namespace nedmp {

Graph Graph::build(int n, std::vector<DirectedEdge> edges, std::vector<double> gamma) {
  if (n < 0) throw DataError("node count must be non-negative");
  if (int(gamma.size()) != n)
    throw DataError("gamma length " + std::to_string(gamma.size()) + " does not match node count " +
                    std::to_string(n));
  for (double g : gamma) {
    if (!(g >= 0.0 && g <= 1.0)) throw DataError("recovery rate outside [0,1]");
  }
  for (const DirectedEdge& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw DataError("edge endpoint out of range: (" + std::to_string(e.src) + "," +
                      std::to_string(e.dst) + ")");
    if (e.src == e.dst) throw DataError("self-loop at node " + std::to_string(e.src));
    if (!(e.beta >= 0.0 && e.beta <= 1.0)) throw DataError("infection rate outside [0,1]");
  }

  std::sort(edges.begin(), edges.end(), [](const DirectedEdge& a, const DirectedEdge& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].src == edges[i - 1].src && edges[i].dst == edges[i - 1].dst)
      throw DataError("duplicate directed edge (" + std::to_string(edges[i].src) + "," +
                      std::to_string(edges[i].dst) + ")");
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.gamma_ = std::move(gamma);
  g.in_.resize(n);
  g.out_.resize(n);
  g.in_pos_.resize(g.edges_.size());
  for (int e = 0; e < int(g.edges_.size()); ++e) {
    g.out_[g.edges_[e].src].push_back(e);
    g.in_pos_[e] = int(g.in_[g.edges_[e].dst].size());
    g.in_[g.edges_[e].dst].push_back(e);
  }

  std::map<std::pair<int, int>, int> index;
  for (int e = 0; e < int(g.edges_.size()); ++e) index[{g.edges_[e].src, g.edges_[e].dst}] = e;
  g.reverse_.assign(g.edges_.size(), -1);
  for (int e = 0; e < int(g.edges_.size()); ++e) {
    auto it = index.find({g.edges_[e].dst, g.edges_[e].src});
    if (it != index.end()) g.reverse_[e] = it->second;
  }
  return g;
}

Graph Graph::build_undirected(int n, const std::vector<std::tuple<int, int, double>>& pairs,
                              std::vector<double> gamma) {
  std::vector<DirectedEdge> edges;
  edges.reserve(2 * pairs.size());
  for (const auto& [i, j, beta] : pairs) {
    edges.push_back({i, j, beta});
    edges.push_back({j, i, beta});
  }
  return build(n, std::move(edges), std::move(gamma));
}

LineGraph::LineGraph(const Graph& g) {
  const int m = g.edge_count();
  in_arcs_.resize(m);
  for (int e = 0; e < m; ++e) {
    const int i = g.edge(e).src;
    const int j = g.edge(e).dst;
    for (int f : g.out_edges(j)) {
      if (g.edge(f).dst == i) continue;  // backtracking
      arcs_.emplace_back(e, f);
      in_arcs_[f].push_back(e);
    }
  }
}

}  // namespace nedmp
