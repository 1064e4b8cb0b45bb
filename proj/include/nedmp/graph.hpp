#pragma once

#include <tuple>
#include <utility>
#include <vector>

namespace nedmp {

struct DirectedEdge {
  int src = 0;
  int dst = 0;
  double beta = 0.0;  // infection probability along this edge
  bool operator==(const DirectedEdge&) const = default;
};

// Directed weighted diffusion network. Immutable after construction and safe
// to share across threads. Edges are kept sorted by (src, dst) so that every
// edge-indexed quantity downstream is deterministic.
class Graph {
 public:
  Graph() = default;

  // Validates endpoints and rates, rejects self-loops and duplicate edges.
  static Graph build(int n, std::vector<DirectedEdge> edges, std::vector<double> gamma);

  // Expands each undirected pair {i, j} into (i->j) and (j->i), both carrying
  // the pair's beta.
  static Graph build_undirected(int n, const std::vector<std::tuple<int, int, double>>& pairs,
                                std::vector<double> gamma);

  int node_count() const { return n_; }
  int edge_count() const { return int(edges_.size()); }
  const std::vector<DirectedEdge>& edges() const { return edges_; }
  const DirectedEdge& edge(int e) const { return edges_[e]; }
  const std::vector<double>& gamma() const { return gamma_; }

  // Edge ids (j->v) / (v->k), in edge-list order.
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }

  // Edge id of (dst->src), or -1 when the reverse direction is absent.
  int reverse_edge(int e) const { return reverse_[e]; }

  // Position of edge e inside in_edges(dst(e)).
  int in_position(int e) const { return in_pos_[e]; }

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && edges_ == o.edges_ && gamma_ == o.gamma_;
  }

 private:
  int n_ = 0;
  std::vector<DirectedEdge> edges_;
  std::vector<double> gamma_;
  std::vector<std::vector<int>> in_, out_;
  std::vector<int> reverse_, in_pos_;
};

// Non-backtracking line graph: one node per directed edge of the base graph,
// one arc (i->j) -> (j->k) for every edge pair with i != k.
class LineGraph {
 public:
  explicit LineGraph(const Graph& g);

  int node_count() const { return int(in_arcs_.size()); }
  int arc_count() const { return int(arcs_.size()); }

  // Arcs as (source line-node, target line-node), in deterministic order.
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

  // Line-nodes (k->i) with k != j, for line-node e = (i->j).
  const std::vector<int>& in_arcs(int e) const { return in_arcs_[e]; }

  // Line-node ids are base edge ids.
  int base_edge(int line_node) const { return line_node; }

 private:
  std::vector<std::pair<int, int>> arcs_;
  std::vector<std::vector<int>> in_arcs_;
};

}  // namespace nedmp
