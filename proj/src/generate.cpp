#include "nedmp/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nedmp/errors.hpp"

namespace nedmp {

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "tree") return GraphKind::Tree;
  if (name == "cycle") return GraphKind::Cycle;
  if (name == "grid") return GraphKind::Grid;
  if (name == "regular") return GraphKind::Regular;
  if (name == "erdos_renyi") return GraphKind::ErdosRenyi;
  if (name == "watts_strogatz") return GraphKind::WattsStrogatz;
  if (name == "barabasi_albert") return GraphKind::BarabasiAlbert;
  if (name == "complete") return GraphKind::Complete;
  throw DataError("unknown graph kind: " + std::string(name));
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Tree: return "tree";
    case GraphKind::Cycle: return "cycle";
    case GraphKind::Grid: return "grid";
    case GraphKind::Regular: return "regular";
    case GraphKind::ErdosRenyi: return "erdos_renyi";
    case GraphKind::WattsStrogatz: return "watts_strogatz";
    case GraphKind::BarabasiAlbert: return "barabasi_albert";
    case GraphKind::Complete: return "complete";
  }
  throw DataError("unknown graph kind enum");
}

const std::vector<GraphKind>& all_graph_kinds() {
  static const std::vector<GraphKind> kinds = {
      GraphKind::Tree,          GraphKind::Cycle,         GraphKind::Grid,
      GraphKind::Regular,       GraphKind::ErdosRenyi,    GraphKind::WattsStrogatz,
      GraphKind::BarabasiAlbert, GraphKind::Complete};
  return kinds;
}

bool is_connected(const Topology& topo) {
  if (topo.n == 0) return false;
  std::vector<std::vector<int>> adj(topo.n);
  for (auto [i, j] : topo.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> seen(topo.n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == topo.n;
}

namespace {

Topology finish(int n, std::set<std::pair<int, int>> edge_set) {
  Topology topo;
  topo.n = n;
  topo.edges.assign(edge_set.begin(), edge_set.end());
  return topo;
}

std::pair<int, int> ordered(int i, int j) { return {std::min(i, j), std::max(i, j)}; }

Topology gen_tree(int n, Rng& rng) {
  std::set<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.insert(ordered(v, rng.below_int(v)));
  return finish(n, std::move(edges));
}

Topology gen_cycle(int n) {
  if (n < 3) throw DataError("cycle needs at least 3 nodes");
  std::set<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.insert(ordered(v, (v + 1) % n));
  return finish(n, std::move(edges));
}

Topology gen_grid(int n, int rows) {
  if (rows == 0) {
    for (int r = int(std::sqrt(double(n))); r >= 1; --r) {
      if (n % r == 0) {
        rows = r;
        break;
      }
    }
  }
  if (rows <= 0 || n % rows != 0) throw DataError("grid rows must divide node count");
  const int cols = n / rows;
  std::set<std::pair<int, int>> edges;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.insert(ordered(id(r, c), id(r, c + 1)));
      if (r + 1 < rows) edges.insert(ordered(id(r, c), id(r + 1, c)));
    }
  }
  return finish(n, std::move(edges));
}

Topology gen_regular(int n, int degree, Rng& rng) {
  if (degree < 1 || degree >= n || (n * degree) % 2 != 0)
    throw DataError("regular graph needs 1 <= degree < n and degree*n even");
  // Configuration model with rejection; resample until simple and connected.
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(std::size_t(n) * degree);
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < degree; ++k) stubs.push_back(v);
    for (int i = int(stubs.size()) - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below_int(i + 1)]);
    std::set<std::pair<int, int>> edges;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (a == b || edges.count(ordered(a, b))) {
        simple = false;
        break;
      }
      edges.insert(ordered(a, b));
    }
    if (!simple) continue;
    Topology topo = finish(n, std::move(edges));
    if (is_connected(topo)) return topo;
  }
  throw DataError("regular graph sampling failed; parameters likely infeasible");
}

Topology gen_erdos_renyi(int n, double p, Rng& rng) {
  if (p <= 0.0) p = std::min(1.0, 3.0 / std::max(1, n - 1));
  if (p > 1.0) throw DataError("edge probability outside (0,1]");
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(p)) edges.insert({i, j});
    Topology topo = finish(n, std::move(edges));
    if (is_connected(topo)) return topo;
  }
  throw DataError("erdos-renyi sampling produced no connected graph; raise edge_prob");
}

Topology gen_watts_strogatz(int n, int ring_neighbors, double rewire_prob, Rng& rng) {
  const int k = (ring_neighbors / 2) * 2;  // odd request rounds down
  if (k < 2 || k >= n) throw DataError("watts-strogatz needs 2 <= even ring degree < n");
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::set<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
      for (int d = 1; d <= k / 2; ++d) edges.insert(ordered(v, (v + d) % n));
    // Rewire the far endpoint of each ring edge with probability p.
    std::vector<std::pair<int, int>> ring(edges.begin(), edges.end());
    for (auto [i, j] : ring) {
      if (!rng.bernoulli(rewire_prob)) continue;
      int fresh = rng.below_int(n);
      int guard = 0;
      while ((fresh == i || edges.count(ordered(i, fresh))) && guard++ < 100)
        fresh = rng.below_int(n);
      if (fresh == i || edges.count(ordered(i, fresh))) continue;
      edges.erase(ordered(i, j));
      edges.insert(ordered(i, fresh));
    }
    Topology topo = finish(n, std::move(edges));
    if (is_connected(topo)) return topo;
  }
  throw DataError("watts-strogatz sampling produced no connected graph");
}

Topology gen_barabasi_albert(int n, int m, Rng& rng) {
  if (m < 1 || m >= n) throw DataError("barabasi-albert needs 1 <= attach_edges < n");
  std::set<std::pair<int, int>> edges;
  std::vector<int> repeated;  // node id repeated once per degree
  // Seed: star over the first m+1 nodes.
  for (int v = 1; v <= m; ++v) {
    edges.insert(ordered(0, v));
    repeated.push_back(0);
    repeated.push_back(v);
  }
  for (int v = m + 1; v < n; ++v) {
    std::set<int> targets;
    while (int(targets.size()) < m) {
      int t = repeated[rng.below_int(int(repeated.size()))];
      targets.insert(t);
    }
    for (int t : targets) {
      edges.insert(ordered(v, t));
      repeated.push_back(v);
      repeated.push_back(t);
    }
  }
  return finish(n, std::move(edges));
}

Topology gen_complete(int n) {
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.insert({i, j});
  return finish(n, std::move(edges));
}

}  // namespace

Topology generate_topology(GraphKind kind, int size, const GenParams& params, Rng& rng) {
  if (size < 1) throw DataError("graph size must be positive");
  switch (kind) {
    case GraphKind::Tree: return gen_tree(size, rng);
    case GraphKind::Cycle: return gen_cycle(size);
    case GraphKind::Grid: return gen_grid(size, params.grid_rows);
    case GraphKind::Regular: return gen_regular(size, params.degree, rng);
    case GraphKind::ErdosRenyi: return gen_erdos_renyi(size, params.edge_prob, rng);
    case GraphKind::WattsStrogatz:
      return gen_watts_strogatz(size, params.ring_neighbors, params.rewire_prob, rng);
    case GraphKind::BarabasiAlbert: return gen_barabasi_albert(size, params.attach_edges, rng);
    case GraphKind::Complete: return gen_complete(size);
  }
  throw DataError("unknown graph kind enum");
}

Graph topology_graph(const Topology& topo) {
  std::vector<std::tuple<int, int, double>> pairs;
  pairs.reserve(topo.edges.size());
  for (auto [i, j] : topo.edges) pairs.emplace_back(i, j, 0.0);
  return Graph::build_undirected(topo.n, pairs, std::vector<double>(topo.n, 0.0));
}

Graph sample_rates(const Topology& topo, std::pair<double, double> beta_range,
                   std::pair<double, double> gamma_range, Rng& rng) {
  std::vector<std::tuple<int, int, double>> pairs;
  pairs.reserve(topo.edges.size());
  for (auto [i, j] : topo.edges)
    pairs.emplace_back(i, j, rng.uniform(beta_range.first, beta_range.second));
  std::vector<double> gamma(topo.n);
  for (int v = 0; v < topo.n; ++v) gamma[v] = rng.uniform(gamma_range.first, gamma_range.second);
  return Graph::build_undirected(topo.n, pairs, std::move(gamma));
}

}  // namespace nedmp
