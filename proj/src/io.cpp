#include "nedmp/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nedmp/errors.hpp"

namespace nedmp {

using nlohmann::json;

namespace {

json marginals_to_json(const MarginalTrajectory& m) {
  auto grid = [](const Eigen::ArrayXXd& a) {
    json rows = json::array();
    for (int t = 0; t < a.rows(); ++t) {
      json row = json::array();
      for (int i = 0; i < a.cols(); ++i) row.push_back(a(t, i));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  return json{{"ps", grid(m.ps)}, {"pi", grid(m.pi)}, {"pr", grid(m.pr)}};
}

Eigen::ArrayXXd grid_from_json(const json& j, const std::string& field, int rows, int cols) {
  if (!j.is_array() || int(j.size()) != rows)
    throw DataError("labels." + field + ": expected " + std::to_string(rows) + " rows");
  Eigen::ArrayXXd a(rows, cols);
  for (int t = 0; t < rows; ++t) {
    const json& row = j[t];
    if (!row.is_array() || int(row.size()) != cols)
      throw DataError("labels." + field + ": row " + std::to_string(t) + " has wrong length");
    for (int i = 0; i < cols; ++i) a(t, i) = row[i].get<double>();
  }
  return a;
}

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw DataError(std::string("missing field: ") + field);
  return *it;
}

}  // namespace

std::string save_instance(const Instance& inst) {
  json j;
  j["n"] = inst.graph.node_count();
  json edges = json::array();
  for (const DirectedEdge& e : inst.graph.edges())
    edges.push_back(json::array({e.src, e.dst, e.beta}));
  j["edges"] = std::move(edges);
  j["gamma"] = inst.graph.gamma();
  j["seeds"] = inst.seeds;
  j["T"] = inst.horizon;
  if (inst.labels) j["labels"] = marginals_to_json(*inst.labels);
  return j.dump();
}

Instance load_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DataError(std::string("instance json parse error: ") + e.what());
  }
  try {
    const int n = require(j, "n").get<int>();
    std::vector<DirectedEdge> edges;
    for (const json& e : require(j, "edges")) {
      if (!e.is_array() || e.size() != 3) throw DataError("edges: each entry must be [src,dst,beta]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    std::vector<double> gamma = require(j, "gamma").get<std::vector<double>>();
    Graph g = Graph::build(n, std::move(edges), std::move(gamma));
    Instance inst = Instance::make(std::move(g), require(j, "seeds").get<std::vector<int>>(),
                                   require(j, "T").get<int>());
    if (j.contains("labels")) {
      const json& lab = j["labels"];
      MarginalTrajectory m;
      m.ps = grid_from_json(require(lab, "ps"), "ps", inst.horizon + 1, n);
      m.pi = grid_from_json(require(lab, "pi"), "pi", inst.horizon + 1, n);
      m.pr = grid_from_json(require(lab, "pr"), "pr", inst.horizon + 1, n);
      inst.labels = std::move(m);
    }
    return inst;
  } catch (const json::exception& e) {
    throw DataError(std::string("instance json: ") + e.what());
  }
}

void save_instance_file(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, save_instance(inst));
}

Instance load_instance_file(const std::filesystem::path& path) {
  return load_instance(read_text_file(path));
}

Topology load_edge_list(std::istream& is) {
  std::vector<std::pair<long, long>> raw;
  std::map<long, int> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long a, b;
    if (!(ls >> a)) continue;  // blank or comment-only line
    if (!(ls >> b)) throw DataError("edge list line " + std::to_string(lineno) + ": missing endpoint");
    raw.emplace_back(a, b);
    ids[a];
    ids[b];
  }
  int next = 0;
  for (auto& [key, idx] : ids) idx = next++;
  Topology topo;
  topo.n = next;
  std::set<std::pair<int, int>> edges;
  for (auto [a, b] : raw) {
    int i = ids[a], j = ids[b];
    if (i == j) continue;  // drop self-loops from raw network files
    edges.insert({std::min(i, j), std::max(i, j)});
  }
  topo.edges.assign(edges.begin(), edges.end());
  return topo;
}

Topology load_edge_list_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open edge list: " + path.string());
  return load_edge_list(f);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write file: " + path.string());
  f << text;
}

}  // namespace nedmp
