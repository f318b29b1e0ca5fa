#include "protnn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "protnn/error.hpp"

namespace protnn {

ProteinGraph::ProteinGraph(std::string structure_id,
                           std::vector<std::string> labels,
                           std::vector<std::pair<int, int>> edges)
    : structure_id_(std::move(structure_id)),
      labels_(std::move(labels)),
      edges_(std::move(edges)) {
  int n = node_count();
  for (auto& [u, v] : edges_) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n)
      fail(errc::bad_format, "graph edge out of range or self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adjacency_.assign(n, {});
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool ProteinGraph::has_edge(int u, int v) const {
  if (u == v) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

ProteinGraph build_graph(const StructureRecord& record,
                         const GraphBuildParams& params) {
  if (record.residues.empty())
    fail(errc::empty_structure,
         record.structure_id + ": cannot build graph from empty structure");
  if (!(params.delta > 0) || !std::isfinite(params.delta))
    fail(errc::bad_format, "delta must be positive and finite");

  int n = static_cast<int>(record.residues.size());
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = record.residues[i].label;

  const double cutoff_sq = params.delta * params.delta;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    const Vec3& a = record.residues[i].ca_position;
    for (int j = i + 1; j < n; ++j) {
      const Vec3& b = record.residues[j].ca_position;
      double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
      if (dx * dx + dy * dy + dz * dz <= cutoff_sq) edges.emplace_back(i, j);
    }
  }
  return ProteinGraph(record.structure_id, std::move(labels),
                      std::move(edges));
}

GraphStats graph_stats(const ProteinGraph& g) {
  GraphStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  std::vector<char> seen(s.nodes, 0);
  std::vector<int> stack;
  for (int start = 0; start < s.nodes; ++start) {
    if (seen[start]) continue;
    ++s.components;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u))
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
  }
  return s;
}

void dump_graph(const ProteinGraph& g, std::ostream& out) {
  out << "#nodes " << g.node_count() << "\n";
  for (int i = 0; i < g.node_count(); ++i)
    out << i << " " << g.node_labels()[i] << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

ProteinGraph read_graph_dump(std::istream& in) {
  std::string tag;
  int n = 0;
  if (!(in >> tag) || tag != "#nodes" || !(in >> n) || n < 0)
    fail(errc::bad_format, "graph dump: bad #nodes line");
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    int idx;
    if (!(in >> idx >> labels[i]) || idx != i)
      fail(errc::bad_format, "graph dump: bad node line");
  }
  std::vector<std::pair<int, int>> edges;
  int u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  return ProteinGraph("", std::move(labels), std::move(edges));
}

}  // namespace protnn
